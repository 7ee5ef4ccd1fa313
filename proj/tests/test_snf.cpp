#include <doctest.h>

#include <random>

#include "tbi/snf.hpp"

using namespace tbi;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

bool is_unimodular(const IntegerMatrix& m) {
    mpz_class d = determinant(m);
    return d == 1 || d == -1;
}

void check_smith(const IntegerMatrix& a) {
    auto s = snf(a);
    CHECK(s.u.rows() == a.rows());
    CHECK(s.v.rows() == a.cols());
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    CHECK(s.u * a * s.v == s.d);
    // Diagonal, nonnegative, divisibility chain.
    std::size_t k = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) CHECK(s.d(i, j) == 0);
    for (std::size_t i = 0; i < k; ++i) CHECK(s.d(i, i) >= 0);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (s.d(i + 1, i + 1) != 0) {
            CHECK(s.d(i, i) != 0);
            CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
        }
    }
    CHECK(snf_diagonal(a) == s.d);
}

}  // namespace

TEST_CASE("snf: worked 2x2 example") {
    IntegerMatrix a{{2, 4}, {6, 8}};
    auto s = snf(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(s.d(0, 0) == 2);  // gcd of the entries
    CHECK(s.d(1, 1) == 4);
    CHECK(s.d(0, 0) * s.d(1, 1) == 8);  // |det a|
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
}

TEST_CASE("snf: shapes with zero rows or columns") {
    check_smith(IntegerMatrix(0, 0));
    check_smith(IntegerMatrix(0, 3));
    check_smith(IntegerMatrix(3, 0));
    check_smith(IntegerMatrix(2, 2));  // zero matrix
    CHECK(rank(IntegerMatrix(0, 5)) == 0);
    CHECK(elementary_divisors(IntegerMatrix(4, 0)).empty());
}

TEST_CASE("snf: randomized decomposition properties") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<std::size_t> dim(0, 9);
    for (int t = 0; t < 120; ++t) {
        check_smith(random_matrix(rng, dim(rng), dim(rng), 50));
    }
    // A couple of larger ones; transform entries blow up quickly with size,
    // and the unimodularity determinants dominate the cost.
    check_smith(random_matrix(rng, 24, 17, 8));
    check_smith(random_matrix(rng, 30, 30, 5));
}

TEST_CASE("cokernel: invariant factors") {
    CHECK(cokernel(IntegerMatrix{{2, 4}, {6, 8}}) ==
          AbelianGroupPresentation{0, {2, 4}});
    // Z^2 / im(diag(1, 6)) = Z/6
    CHECK(cokernel(IntegerMatrix{{1, 0}, {0, 6}}) ==
          AbelianGroupPresentation{0, {6}});
    // Presentation with a free part.
    CHECK(cokernel(IntegerMatrix{{2, 0}, {0, 0}}) ==
          AbelianGroupPresentation{1, {2}});
    CHECK(cokernel(IntegerMatrix(2, 0)) == free_abelian(2));
    CHECK(cokernel(IntegerMatrix::identity(3)).is_trivial());
}

TEST_CASE("kernel_basis: saturated bases") {
    IntegerMatrix a{{2, 4}};
    auto k = kernel_basis(a);
    REQUIRE(k.cols() == 1);
    CHECK((a * k).is_zero());
    // (-2, 1) up to sign; in particular primitive (saturated), not (2, -1)*2.
    CHECK(abs(k(0, 0)) == 2);
    CHECK(abs(k(1, 0)) == 1);

    std::mt19937_64 rng(5150);
    for (int t = 0; t < 60; ++t) {
        auto m = random_matrix(rng, 4, 7, 9);
        auto kb = kernel_basis(m);
        CHECK((m * kb).is_zero());
        // Saturation: the basis matrix has all elementary divisors 1, so the
        // kernel is a direct summand of the ambient Z^7.
        for (const auto& d : elementary_divisors(kb)) CHECK(d == 1);
        // Completeness: rank-nullity over Z.
        CHECK(kb.cols() == m.cols() - rank(m));
    }
}

TEST_CASE("subquotient: cyclic quotient example") {
    IntegerMatrix zero(1, 1);
    CHECK(subquotient(zero, IntegerMatrix{{3}}) == AbelianGroupPresentation{0, {3}});
    CHECK(subquotient(zero, IntegerMatrix{{5}}) == AbelianGroupPresentation{0, {5}});
    CHECK_THROWS_AS((void)subquotient(IntegerMatrix{{1}}, IntegerMatrix{{1}}), input_error);
}

TEST_CASE("subquotient: randomized pairs agree with the divisor route") {
    // Build (a, b) with a*b = 0 by taking a = rows of U at zero positions of
    // the Smith form of a random m, b = m.
    std::mt19937_64 rng(777);
    int built = 0;
    while (built < 60) {
        auto m = random_matrix(rng, 6, 5, 7);
        auto s = snf(m);
        std::vector<std::size_t> zr;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            bool nz = i < std::min(m.rows(), m.cols()) && s.d(i, i) != 0;
            if (!nz) zr.push_back(i);
        }
        if (zr.empty()) continue;
        std::vector<std::size_t> allc(m.rows());
        for (std::size_t j = 0; j < m.rows(); ++j) allc[j] = j;
        auto a = s.u.submatrix(zr, allc);
        REQUIRE((a * m).is_zero());
        auto q = subquotient(a, m);
        // Independent route: free rank by rank-nullity, torsion from the
        // elementary divisors of b (valid because ker(a) is saturated).
        AbelianGroupPresentation expect;
        expect.free_rank =
            static_cast<unsigned long>((m.rows() - rank(a)) - rank(m));
        for (const auto& d : elementary_divisors(m))
            if (d > 1) expect.torsion.push_back(d);
        CHECK(q == expect);
        ++built;
    }
}

TEST_CASE("solve_integer and inverse_unimodular") {
    IntegerMatrix a{{2, 0}, {0, 3}};
    auto x = solve_integer(a, IntegerMatrix{{4}, {9}});
    REQUIRE(x.has_value());
    CHECK(a * *x == IntegerMatrix{{4}, {9}});
    CHECK_FALSE(solve_integer(a, IntegerMatrix{{1}, {1}}).has_value());

    IntegerMatrix u{{1, 2}, {0, 1}};
    auto inv = inverse_unimodular(u);
    CHECK((u * inv).is_identity());
    CHECK((inv * u).is_identity());
    CHECK_THROWS_AS((void)inverse_unimodular(IntegerMatrix{{2, 0}, {0, 1}}), input_error);

    std::mt19937_64 rng(31415);
    for (int t = 0; t < 40; ++t) {
        auto m = random_matrix(rng, 5, 3, 8);
        auto rhs = random_matrix(rng, 3, 2, 8);
        auto b = m * rhs;
        auto sol = solve_integer(m, b);
        REQUIRE(sol.has_value());
        CHECK(m * *sol == b);
    }
}

TEST_CASE("abelian presentations: canonical direct sums") {
    AbelianGroupPresentation a{1, {2}};
    AbelianGroupPresentation b{0, {4}};
    auto s = direct_sum(a, b);
    CHECK(s == AbelianGroupPresentation{1, {2, 4}});
    // Z/2 + Z/3 recombines to Z/6.
    CHECK(direct_sum({0, {2}}, {0, {3}}) == AbelianGroupPresentation{0, {6}});
    CHECK(direct_sum({0, {2}}, {0, {2}}) == AbelianGroupPresentation{0, {2, 2}});
    CHECK(direct_sum({0, {6}}, {0, {4}}) == AbelianGroupPresentation{0, {2, 12}});
    CHECK(AbelianGroupPresentation{0, {3, 3}}.is_elementary(3));
    CHECK_FALSE(AbelianGroupPresentation{0, {9}}.is_elementary(3));
    CHECK_FALSE(AbelianGroupPresentation{1, {3}}.is_elementary(3));
    CHECK(AbelianGroupPresentation{0, {2, 4}}.torsion_order() == 8);
    CHECK(AbelianGroupPresentation{2, {}}.to_string() == "Z^2");
    CHECK(AbelianGroupPresentation{1, {2, 4}}.to_string() == "Z + Z/2 + Z/4");
    CHECK(AbelianGroupPresentation{}.to_string() == "0");
}
