#include <doctest.h>

#include <random>

#include "tbi/matrix.hpp"

using namespace tbi;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound);
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("matrix: construction and arithmetic basics") {
    IntegerMatrix a{{1, 2}, {3, 4}};
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 2);
    CHECK(a(1, 0) == 3);

    IntegerMatrix i2 = IntegerMatrix::identity(2);
    CHECK(a * i2 == a);
    CHECK(i2 * a == a);
    CHECK((a - a).is_zero());
    CHECK(a + a == mpz_class(2) * a);
    CHECK(a.transpose().transpose() == a);

    IntegerMatrix b{{0, 1}, {1, 0}};
    CHECK(a * b == IntegerMatrix{{2, 1}, {4, 3}});
    CHECK(mat_pow(b, 2).is_identity());
    CHECK(mat_pow(a, 0).is_identity());
}

TEST_CASE("matrix: empty shapes are legal") {
    IntegerMatrix e00;             // 0 x 0
    IntegerMatrix e03(0, 3);       // 0 x 3
    IntegerMatrix e30(3, 0);       // 3 x 0
    CHECK(e00.is_zero());
    CHECK(e00.is_identity());      // vacuously the identity of Z^0
    CHECK((e30 * e03).is_zero()); // 3 x 3 zero matrix
    CHECK((e30 * e03).rows() == 3);
    CHECK((e03 * e30) == e00);
    CHECK(determinant(e00) == 1);  // empty product
    CHECK(kron_tensor(e03, IntegerMatrix::identity(2)).rows() == 0);
}

TEST_CASE("matrix: determinant") {
    CHECK(determinant(IntegerMatrix{{1, 2}, {3, 4}}) == -2);
    CHECK(determinant(IntegerMatrix{{2, 4}, {6, 8}}) == -8);
    CHECK(determinant(IntegerMatrix{{1, 1}, {2, 2}}) == 0);
    CHECK(determinant(IntegerMatrix::identity(5)) == 1);

    // Multiplicativity on random squares.
    std::mt19937_64 rng(99);
    for (int t = 0; t < 30; ++t) {
        auto a = random_matrix(rng, 5, 5, 6);
        auto b = random_matrix(rng, 5, 5, 6);
        CHECK(determinant(a * b) == determinant(a) * determinant(b));
    }
}

TEST_CASE("matrix: kronecker product layout and multiplicativity") {
    IntegerMatrix a{{1, 2}, {3, 4}};
    IntegerMatrix b{{0, 5}, {6, 7}};
    auto k = kron_tensor(a, b);
    REQUIRE(k.rows() == 4);
    // Left factor is the major index: entry ((i1,i2),(j1,j2)) = a(i1,j1)*b(i2,j2).
    CHECK(k(0, 1) == 5);   // a(0,0)*b(0,1)
    CHECK(k(2, 0) == 0);   // a(1,0)*b(0,0)
    CHECK(k(3, 3) == 28);  // a(1,1)*b(1,1)

    std::mt19937_64 rng(7);
    auto c = random_matrix(rng, 2, 3, 5);
    auto d = random_matrix(rng, 3, 2, 5);
    // (a kron c)(b kron d) == (ab) kron (cd)
    CHECK(kron_tensor(a, c) * kron_tensor(b, d) == kron_tensor(a * b, c * d));
}

TEST_CASE("matrix: exterior power") {
    IntegerMatrix a{{1, 2}, {3, 4}};
    auto e2 = exterior_power_matrix(a, 2);
    REQUIRE(e2.rows() == 1);
    CHECK(e2(0, 0) == -2);  // = det a

    CHECK(exterior_power_matrix(a, 0).is_identity());
    CHECK(exterior_power_matrix(a, 1) == a);

    // Top power of the identity; binomial dimensions.
    auto e = exterior_power_matrix(IntegerMatrix::identity(5), 3);
    CHECK(e.rows() == binomial(5, 3));
    CHECK(e.is_identity());

    // Functoriality (Cauchy-Binet) on random squares.
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 15; ++t) {
        auto x = random_matrix(rng, 6, 6, 4);
        auto y = random_matrix(rng, 6, 6, 4);
        for (std::size_t r = 1; r <= 3; ++r) {
            CHECK(exterior_power_matrix(x * y, r) ==
                  exterior_power_matrix(x, r) * exterior_power_matrix(y, r));
        }
    }
}

TEST_CASE("matrix: parallel kernels match serial references") {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 10; ++t) {
        auto a = random_matrix(rng, 17, 23, 9);
        auto b = random_matrix(rng, 23, 11, 9);
        CHECK(a * b == serial::multiply(a, b));
        CHECK(kron_tensor(a, b) == serial::kron_tensor(a, b));
    }
    for (int t = 0; t < 5; ++t) {
        auto a = random_matrix(rng, 7, 7, 5);
        CHECK(exterior_power_matrix(a, 3) == serial::exterior_power_matrix(a, 3));
    }
}

TEST_CASE("matrix: rank over F_q") {
    IntegerMatrix a{{2, 4}, {6, 8}};
    CHECK(rank_mod_q(a, 2) == 0);
    CHECK(rank_mod_q(a, 3) == 2);
    CHECK(rank_mod_q(a, 5) == 2);
    CHECK(rank_mod_q(IntegerMatrix{{1, 1}, {2, 2}}, 7) == 1);
    CHECK(rank_mod_q(IntegerMatrix(0, 4), 3) == 0);
    CHECK_THROWS_AS((void)rank_mod_q(a, 6), input_error);
    CHECK_THROWS_AS((void)rank_mod_q(a, 1), input_error);
}

TEST_CASE("matrix: subset enumeration is lexicographic") {
    auto s = lex_subsets(4, 2);
    REQUIRE(s.size() == 6);
    CHECK(s[0] == std::vector<std::size_t>{0, 1});
    CHECK(s[1] == std::vector<std::size_t>{0, 2});
    CHECK(s[5] == std::vector<std::size_t>{2, 3});
    CHECK(lex_subsets(3, 0).size() == 1);
    CHECK(binomial(24, 12) == 2704156ULL);
}

TEST_CASE("matrix: exterior traces") {
    IntegerMatrix a({{0, -1}, {1, -1}});
    auto e = exterior_traces(a);
    REQUIRE(e.size() == 3);
    CHECK(e[0] == 1);
    CHECK(e[1] == trace(a));
    CHECK(e[2] == determinant(a));

    CHECK(exterior_traces(IntegerMatrix(0, 0)) == std::vector<mpz_class>{1});

    // Agrees with the minor-matrix route.
    std::mt19937_64 rng(20240816);
    for (int it = 0; it < 24; ++it) {
        std::size_t n = 1 + it % 6;
        IntegerMatrix m = random_matrix(rng, n, n, 4);
        auto ev = exterior_traces(m);
        REQUIRE(ev.size() == n + 1);
        for (std::size_t r = 0; r <= n; ++r)
            CHECK(ev[r] == trace(exterior_power_matrix(m, r)));
    }
}
