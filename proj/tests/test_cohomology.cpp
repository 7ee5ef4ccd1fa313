#include <doctest.h>

#include <random>

#include "tbi/cohomology.hpp"
#include "tbi/snf.hpp"

using namespace tbi;

namespace {

AbelianGroupPresentation elem(unsigned long p, unsigned long k) {
    AbelianGroupPresentation g;
    g.torsion.assign(k, mpz_class(p));
    return g;
}

// Conjugate the action by a random unimodular matrix: an isomorphic lattice
// presented by an unstructured matrix.
ZpLattice conjugated(const ZpLattice& l, std::mt19937_64& rng) {
    const std::size_t n = l.rank();
    std::uniform_int_distribution<long> shear(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, n > 0 ? n - 1 : 0);
    IntegerMatrix u = IntegerMatrix::identity(n);
    for (int ops = 0; ops < 8 && n > 1; ++ops) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        IntegerMatrix e = IntegerMatrix::identity(n);
        e(i, j) = shear(rng);
        u = u * e;
    }
    IntegerMatrix a = u * l.action * inverse_unimodular(u);
    return lattice_from_matrix(l.p, a);
}

}  // namespace

TEST_CASE("norm matrix") {
    IntegerMatrix ones(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1;
    CHECK(norm_matrix(lattice_regular(3)) == ones);
    CHECK(norm_matrix(lattice_cyclotomic(3)).is_zero());
    CHECK(norm_matrix(lattice_trivial(3, 2)) == 3 * IntegerMatrix::identity(2));
}

TEST_CASE("tate cohomology of the indecomposables") {
    ZpLattice triv = lattice_trivial(3, 1);
    ZpLattice cyc = lattice_cyclotomic(3);
    ZpLattice reg = lattice_regular(3);
    ZpLattice ext = lattice_ideal_extension(3, lattice_cyclotomic(3), {1, 0});

    CHECK(tate_cohomology(triv, 0) == elem(3, 1));
    CHECK(tate_cohomology(triv, 1) == elem(3, 0));
    CHECK(tate_cohomology(cyc, 0).is_trivial());
    CHECK(tate_cohomology(cyc, 1) == elem(3, 1));
    CHECK(tate_cohomology(reg, 0).is_trivial());
    CHECK(tate_cohomology(reg, 1).is_trivial());
    CHECK(tate_cohomology(ext, 0).is_trivial());
    CHECK(tate_cohomology(ext, 1).is_trivial());

    // 2-periodicity across negative degrees.
    for (long i = -3; i <= 3; ++i) {
        CHECK(tate_cohomology(triv, i) == tate_cohomology(triv, i + 2));
        CHECK(tate_cohomology(cyc, i) == tate_cohomology(cyc, i + 2));
    }
}

TEST_CASE("tate cohomology agrees with the elimination route") {
    std::mt19937_64 rng(7);
    for (unsigned long p : {3ul, 5ul}) {
        for (unsigned long a = 0; a <= 1; ++a)
            for (unsigned long b = 0; b <= 1; ++b)
                for (unsigned long c = 0; c <= 1; ++c) {
                    ZpLattice l = canonical_lattice(p, {a, b, c});
                    for (long i : {-1L, 0L}) {
                        AbelianGroupPresentation t = tate_cohomology(l, i);
                        CHECK(t == tate_cohomology_elimination(l, i));
                        CHECK((t.free_rank == 0 && t.is_elementary(p)));
                    }
                    if (l.rank() > 1) {
                        ZpLattice m = conjugated(l, rng);
                        CHECK(tate_cohomology(m, 0) == tate_cohomology(l, 0));
                        CHECK(tate_cohomology(m, 1) == tate_cohomology(l, 1));
                        CHECK(tate_cohomology_elimination(m, 1) == tate_cohomology(l, 1));
                    }
                }
    }
}

TEST_CASE("group cohomology and homology of Z") {
    ZpLattice triv = lattice_trivial(3, 1);
    CHECK(group_cohomology(triv, 0) == free_abelian(1));
    CHECK(group_cohomology(triv, 1).is_trivial());
    CHECK(group_cohomology(triv, 2) == elem(3, 1));
    CHECK(group_cohomology(triv, 3).is_trivial());
    CHECK(group_cohomology(triv, 4) == elem(3, 1));

    CHECK(group_homology(triv, 0) == free_abelian(1));
    CHECK(group_homology(triv, 1) == elem(3, 1));
    CHECK(group_homology(triv, 2).is_trivial());
    CHECK(group_homology(triv, 3) == elem(3, 1));
}

TEST_CASE("group homology matches the coinvariant presentation") {
    ZpLattice cyc = lattice_cyclotomic(3);
    AbelianGroupPresentation h0 = group_homology(cyc, 0);
    CHECK(h0 == elem(3, 1));  // Z^2 / (zeta - 1)
    CHECK(group_homology(cyc, 1).is_trivial());
    CHECK(group_homology(cyc, 2) == elem(3, 1));

    std::mt19937_64 rng(11);
    for (int it = 0; it < 6; ++it) {
        ZpLattice l = conjugated(canonical_lattice(3, {1, 1, 1}), rng);
        IntegerMatrix am1 = l.action - IntegerMatrix::identity(l.rank());
        CHECK(group_homology(l, 0) == cokernel(am1));
        CHECK(group_cohomology(l, 0) ==
              free_abelian(static_cast<unsigned long>(l.rank() - rank(am1))));
    }
}

TEST_CASE("fixed ranks") {
    CHECK(fixed_rank(lattice_trivial(3, 2)) == 2);
    CHECK(fixed_rank(lattice_cyclotomic(5)) == 0);
    CHECK(fixed_rank(lattice_regular(5)) == 1);
    CHECK(fixed_rank(canonical_lattice(3, {2, 1, 2})) == 3);

    // Mod-2 kernels are fixed ranks in disguise (p odd, Maschke).
    std::mt19937_64 rng(23);
    for (unsigned long p : {3ul, 5ul})
        for (unsigned long a = 0; a <= 1; ++a)
            for (unsigned long b = 0; b <= 1; ++b) {
                ZpLattice l = canonical_lattice(p, {a, b, 1});
                CHECK(kernel_rank_mod2(l) == fixed_rank(l));
                ZpLattice m = conjugated(l, rng);
                CHECK(kernel_rank_mod2(m) == fixed_rank(l));
            }
}

TEST_CASE("exterior fixed ranks via characters") {
    CHECK(exterior_fixed_ranks(lattice_trivial(3, 2)) ==
          std::vector<unsigned long>{1, 2, 1});
    CHECK(exterior_fixed_ranks(lattice_cyclotomic(3)) ==
          std::vector<unsigned long>{1, 0, 1});
    CHECK(exterior_fixed_ranks(lattice_regular(3)) ==
          std::vector<unsigned long>{1, 1, 1, 1});

    // Independent of the elimination route and of the block assembly.
    ZpLattice l = canonical_lattice(3, {1, 1, 1});
    const auto ranks = exterior_fixed_ranks(l);
    REQUIRE(ranks.size() == l.rank() + 1);
    for (std::size_t r = 0; r <= l.rank(); ++r) {
        CHECK(ranks[r] == fixed_rank(exterior_power_lattice(l, r)));
        CHECK(ranks[r] == fixed_rank_exterior(l, r));
        CHECK(ranks[r] == kernel_rank_mod2_exterior(l, r));
        CHECK(ranks[r] == kernel_rank_mod2(exterior_power_lattice(l, r)));
    }
}

TEST_CASE("exterior types match the materialized exterior powers") {
    for (const TypeSignature sig : {TypeSignature{1, 1, 1}, TypeSignature{2, 0, 1}}) {
        ZpLattice l = canonical_lattice(3, sig);
        const auto types = exterior_types(l);
        REQUIRE(types.size() == l.rank() + 1);
        for (std::size_t r = 0; r <= l.rank(); ++r)
            CHECK(types[r] == detect_type(exterior_power_lattice(l, r)));
    }
}

TEST_CASE("exterior cohomology assembles blockwise") {
    ZpLattice l = canonical_lattice(3, {1, 1, 1});
    for (std::size_t r = 0; r <= l.rank(); ++r) {
        ZpLattice whole = exterior_power_lattice(l, r);
        for (unsigned long i = 0; i <= 3; ++i) {
            CHECK(cohomology_exterior(l, r, i) == group_cohomology(whole, i));
            CHECK(homology_exterior(l, r, i) == group_homology(whole, i));
        }
        for (long i : {-2L, -1L, 0L, 1L})
            CHECK(tate_exterior(l, r, i) == tate_cohomology_elimination(whole, i));
    }
    CHECK(tate_exterior(l, l.rank() + 1, 0).is_trivial());
    CHECK(fixed_rank_exterior(l, l.rank() + 2) == 0);
}

TEST_CASE("classified route agrees with elimination beyond the threshold") {
    // A single 150-dim tensor block: large enough for the classified route,
    // small enough to eliminate directly.
    std::vector<ZpLattice> factors = {
        lattice_regular(5), lattice_regular(5),
        exterior_power_lattice(lattice_cyclotomic(5), 2)};
    REQUIRE(factors[0].rank() * factors[1].rank() * factors[2].rank() == 150);

    IntegerMatrix m = kron_tensor(kron_tensor(factors[0].action, factors[1].action),
                                  factors[2].action);
    ZpLattice plain = lattice_unchecked(5, m, "");

    TypeSignature fast = block_type(5, factors);
    CHECK(fast == detect_type(plain));

    // The classified Tate groups ((Z/p)^c even, (Z/p)^a odd) equal honest
    // elimination on the materialized block.
    CHECK(tate_cohomology_elimination(plain, 0) == elem(5, fast.c));
    CHECK(tate_cohomology_elimination(plain, 1) == elem(5, fast.a));
}

TEST_CASE("sphere complex homology") {
    ZpLattice triv = lattice_trivial(3, 1);
    auto h = sphere_homology(triv, 3);
    REQUIRE(h.size() == 4);
    CHECK(h[0] == free_abelian(1));
    CHECK(h[1] == elem(3, 1));
    CHECK(h[2].is_trivial());
    CHECK(h[3] == free_abelian(1));

    auto h5 = sphere_homology(triv, 5);
    CHECK(h5[1] == elem(3, 1));
    CHECK(h5[2].is_trivial());
    CHECK(h5[3] == elem(3, 1));
    CHECK(h5[4].is_trivial());
    CHECK(h5[5] == free_abelian(1));

    auto hr = sphere_homology(lattice_regular(3), 3);
    CHECK(hr[0] == free_abelian(1));
    CHECK(hr[1].is_trivial());
    CHECK(hr[2].is_trivial());
    CHECK(hr[3] == free_abelian(1));

    auto hc = sphere_homology(lattice_cyclotomic(3), 3);
    CHECK(hc[0] == elem(3, 1));
    CHECK(hc[1].is_trivial());
    CHECK(hc[2] == elem(3, 1));
    CHECK(hc[3].is_trivial());

    auto h1 = sphere_homology(triv, 1);
    CHECK(h1[0] == free_abelian(1));
    CHECK(h1[1] == free_abelian(1));

    CHECK_THROWS_AS(sphere_homology(triv, 2), input_error);
    CHECK_THROWS_AS(sphere_homology_mod2(triv, 0), input_error);
}

TEST_CASE("sphere complex homology mod 2") {
    CHECK(sphere_homology_mod2(lattice_trivial(3, 1), 3) ==
          std::vector<unsigned long>{1, 0, 0, 1});
    CHECK(sphere_homology_mod2(lattice_cyclotomic(3), 3) ==
          std::vector<unsigned long>{0, 0, 0, 0});
    CHECK(sphere_homology_mod2(lattice_regular(3), 3) ==
          std::vector<unsigned long>{1, 0, 0, 1});
    CHECK(sphere_homology_mod2(canonical_lattice(3, {1, 1, 1}), 5) ==
          std::vector<unsigned long>{2, 0, 0, 0, 0, 2});
}

TEST_CASE("sphere homology of blocks") {
    // Big block: classified; the part-less materialized copy eliminates.
    std::vector<ZpLattice> factors = {
        lattice_regular(5), lattice_regular(5),
        exterior_power_lattice(lattice_cyclotomic(5), 2)};
    IntegerMatrix m = kron_tensor(kron_tensor(factors[0].action, factors[1].action),
                                  factors[2].action);
    ZpLattice plain = lattice_unchecked(5, m, "");

    auto fast = block_sphere_homology(5, factors, 3);
    auto slow = sphere_homology(plain, 3);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);

    auto fast2 = block_sphere_homology_mod2(5, factors, 3);
    auto slow2 = sphere_homology_mod2(plain, 3);
    CHECK(fast2 == slow2);

    // Small blocks fall through to elimination inside the block API too.
    std::vector<ZpLattice> small = {lattice_cyclotomic(3), lattice_trivial(3, 1)};
    auto bh = block_sphere_homology(3, small, 3);
    auto dh = sphere_homology(lattice_unchecked(3, kron_tensor(small[0].action, small[1].action), ""), 3);
    for (std::size_t i = 0; i < bh.size(); ++i) CHECK(bh[i] == dh[i]);
}
