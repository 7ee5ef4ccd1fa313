#pragma once
#include <string>
#include <vector>

#include "tbi/matrix.hpp"

namespace tbi {

// Input caps, overridable through the environment.
unsigned long max_rank();   // TBI_MAX_RANK, default 24
unsigned long max_prime();  // TBI_MAX_PRIME, default 13

// Z^n together with an action of Z/p through a finite-order unimodular
// integer matrix (p an odd prime).  Lattices assembled by direct_sum
// remember their summands; the cohomology machinery exploits that structure
// (an exterior power of a direct sum splits into tensor blocks of exterior
// powers of the summands) and falls back to the plain matrix otherwise.
struct ZpLattice {
    unsigned long p = 3;
    IntegerMatrix action;
    std::vector<ZpLattice> parts;  // empty for leaf lattices
    // Kronecker factorization, filled for exterior-power blocks; invariant
    // computations exploit it so huge block matrices never get eliminated.
    std::vector<ZpLattice> tensor_factors;
    std::string memo_key;          // structural cache key for derived lattices

    std::size_t rank() const { return action.rows(); }
    const std::string& key() const;
};

ZpLattice lattice_trivial(unsigned long p, std::size_t c);
ZpLattice lattice_cyclotomic(unsigned long p);
ZpLattice lattice_regular(unsigned long p);
// Extension of a rank-(p-1) cyclotomic-type lattice B by Z glued along b0:
// the action is [[B, b0], [0, 1]].  b0 must not lie in the image of (I - B);
// such a column would split the extension as B + Z.
ZpLattice lattice_ideal_extension(unsigned long p, const ZpLattice& b,
                                  const std::vector<mpz_class>& b0);
ZpLattice lattice_from_matrix(unsigned long p, const IntegerMatrix& m);
ZpLattice direct_sum(const std::vector<ZpLattice>& parts);

ZpLattice dual_lattice(const ZpLattice& l);
ZpLattice tensor_lattice(const ZpLattice& a, const ZpLattice& b);
ZpLattice exterior_power_lattice(const ZpLattice& l, std::size_t r);

struct TypeSignature {
    unsigned long a = 0, b = 0, c = 0;
    bool operator==(const TypeSignature&) const = default;
    std::string to_string() const;
};

// Multiplicities (a, b, c) of the three indecomposable families: rank-(p-1)
// cyclotomic pieces, rank-p extension pieces, and trivial Z's; the total
// rank is a(p-1) + bp + c.
TypeSignature detect_type(const ZpLattice& l);
ZpLattice canonical_lattice(unsigned long p, const TypeSignature& t);

struct SubgroupStructure {
    mpz_class conjugacy_classes;         // p^a classes of maximal finite subgroups
    unsigned long normalizer_free_rank;  // normalizer = Z^{b+c} x Z/p
    unsigned long weyl_free_rank;        // b+c
};
SubgroupStructure subgroup_structure(const ZpLattice& l);

// Leaves of the direct-sum tree, left to right.
std::vector<const ZpLattice*> leaf_summands(const ZpLattice& l);

// Tensor blocks of the r-th exterior power across the direct-sum structure,
// in lexicographic order of the exponent tuples.  Each block carries its
// factors and a structural memo key, so huge matrices never get serialized.
// The key is invariant under permuting the factors: a reorder only
// conjugates the block, and every cached invariant agrees.
std::vector<ZpLattice> exterior_blocks(const ZpLattice& l, std::size_t r);

// The factor lists of the same blocks without materializing the Kronecker
// products; factor i is Lambda^{r_i} of leaf i (small), and the block itself
// is their tensor product.
std::vector<std::vector<ZpLattice>> exterior_block_factors(const ZpLattice& l, std::size_t r);

// Canonical sorted key of a tensor block with the given factors.
std::string block_key(unsigned long p, const std::vector<ZpLattice>& factors);

// Internal: wrap a matrix that is known to be a valid action (skips the
// order/determinant validation; used for derived lattices whose validity is
// functorial).
ZpLattice lattice_unchecked(unsigned long p, IntegerMatrix m, std::string memo_key);

}  // namespace tbi
