#pragma once
#include <vector>

#include "tbi/abelian.hpp"
#include "tbi/lattice.hpp"

namespace tbi {

// N = 1 + rho + ... + rho^{p-1}.
IntegerMatrix norm_matrix(const ZpLattice& l);

// Rank of the fixed sublattice M^G.
unsigned long fixed_rank(const ZpLattice& l);

// Fixed ranks of every exterior power at once: entry j is the fixed rank of
// Lambda^j M.  Averages the exterior trace vector over the group, so it
// shares nothing with the elimination route and serves as a cross-check.
std::vector<unsigned long> exterior_fixed_ranks(const ZpLattice& l);

// dim_F2 ker((rho - 1) mod 2), by direct elimination over F_2.  Since p is
// odd, mod-2 coefficients are semisimple and this equals fixed_rank; the
// test suite checks that equality rather than assuming it here.
unsigned long kernel_rank_mod2(const ZpLattice& l);

// Tate cohomology of Z/p with coefficients in the lattice: 2-periodic in i,
// always finite elementary abelian of exponent p.
AbelianGroupPresentation tate_cohomology(const ZpLattice& l, long i);

// Reference route, straight from the definition as a subquotient of the
// norm and augmentation maps.  tate_cohomology routes large tensor blocks
// through the lattice classification instead; the suites compare the two.
AbelianGroupPresentation tate_cohomology_elimination(const ZpLattice& l, long i);

// H^i(Z/p; M) and H_i(Z/p; M).
AbelianGroupPresentation group_cohomology(const ZpLattice& l, unsigned long i);
AbelianGroupPresentation group_homology(const ZpLattice& l, unsigned long i);

// Type of one tensor block given by its factor list; the block matrix is
// only materialized below the elimination threshold.
TypeSignature block_type(unsigned long p, const std::vector<ZpLattice>& factors);

// Types of all exterior powers: entry r is the type of Lambda^r M, assembled
// across the tensor blocks of the direct-sum structure.  Memoized.
std::vector<TypeSignature> exterior_types(const ZpLattice& l);

// Invariants of Lambda^r M derived from the block types.
AbelianGroupPresentation tate_exterior(const ZpLattice& l, std::size_t r, long i);
AbelianGroupPresentation cohomology_exterior(const ZpLattice& l, std::size_t r, unsigned long i);
AbelianGroupPresentation homology_exterior(const ZpLattice& l, std::size_t r, unsigned long i);
unsigned long fixed_rank_exterior(const ZpLattice& l, std::size_t r);
unsigned long kernel_rank_mod2_exterior(const ZpLattice& l, std::size_t r);

// Homology of the length-(ell+1) complex
//   M <-(rho-1)-- M <--N-- M <-(rho-1)-- ... <-- M
// (differentials alternate, d_1 = rho - 1); ell must be odd.  Entry i of the
// result is H_i.
std::vector<AbelianGroupPresentation> sphere_homology(const ZpLattice& l, unsigned long ell);
// F_2 dimensions of the same complex with coefficients reduced mod 2.
std::vector<unsigned long> sphere_homology_mod2(const ZpLattice& l, unsigned long ell);

// Sphere-complex homology of one tensor block from its factor list.
std::vector<AbelianGroupPresentation> block_sphere_homology(
    unsigned long p, const std::vector<ZpLattice>& factors, unsigned long ell);
std::vector<unsigned long> block_sphere_homology_mod2(
    unsigned long p, const std::vector<ZpLattice>& factors, unsigned long ell);

// Sphere-complex homology with coefficients in Lambda^r M, assembled across
// the tensor blocks of the exterior power.  Entry i of the result is H_i.
std::vector<AbelianGroupPresentation> sphere_homology_exterior(const ZpLattice& l,
                                                               std::size_t r,
                                                               unsigned long ell);
// F_2 dimensions of the same complex mod 2.
std::vector<unsigned long> sphere_homology_mod2_exterior(const ZpLattice& l,
                                                         std::size_t r,
                                                         unsigned long ell);

}  // namespace tbi
