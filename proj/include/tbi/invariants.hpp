#pragma once
#include <gmpxx.h>

#include <functional>

#include "tbi/formal.hpp"
#include "tbi/lattice.hpp"

namespace tbi {

// Gamma = Z^n x| Z/p, described by the type of its lattice.  Every group
// invariant computed here depends only on (p, a, b, c); lattices given by
// explicit matrices enter through gamma_of.
struct GammaDescriptor {
    unsigned long p = 3;
    TypeSignature type;

    unsigned long rank() const;                  // n = a(p-1) + bp + c
    mpz_class max_finite_classes() const;        // p^a
    unsigned long normalizer_free_rank() const;  // b + c

    bool operator==(const GammaDescriptor&) const = default;
};

// Validates p and the rank bound via the canonical lattice constructors.
GammaDescriptor make_gamma(unsigned long p, const TypeSignature& type);
GammaDescriptor gamma_of(const ZpLattice& l);

// The bundle T^n x_{Z/p} S^ell over the lens space S^ell/(Z/p); ell odd and
// >= 3 so the base has fundamental group Z/p.
struct BundleDescriptor {
    GammaDescriptor gamma;
    unsigned long ell = 3;
};

BundleDescriptor make_bundle(const GammaDescriptor& gamma, unsigned long ell);

enum class StructureKind { periodic, geometric };

using LeafFn = std::function<FormalAbelianGroup(const Decoration&, long)>;

// Reduced L-group of Z[Z/p] at the given decoration and degree.
FormalAbelianGroup l_group_zp(const Decoration& dec, long m, unsigned long p);

// L-group of Z; decoration-independent, 4-periodic Z, 0, Z/2, 0.
FormalAbelianGroup l_group_z(const Decoration& dec, long m);

// Crossing with Z^k: direct sum of binom(k,i) copies of leaf(dec - i, m - i).
FormalAbelianGroup shaneson_expand(unsigned long k, const Decoration& dec, long m,
                                   const LeafFn& leaf);

// L_m(Z[normalizer]) / L_m(Z[Weyl group]) for one conjugacy class of maximal
// finite subgroups.
FormalAbelianGroup nw_quotient(const GammaDescriptor& g, const Decoration& dec, long m);

// Invariants of the L(Z)-homology of the torus: summand j contributes
// Z^{fixed rank of Lambda^j} when m-j = 0 mod 4 and (Z/2)^{mod-2 invariants
// of Lambda^j} when m-j = 2 mod 4.  The connective flag cuts to m-j >= 1;
// otherwise the spectrum is 4-periodic and every residue contributes.
FormalAbelianGroup torus_l_homology_invariants(const ZpLattice& l, long m, bool connective);

// K^m(B Gamma): fixed part of K^m(T^n) plus a p-adic summand.
FormalAbelianGroup k_theory_bgamma(const GammaDescriptor& g, long m);

// K_m(B Gamma) for b + c > 0; the p-adic summand dualizes to Z/p^inf.
FormalAbelianGroup k_homology_bgamma(const GammaDescriptor& g, long m);

// L_m of the integral group ring of Gamma at any decoration.
FormalAbelianGroup l_groups_gamma(const GammaDescriptor& g, const Decoration& dec, long m);

// Periodic or geometric structure group of the bundle in dimension
// n + ell + 1; the two differ exactly in whether the torus summand keeps
// its degree-0 piece.
FormalAbelianGroup structure_set(const BundleDescriptor& bundle, const Decoration& dec,
                                 StructureKind kind);

// Periodic structure group of B Gamma; shifts that land on the h decoration
// are not covered by the evaluated table and come back as OpaqueL leaves.
FormalAbelianGroup structure_set_bgamma(const GammaDescriptor& g, const Decoration& dec,
                                        long m);

// Wh_m(Gamma) as symbolic Wh_q(Z/p) leaves; zero for m <= -1.
FormalAbelianGroup whitehead_gamma(const GammaDescriptor& g, long m);

// The combinatorial count nu_b: 2^{b-1} when b and m have different parity,
// 2^{b-1} - 1 otherwise; cross-checked against its alternating-sum form.
mpz_class nu_b(unsigned long b, long m);

}  // namespace tbi
