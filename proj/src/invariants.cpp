#include "tbi/invariants.hpp"

#include "tbi/cohomology.hpp"

namespace tbi {
namespace {

long mod4(long m) { return ((m % 4) + 4) % 4; }

bool even(long m) { return m % 2 == 0; }

mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

mpz_class pow_ui(unsigned long base, unsigned long exp) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
    return out;
}

// (p-1) p^a 2^{b+c-1}, the p-adic multiplicity for b + c > 0.
mpz_class p_adic_count(const GammaDescriptor& g) {
    return (g.p - 1) * pow_ui(g.p, g.type.a) * pow_ui(2, g.normalizer_free_rank() - 1);
}

}  // namespace

unsigned long GammaDescriptor::rank() const {
    return type.a * (p - 1) + type.b * p + type.c;
}

mpz_class GammaDescriptor::max_finite_classes() const { return pow_ui(p, type.a); }

unsigned long GammaDescriptor::normalizer_free_rank() const { return type.b + type.c; }

GammaDescriptor make_gamma(unsigned long p, const TypeSignature& type) {
    canonical_lattice(p, type);  // validates p, the type, and the rank cap
    return GammaDescriptor{p, type};
}

GammaDescriptor gamma_of(const ZpLattice& l) { return GammaDescriptor{l.p, detect_type(l)}; }

BundleDescriptor make_bundle(const GammaDescriptor& gamma, unsigned long ell) {
    if (ell % 2 == 0 || ell < 3)
        throw input_error("ell must be odd and >= 3, got " + std::to_string(ell));
    return BundleDescriptor{gamma, ell};
}

FormalAbelianGroup l_group_zp(const Decoration& dec, long m, unsigned long p) {
    if (!even(m)) return formal_zero();
    FormalAbelianGroup out = formal_free((p - 1) / 2);
    if (dec.is_h() && mod4(m) == 2) out.add_leaf(leaf_h_zp(p), 1);
    return out;
}

FormalAbelianGroup l_group_z(const Decoration&, long m) {
    switch (mod4(m)) {
        case 0: return formal_free(1);
        case 2: return formal_of(leaf_z2());
        default: return formal_zero();
    }
}

FormalAbelianGroup shaneson_expand(unsigned long k, const Decoration& dec, long m,
                                   const LeafFn& leaf) {
    FormalAbelianGroup out;
    for (unsigned long i = 0; i <= k; ++i)
        out += leaf(dec - static_cast<long>(i), m - static_cast<long>(i)).scaled(binom(k, i));
    return out;
}

FormalAbelianGroup nw_quotient(const GammaDescriptor& g, const Decoration& dec, long m) {
    unsigned long p = g.p;
    return shaneson_expand(g.normalizer_free_rank(), dec, m,
                           [p](const Decoration& d, long q) { return l_group_zp(d, q, p); });
}

FormalAbelianGroup torus_l_homology_invariants(const ZpLattice& l, long m, bool connective) {
    const std::vector<unsigned long> fixed = exterior_fixed_ranks(l);
    FormalAbelianGroup out;
    for (std::size_t j = 0; j <= l.rank(); ++j) {
        const long d = m - static_cast<long>(j);
        if (connective && d < 1) continue;
        if (mod4(d) == 0)
            out.add_free(fixed[j]);
        else if (mod4(d) == 2)
            out.add_leaf(leaf_z2(), kernel_rank_mod2_exterior(l, j));
    }
    return out;
}

FormalAbelianGroup k_theory_bgamma(const GammaDescriptor& g, long m) {
    const ZpLattice dual = dual_lattice(canonical_lattice(g.p, g.type));
    const std::vector<unsigned long> fixed = exterior_fixed_ranks(dual);
    mpz_class free = 0;
    for (std::size_t j = 0; j <= dual.rank(); ++j)
        if (even(m - static_cast<long>(j))) free += fixed[j];
    FormalAbelianGroup out = formal_free(free);
    if (g.normalizer_free_rank() > 0)
        out.add_leaf(leaf_zp_adic(g.p), p_adic_count(g));
    else if (even(m))
        out.add_leaf(leaf_zp_adic(g.p), (g.p - 1) * pow_ui(g.p, g.type.a));
    return out;
}

FormalAbelianGroup k_homology_bgamma(const GammaDescriptor& g, long m) {
    if (g.normalizer_free_rank() == 0)
        throw input_error("k_homology_bgamma needs b + c > 0");
    FormalAbelianGroup out = formal_free(k_theory_bgamma(g, m).free_rank());
    out.add_leaf(leaf_zp_infty(g.p), p_adic_count(g));
    return out;
}

FormalAbelianGroup l_groups_gamma(const GammaDescriptor& g, const Decoration& dec, long m) {
    const ZpLattice l = canonical_lattice(g.p, g.type);
    FormalAbelianGroup out = torus_l_homology_invariants(l, m, false);
    out += nw_quotient(g, dec, m).scaled(g.max_finite_classes());
    return out;
}

FormalAbelianGroup structure_set(const BundleDescriptor& bundle, const Decoration& dec,
                                 StructureKind kind) {
    const GammaDescriptor& g = bundle.gamma;
    if (bundle.ell % 2 == 0 || bundle.ell < 3) throw input_error("ell must be odd and >= 3");
    const ZpLattice l = canonical_lattice(g.p, g.type);
    const long n = static_cast<long>(g.rank());
    const long m = n + static_cast<long>(bundle.ell) + 1;
    FormalAbelianGroup out =
        torus_l_homology_invariants(l, n, kind == StructureKind::geometric);
    out += nw_quotient(g, dec, m).scaled(g.max_finite_classes());
    return out;
}

FormalAbelianGroup structure_set_bgamma(const GammaDescriptor& g, const Decoration& dec,
                                        long m) {
    FormalAbelianGroup out;
    const unsigned long k = g.normalizer_free_rank();
    const mpz_class classes = g.max_finite_classes();
    for (unsigned long i = 0; i <= k; ++i) {
        const long mi = m - static_cast<long>(i);
        if (!even(mi)) continue;  // every decoration's reduced L-groups vanish in odd degrees
        const mpz_class copies = classes * binom(k, i);
        const Decoration di = dec - static_cast<long>(i);
        if (di.is_h())
            out.add_leaf(leaf_opaque_l(di, mi), copies);
        else
            out.add_leaf(leaf_z_inv_p(g.p), copies * ((g.p - 1) / 2));
    }
    return out;
}

FormalAbelianGroup whitehead_gamma(const GammaDescriptor& g, long m) {
    FormalAbelianGroup out;
    const unsigned long n = g.normalizer_free_rank();
    const mpz_class classes = g.max_finite_classes();
    for (unsigned long k = 0; k <= n; ++k) {
        const long q = m - static_cast<long>(k);
        if (q < 0) continue;
        out.add_leaf(leaf_wh_zp(g.p, q), classes * binom(n, k));
    }
    return out;
}

mpz_class nu_b(unsigned long b, long m) {
    if (b < 1) throw input_error("nu_b needs b >= 1");
    const bool m_even = even(m);
    mpz_class sum = 0;
    for (unsigned long d = 1; d <= b - 1; ++d) {
        mpz_class term = binom(b, d) * pow_ui(2, b - 1 - d);
        sum += (d % 2 == 1) ? term : -term;
    }
    if (m_even) sum += (b % 2 == 0) ? -1 : 1;  // kappa_{b,m} = (-1)^{b+1}
    mpz_class closed = pow_ui(2, b - 1);
    if ((b % 2 == 0) == m_even) closed -= 1;  // b = m mod 2
    if (sum != closed) throw internal_error("nu_b: alternating sum disagrees with closed form");
    return closed;
}

}  // namespace tbi
