#include "tbi/spectral.hpp"

#include <sstream>

#include "tbi/cohomology.hpp"
#include "tbi/invariants.hpp"
#include "tbi/matrix.hpp"

namespace tbi {
namespace {

long mod4(long m) { return ((m % 4) + 4) % 4; }

bool same_parity(long a, long b) { return (a - b) % 2 == 0; }

AbelianGroupPresentation elementary_two(unsigned long dim) {
    AbelianGroupPresentation g;
    g.torsion.assign(dim, mpz_class(2));
    return g;
}

}  // namespace

std::string variant_name(E2Variant v) {
    switch (v) {
        case E2Variant::k_cohomology: return "k_cohomology";
        case E2Variant::k_homology: return "k_homology";
        case E2Variant::l_homology_bgamma: return "l_homology_bgamma";
        case E2Variant::l_homology_M: return "l_homology_M";
    }
    throw internal_error("unhandled page variant");
}

E2Variant parse_variant(const std::string& name) {
    std::string s = name;
    for (auto& ch : s)
        if (ch == '-') ch = '_';
    if (s == "k_cohomology") return E2Variant::k_cohomology;
    if (s == "k_homology") return E2Variant::k_homology;
    if (s == "l_homology_bgamma") return E2Variant::l_homology_bgamma;
    if (s == "l_homology_M" || s == "l_homology_m") return E2Variant::l_homology_M;
    throw input_error("unknown page variant: " + name +
                      " (expected k_cohomology, k_homology, l_homology_bgamma, "
                      "or l_homology_M)");
}

AbelianGroupPresentation E2Page::entry(long i, long j) const {
    const auto it = entries.find({i, j});
    return it == entries.end() ? AbelianGroupPresentation{} : it->second;
}

E2Page e2_page(const ZpLattice& l, long total_degree, E2Variant variant,
               const E2Options& options) {
    if (options.ell % 2 == 0)
        throw input_error("sphere dimension ell must be odd");
    if (options.column_limit < 1)
        throw input_error("column limit must be at least 1");

    E2Page page;
    page.variant = variant;
    page.total_degree = total_degree;
    page.column_limit =
        variant == E2Variant::l_homology_M ? options.ell : options.column_limit;

    const std::size_t n = l.rank();
    const long m = total_degree;

    auto put = [&](long i, long j, AbelianGroupPresentation g) {
        if (!g.is_trivial()) page.entries[{i, j}] = std::move(g);
    };

    switch (variant) {
        case E2Variant::k_cohomology: {
            // Entry (i, m-i) = H^i(Z/p; sum of Lambda^q of the dual lattice
            // over q matching the parity of m-i).
            const ZpLattice dual = dual_lattice(l);
            for (unsigned long i = 0; i <= page.column_limit; ++i) {
                const long row = m - static_cast<long>(i);
                AbelianGroupPresentation e;
                for (std::size_t q = 0; q <= n; ++q)
                    if (same_parity(static_cast<long>(q), row))
                        e = direct_sum(e, cohomology_exterior(dual, q, i));
                put(static_cast<long>(i), row, std::move(e));
            }
            break;
        }
        case E2Variant::k_homology: {
            for (unsigned long i = 0; i <= page.column_limit; ++i) {
                const long row = m - static_cast<long>(i);
                AbelianGroupPresentation e;
                for (std::size_t q = 0; q <= n; ++q)
                    if (same_parity(static_cast<long>(q), row))
                        e = direct_sum(e, homology_exterior(l, q, i));
                put(static_cast<long>(i), row, std::move(e));
            }
            break;
        }
        case E2Variant::l_homology_bgamma: {
            // Coefficients H_j(T^n; L(Z)) split into integral pieces at
            // j - q = 0 (mod 4) and Z/2 pieces at j - q = 2 (mod 4).  The
            // Z/2 pieces are semisimple over Z/p (p odd), so they only
            // survive in column 0 with rank equal to the fixed rank mod 2.
            for (unsigned long i = 0; i <= page.column_limit; ++i) {
                const long row = m - static_cast<long>(i);
                AbelianGroupPresentation e;
                for (std::size_t q = 0; q <= n; ++q) {
                    const long d = row - static_cast<long>(q);
                    if (mod4(d) == 0)
                        e = direct_sum(e, homology_exterior(l, q, i));
                    else if (mod4(d) == 2 && i == 0)
                        e = direct_sum(
                            e, elementary_two(kernel_rank_mod2_exterior(l, q)));
                }
                put(static_cast<long>(i), row, std::move(e));
            }
            break;
        }
        case E2Variant::l_homology_M: {
            // Base is the lens space: columns stop at ell, and entries are
            // the homology of the length-(ell+1) periodic complex with the
            // same graded coefficients as the BGamma page.
            const unsigned long ell = options.ell;
            std::vector<std::vector<AbelianGroupPresentation>> sph(n + 1);
            std::vector<std::vector<unsigned long>> sph2(n + 1);
            for (std::size_t q = 0; q <= n; ++q) {
                sph[q] = sphere_homology_exterior(l, q, ell);
                sph2[q] = sphere_homology_mod2_exterior(l, q, ell);
            }
            for (unsigned long i = 0; i <= ell; ++i) {
                const long row = m - static_cast<long>(i);
                AbelianGroupPresentation e;
                for (std::size_t q = 0; q <= n; ++q) {
                    const long d = row - static_cast<long>(q);
                    if (mod4(d) == 0)
                        e = direct_sum(e, sph[q][i]);
                    else if (mod4(d) == 2)
                        e = direct_sum(e, elementary_two(sph2[q][i]));
                }
                put(static_cast<long>(i), row, std::move(e));
            }
            break;
        }
    }
    return page;
}

std::string ConsistencyReport::to_string() const {
    std::ostringstream os;
    os << (passed ? "pass" : "FAIL") << " (" << entries_checked << " entries, "
       << pieces_checked << " parity pieces)";
    for (const auto& f : failures) os << "\n  " << f;
    return os.str();
}

ConsistencyReport consistency_check(const ZpLattice& l, long m, unsigned long depth) {
    if (depth < 2) throw input_error("consistency depth must be at least 2");

    ConsistencyReport rep;
    auto fail = [&](const std::string& msg) {
        rep.passed = false;
        rep.failures.push_back(msg);
    };
    auto bidegree = [&](unsigned long i) {
        std::ostringstream os;
        os << "(" << i << ", " << m - static_cast<long>(i) << ")";
        return os.str();
    };

    E2Options opt;
    opt.column_limit = depth;
    const E2Page page = e2_page(l, m, E2Variant::k_cohomology, opt);
    const GammaDescriptor g = gamma_of(l);

    // Column 0 carries the whole free part; its rank must match the closed
    // form, which takes the character-trace route instead of elimination.
    const AbelianGroupPresentation e0 = page.entry(0, m);
    ++rep.entries_checked;
    if (mpz_class(e0.free_rank) != k_theory_bgamma(g, m).free_rank())
        fail("free rank mismatch at " + bidegree(0) + ": page has " +
             std::to_string(e0.free_rank));

    // Positive columns are Tate groups, hence elementary of exponent p.
    for (unsigned long i = 1; i <= depth; ++i) {
        const AbelianGroupPresentation e = page.entry(i, m - static_cast<long>(i));
        ++rep.entries_checked;
        if (!e.is_trivial() && !e.is_elementary(g.p))
            fail("entry " + bidegree(i) + " = " + e.to_string() +
                 " is not elementary of exponent " + std::to_string(g.p));
    }

    const bool pure_cyclotomic = g.type.b == 0 && g.type.c == 0;

    // Without extension or trivial summands every Tate piece H^i(Z/p;
    // Lambda^q) with i >= 1 and i + q odd vanishes; check piece by piece.
    // Column 0 is exempt: its free part counts fixed vectors, which live in
    // the regular summands of the exterior power that Tate groups never see
    // (Lambda^3 of two p=5 cyclotomic summands already has eight of them).
    if (pure_cyclotomic) {
        const ZpLattice dual = dual_lattice(l);
        for (unsigned long i = 1; i <= depth; ++i) {
            const long row = m - static_cast<long>(i);
            for (std::size_t q = 0; q <= l.rank(); ++q) {
                if (!same_parity(static_cast<long>(q), row)) continue;
                if ((i + q) % 2 == 0) continue;
                ++rep.pieces_checked;
                const AbelianGroupPresentation piece = cohomology_exterior(dual, q, i);
                if (!piece.is_trivial())
                    fail("parity violation at " + bidegree(i) + ", exterior degree " +
                         std::to_string(q) + ": " + piece.to_string());
            }
        }
    }

    // Same hypothesis, odd total degree: positive columns vanish outright.
    if (pure_cyclotomic && m % 2 != 0)
        for (unsigned long i = 1; i <= depth; ++i) {
            const AbelianGroupPresentation e = page.entry(i, m - static_cast<long>(i));
            if (!e.is_trivial())
                fail("odd-degree entry " + bidegree(i) + " = " + e.to_string() +
                     " should vanish");
        }

    return rep;
}

}  // namespace tbi
