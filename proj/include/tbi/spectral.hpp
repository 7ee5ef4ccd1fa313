#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tbi/abelian.hpp"
#include "tbi/lattice.hpp"

namespace tbi {

// Which fibration and which coefficient theory the page describes.
//   k_cohomology      K^*(B Gamma), base BZ/p, fiber T^n
//   k_homology        K_*(B Gamma), same fibration
//   l_homology_bgamma H_*(B Gamma; L(Z))
//   l_homology_M      H_*(M; L(Z)), base the lens space S^ell/(Z/p)
enum class E2Variant { k_cohomology, k_homology, l_homology_bgamma, l_homology_M };

std::string variant_name(E2Variant v);
E2Variant parse_variant(const std::string& name);

struct E2Options {
    // Column cutoff for BZ/p-based pages; two periods deep by default.
    unsigned long column_limit = 8;
    // Sphere dimension for the l_homology_M variant (columns run 0..ell).
    unsigned long ell = 3;
};

// One E2 page along a fixed total degree.  All differentials into and out of
// the stored range vanish, so the page is already the associated graded of
// the answer.  Zero entries are not stored; entry() treats absence as 0.
struct E2Page {
    E2Variant variant = E2Variant::k_cohomology;
    long total_degree = 0;
    unsigned long column_limit = 0;
    std::map<std::pair<long, long>, AbelianGroupPresentation> entries;

    AbelianGroupPresentation entry(long i, long j) const;
};

E2Page e2_page(const ZpLattice& l, long total_degree, E2Variant variant,
               const E2Options& options = {});

// Cross-checks of the k_cohomology page against the closed-form calculators:
// column-0 free rank, exponent p in positive columns, parity vanishing for
// lattices with no extension or trivial summands, and odd-degree collapse.
struct ConsistencyReport {
    bool passed = true;
    unsigned long entries_checked = 0;
    unsigned long pieces_checked = 0;
    std::vector<std::string> failures;

    std::string to_string() const;
};

ConsistencyReport consistency_check(const ZpLattice& l, long m, unsigned long depth);

}  // namespace tbi
