#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace tbi {

// Finitely generated abelian group in canonical form: free rank plus the
// invariant factor chain t_0 | t_1 | ..., every factor >= 2.
struct AbelianGroupPresentation {
    unsigned long free_rank = 0;
    std::vector<mpz_class> torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    // Order of the torsion subgroup.
    mpz_class torsion_order() const;
    // Finite, all invariant factors equal to the prime p.
    bool is_elementary(unsigned long p) const;

    bool operator==(const AbelianGroupPresentation&) const = default;

    std::string to_string() const;
};

AbelianGroupPresentation free_abelian(unsigned long rank);
// Direct sum, re-canonicalized so the invariant factor chain divides.
AbelianGroupPresentation direct_sum(const AbelianGroupPresentation& a,
                                    const AbelianGroupPresentation& b);

}  // namespace tbi
