#include "tbi/abelian.hpp"

#include <sstream>

#include "tbi/matrix.hpp"
#include "tbi/snf.hpp"

namespace tbi {

mpz_class AbelianGroupPresentation::torsion_order() const {
    mpz_class o = 1;
    for (const auto& t : torsion) o *= t;
    return o;
}

bool AbelianGroupPresentation::is_elementary(unsigned long p) const {
    if (free_rank != 0) return false;
    for (const auto& t : torsion)
        if (t != p) return false;
    return true;
}

std::string AbelianGroupPresentation::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (free_rank == 1) {
        sep();
        os << "Z";
    } else if (free_rank > 1) {
        sep();
        os << "Z^" << free_rank;
    }
    for (const auto& t : torsion) {
        sep();
        os << "Z/" << t.get_str();
    }
    return os.str();
}

AbelianGroupPresentation free_abelian(unsigned long rank) { return {rank, {}}; }

AbelianGroupPresentation direct_sum(const AbelianGroupPresentation& a,
                                    const AbelianGroupPresentation& b) {
    AbelianGroupPresentation out;
    out.free_rank = a.free_rank + b.free_rank;
    const std::size_t k = a.torsion.size() + b.torsion.size();
    if (k == 0) return out;
    // Recanonicalize the merged factors through the Smith form of a diagonal
    // presentation matrix, so the output chain divides again.
    IntegerMatrix diag(k, k);
    std::size_t idx = 0;
    for (const auto& t : a.torsion) diag(idx, idx) = t, ++idx;
    for (const auto& t : b.torsion) diag(idx, idx) = t, ++idx;
    for (const auto& d : elementary_divisors(diag))
        if (d > 1) out.torsion.push_back(d);
    return out;
}

}  // namespace tbi
