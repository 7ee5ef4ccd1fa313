#include "tbi/formal.hpp"

#include <algorithm>
#include <sstream>

#include "tbi/matrix.hpp"

namespace tbi {

Decoration Decoration::lower(long j) {
    if (j > 2) throw input_error("decoration level must be <= 2");
    return Decoration(j, false);
}

long Decoration::level() const {
    if (minus_inf_) throw internal_error("level() on the -inf decoration");
    return j_;
}

Decoration Decoration::operator-(long i) const {
    if (minus_inf_) return *this;
    return Decoration(j_ - i, false);
}

std::string Decoration::to_string() const {
    if (minus_inf_) return "-inf";
    if (j_ == 2) return "s";
    if (j_ == 1) return "h";
    return "j:" + std::to_string(j_);
}

Decoration Decoration::parse(const std::string& text) {
    if (text == "s") return s();
    if (text == "h") return h();
    if (text == "-inf") return minus_infinity();
    if (text.rfind("j:", 0) == 0) {
        try {
            std::size_t used = 0;
            long j = std::stol(text.substr(2), &used);
            if (used != text.size() - 2) throw input_error("bad decoration: " + text);
            return lower(j);
        } catch (const std::logic_error&) {
            throw input_error("bad decoration: " + text);
        }
    }
    throw input_error("bad decoration: " + text + " (expected s, h, j:<int>, or -inf)");
}

std::string kind_name(LeafKind kind) {
    switch (kind) {
        case LeafKind::Z2: return "Z2";
        case LeafKind::Zp_k: return "Zp_k";
        case LeafKind::Zp_adic: return "Zp_adic";
        case LeafKind::Zp_infty: return "Zp_infty";
        case LeafKind::Z_inv_p: return "Z_inv_p";
        case LeafKind::H_Zp: return "H_Zp";
        case LeafKind::Wh_Zp: return "Wh_Zp";
        case LeafKind::OpaqueL: return "OpaqueL";
    }
    throw internal_error("unknown leaf kind");
}

std::string FormalLeaf::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case LeafKind::Z2:
            os << "Z/2";
            break;
        case LeafKind::Zp_k: {
            mpz_class order;
            mpz_ui_pow_ui(order.get_mpz_t(), p, static_cast<unsigned long>(n));
            os << "Z/" << order;
            break;
        }
        case LeafKind::Zp_adic:
            os << "Zhat_" << p;
            break;
        case LeafKind::Zp_infty:
            os << "Z/" << p << "^inf";
            break;
        case LeafKind::Z_inv_p:
            os << "Z[1/" << p << "]";
            break;
        case LeafKind::H_Zp:
            os << "H(Z/" << p << ")";
            break;
        case LeafKind::Wh_Zp:
            os << "Wh_" << n << "(Z/" << p << ")";
            break;
        case LeafKind::OpaqueL:
            os << "OpaqueL(" << dec << "," << n << ")";
            break;
    }
    return os.str();
}

FormalLeaf leaf_z2() { return FormalLeaf{LeafKind::Z2, 0, 0, {}}; }

FormalLeaf leaf_zp_k(unsigned long p, long k) {
    if (k < 1) throw internal_error("Zp_k leaf needs k >= 1");
    return FormalLeaf{LeafKind::Zp_k, p, k, {}};
}

FormalLeaf leaf_zp_adic(unsigned long p) { return FormalLeaf{LeafKind::Zp_adic, p, 0, {}}; }

FormalLeaf leaf_zp_infty(unsigned long p) { return FormalLeaf{LeafKind::Zp_infty, p, 0, {}}; }

FormalLeaf leaf_z_inv_p(unsigned long p) { return FormalLeaf{LeafKind::Z_inv_p, p, 0, {}}; }

FormalLeaf leaf_h_zp(unsigned long p) { return FormalLeaf{LeafKind::H_Zp, p, 0, {}}; }

FormalLeaf leaf_wh_zp(unsigned long p, long q) {
    if (q < 0) throw internal_error("Wh_q leaves below q = 0 are zero, not leaves");
    return FormalLeaf{LeafKind::Wh_Zp, p, q, {}};
}

FormalLeaf leaf_opaque_l(const Decoration& dec, long m) {
    return FormalLeaf{LeafKind::OpaqueL, 0, m, dec.to_string()};
}

mpz_class FormalAbelianGroup::multiplicity(const FormalLeaf& leaf) const {
    for (const auto& [l, mult] : leaves_)
        if (l == leaf) return mult;
    return 0;
}

void FormalAbelianGroup::add_free(const mpz_class& rank) {
    if (rank < 0) throw internal_error("negative free rank");
    free_rank_ += rank;
}

void FormalAbelianGroup::add_leaf(const FormalLeaf& leaf, const mpz_class& mult) {
    if (mult < 0) throw internal_error("negative leaf multiplicity");
    if (mult == 0) return;
    auto it = std::lower_bound(
        leaves_.begin(), leaves_.end(), leaf,
        [](const std::pair<FormalLeaf, mpz_class>& entry, const FormalLeaf& l) {
            return entry.first < l;
        });
    if (it != leaves_.end() && it->first == leaf)
        it->second += mult;
    else
        leaves_.insert(it, {leaf, mult});
}

FormalAbelianGroup& FormalAbelianGroup::operator+=(const FormalAbelianGroup& other) {
    free_rank_ += other.free_rank_;
    for (const auto& [leaf, mult] : other.leaves_) add_leaf(leaf, mult);
    return *this;
}

FormalAbelianGroup FormalAbelianGroup::scaled(const mpz_class& copies) const {
    if (copies < 0) throw internal_error("negative copy count");
    FormalAbelianGroup out;
    if (copies == 0) return out;
    out.free_rank_ = free_rank_ * copies;
    out.leaves_ = leaves_;
    for (auto& [leaf, mult] : out.leaves_) mult *= copies;
    return out;
}

std::string FormalAbelianGroup::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (free_rank_ > 0) {
        sep();
        os << "Z";
        if (free_rank_ > 1) os << "^" << free_rank_;
    }
    for (const auto& [leaf, mult] : leaves_) {
        sep();
        if (mult == 1)
            os << leaf.to_string();
        else
            os << "(" << leaf.to_string() << ")^" << mult;
    }
    return os.str();
}

FormalAbelianGroup formal_zero() { return {}; }

FormalAbelianGroup formal_free(const mpz_class& rank) {
    FormalAbelianGroup g;
    g.add_free(rank);
    return g;
}

FormalAbelianGroup formal_of(const FormalLeaf& leaf, const mpz_class& mult) {
    FormalAbelianGroup g;
    g.add_leaf(leaf, mult);
    return g;
}

}  // namespace tbi
