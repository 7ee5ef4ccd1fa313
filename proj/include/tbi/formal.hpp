#pragma once
#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace tbi {

// Refinement level of an L-group: s (level 2), h (level 1), a lower level
// j <= 0, or -inf.  Subtraction saturates at -inf.
class Decoration {
  public:
    Decoration() : j_(2), minus_inf_(false) {}

    static Decoration s() { return Decoration(2, false); }
    static Decoration h() { return Decoration(1, false); }
    static Decoration lower(long j);
    static Decoration minus_infinity() { return Decoration(0, true); }

    bool is_minus_infinity() const { return minus_inf_; }
    bool is_h() const { return !minus_inf_ && j_ == 1; }
    long level() const;  // throws for -inf

    Decoration operator-(long i) const;

    // "s", "h", "j:<int>", "-inf"; parse accepts exactly those forms.
    std::string to_string() const;
    static Decoration parse(const std::string& text);

    bool operator==(const Decoration&) const = default;

  private:
    Decoration(long j, bool minus_inf) : j_(j), minus_inf_(minus_inf) {}
    long j_;
    bool minus_inf_;
};

// Leaves a formal group can carry besides free Z summands.  The orders of
// H_Zp and Wh_Zp are never evaluated; OpaqueL marks a structure-set summand
// whose value no implemented table covers.
enum class LeafKind {
    Z2,        // Z/2
    Zp_k,      // Z/p^k  (params p, k >= 1); never produced by the calculators
    Zp_adic,   // p-adic integers  (param p)
    Zp_infty,  // Pruefer group Z/p^inf  (param p)
    Z_inv_p,   // Z[1/p]  (param p)
    H_Zp,      // exponent-2 group H(Z/p), symbolic  (param p)
    Wh_Zp,     // Wh_q(Z/p) for q >= 0, symbolic  (params p, q)
    OpaqueL,   // unevaluated leaf  (params decoration text, degree)
};

// Canonical JSON tag for a leaf kind ("Z2", "Zp_adic", ...).
std::string kind_name(LeafKind kind);

struct FormalLeaf {
    LeafKind kind = LeafKind::Z2;
    unsigned long p = 0;  // prime parameter; 0 when the kind has none
    long n = 0;           // k for Zp_k, q for Wh_Zp, degree for OpaqueL
    std::string dec;      // decoration text, OpaqueL only

    auto operator<=>(const FormalLeaf&) const = default;
    std::string to_string() const;
};

FormalLeaf leaf_z2();
FormalLeaf leaf_zp_k(unsigned long p, long k);
FormalLeaf leaf_zp_adic(unsigned long p);
FormalLeaf leaf_zp_infty(unsigned long p);
FormalLeaf leaf_z_inv_p(unsigned long p);
FormalLeaf leaf_h_zp(unsigned long p);
FormalLeaf leaf_wh_zp(unsigned long p, long q);
FormalLeaf leaf_opaque_l(const Decoration& dec, long m);

// Formal direct sum of Z^{free_rank} and symbolic leaves with
// multiplicities.  Leaves stay sorted in canonical order with equal leaves
// merged, so equality of values is equality of representations.
class FormalAbelianGroup {
  public:
    FormalAbelianGroup() = default;

    const mpz_class& free_rank() const { return free_rank_; }
    const std::vector<std::pair<FormalLeaf, mpz_class>>& leaves() const { return leaves_; }

    bool is_zero() const { return free_rank_ == 0 && leaves_.empty(); }
    // Multiplicity of one leaf (0 when absent).
    mpz_class multiplicity(const FormalLeaf& leaf) const;

    void add_free(const mpz_class& rank);
    void add_leaf(const FormalLeaf& leaf, const mpz_class& mult);

    FormalAbelianGroup& operator+=(const FormalAbelianGroup& other);
    friend FormalAbelianGroup operator+(FormalAbelianGroup a, const FormalAbelianGroup& b) {
        a += b;
        return a;
    }
    // Direct sum of `copies` copies.
    FormalAbelianGroup scaled(const mpz_class& copies) const;

    bool operator==(const FormalAbelianGroup&) const = default;

    // "Z^4 + Z/2", "0" for the zero group.
    std::string to_string() const;

  private:
    mpz_class free_rank_;
    std::vector<std::pair<FormalLeaf, mpz_class>> leaves_;
};

FormalAbelianGroup formal_zero();
FormalAbelianGroup formal_free(const mpz_class& rank);
FormalAbelianGroup formal_of(const FormalLeaf& leaf, const mpz_class& mult = 1);

}  // namespace tbi
