#include "tbi/snf.hpp"

#include <algorithm>
#include <cstdlib>

namespace tbi {
namespace {

// q = a / b rounded to nearest, so |a - q*b| <= |b| / 2.
void nearest_div(mpz_class& q, const mpz_class& a, const mpz_class& b) {
    mpz_class rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * abs(rem) > abs(b)) {
        if ((rem > 0) == (b > 0))
            q += 1;
        else
            q -= 1;
    }
}

// Row/column reduction to Smith form with minimal-|value| pivots.  The unit
// queue remembers positions where a +-1 has been seen; entries are validated
// when popped, so stale positions are harmless.  This keeps pivot selection
// near O(1) on the sparse near-permutation matrices the lattice machinery
// produces, instead of rescanning the active submatrix every step.
class Eliminator {
  public:
    Eliminator(const IntegerMatrix& a, bool want_u, bool want_v)
        : d_(a), want_u_(want_u), want_v_(want_v), r_(a.rows()), c_(a.cols()) {
        if (want_u_) u_ = IntegerMatrix::identity(r_);
        if (want_v_) v_ = IntegerMatrix::identity(c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) note_unit(i, j);
    }

    void run() {
        const std::size_t k = std::min(r_, c_);
        while (t_ < k) {
            if (!select_pivot()) break;
            clear_cross();
            ++t_;
        }
        rank_ = t_;
        normalize_signs();
        fix_chain();
    }

    IntegerMatrix& d() { return d_; }
    IntegerMatrix& u() { return u_; }
    IntegerMatrix& v() { return v_; }
    std::size_t rank() const { return rank_; }

  private:
    void note_unit(std::size_t i, std::size_t j) {
        const mpz_class& x = d_(i, j);
        if (x == 1 || x == -1) units_.push_back(i * c_ + j);
    }

    // --- elementary operations, mirrored into the transforms -------------

    void swap_rows(std::size_t a, std::size_t b) {
        d_.swap_rows(a, b);
        if (want_u_) u_.swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        d_.swap_cols(a, b);
        if (want_v_) v_.swap_cols(a, b);
    }
    // row dst -= q * row src, touching only the given columns of d_
    void row_axpy(std::size_t dst, std::size_t src, const mpz_class& q,
                  const std::vector<std::size_t>& cols) {
        for (std::size_t j : cols) {
            mpz_submul(d_(dst, j).get_mpz_t(), q.get_mpz_t(), d_(src, j).get_mpz_t());
            note_unit(dst, j);
        }
        if (want_u_)
            for (std::size_t j = 0; j < r_; ++j)
                mpz_submul(u_(dst, j).get_mpz_t(), q.get_mpz_t(), u_(src, j).get_mpz_t());
    }
    // col dst -= q * col src over rows >= t_
    void col_axpy(std::size_t dst, std::size_t src, const mpz_class& q) {
        for (std::size_t i = t_; i < r_; ++i) {
            if (d_(i, src) == 0) continue;
            mpz_submul(d_(i, dst).get_mpz_t(), q.get_mpz_t(), d_(i, src).get_mpz_t());
            note_unit(i, dst);
        }
        if (want_v_)
            for (std::size_t i = 0; i < c_; ++i)
                mpz_submul(v_(i, dst).get_mpz_t(), q.get_mpz_t(), v_(i, src).get_mpz_t());
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < c_; ++j)
            if (d_(i, j) != 0) d_(i, j) = -d_(i, j);
        if (want_u_)
            for (std::size_t j = 0; j < r_; ++j) u_(i, j) = -u_(i, j);
    }

    // --- pivoting ---------------------------------------------------------

    bool select_pivot() {
        while (!units_.empty()) {
            const std::size_t pos = units_.back();
            units_.pop_back();
            const std::size_t i = pos / c_, j = pos % c_;
            if (i < t_ || j < t_) continue;
            const mpz_class& x = d_(i, j);
            if (x != 1 && x != -1) continue;
            swap_rows(t_, i);
            swap_cols(t_, j);
            return true;
        }
        // No known unit: full scan for the entry of minimal |value|.
        std::size_t bi = 0, bj = 0;
        bool found = false;
        mpz_class best;
        for (std::size_t i = t_; i < r_ && !(found && best == 1); ++i) {
            for (std::size_t j = t_; j < c_; ++j) {
                const mpz_class& x = d_(i, j);
                if (x == 0) continue;
                mpz_class a = abs(x);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    bi = i;
                    bj = j;
                    if (best == 1) break;
                }
            }
        }
        if (!found) return false;
        swap_rows(t_, bi);
        swap_cols(t_, bj);
        return true;
    }

    std::vector<std::size_t> pivot_row_cols() const {
        std::vector<std::size_t> nz;
        for (std::size_t j = t_; j < c_; ++j)
            if (d_(t_, j) != 0) nz.push_back(j);
        return nz;
    }

    // Clear column t_ and row t_; remainders become the new (smaller) pivot.
    void clear_cross() {
        mpz_class q;
        bool dirty = true;
        while (dirty) {
            dirty = false;
            auto nz = pivot_row_cols();
            for (std::size_t i = t_ + 1; i < r_; ++i) {
                if (d_(i, t_) == 0) continue;
                nearest_div(q, d_(i, t_), d_(t_, t_));
                if (q != 0) row_axpy(i, t_, q, nz);
                if (d_(i, t_) != 0) {  // remainder beats the pivot
                    swap_rows(t_, i);
                    dirty = true;
                    break;
                }
            }
            if (dirty) continue;
            for (std::size_t j = t_ + 1; j < c_; ++j) {
                if (d_(t_, j) == 0) continue;
                nearest_div(q, d_(t_, j), d_(t_, t_));
                if (q != 0) col_axpy(j, t_, q);
                if (d_(t_, j) != 0) {
                    swap_cols(t_, j);
                    dirty = true;
                    break;
                }
            }
        }
    }

    void normalize_signs() {
        for (std::size_t i = 0; i < rank_; ++i)
            if (d_(i, i) < 0) negate_row(i);
    }

    // Enforce d_0 | d_1 | ... by 2x2 gcd/lcm steps on the diagonal.
    void fix_chain() {
        if (rank_ < 2) return;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i + 1 < rank_; ++i) {
                const mpz_class a = d_(i, i), b = d_(i + 1, i + 1);
                if (b % a == 0) continue;
                changed = true;
                mpz_class g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
                           b.get_mpz_t());
                // Bring b into row i, then transform the column pair so the
                // diagonal becomes (g, a*b/g).
                row_axpy(i, i + 1, -1, {i + 1});
                col_pair(i, i + 1, x, y, -b / g, a / g);
                mpz_class lam = y * b / g;
                if (lam != 0) row_axpy(i + 1, i, lam, {i});
                if (d_(i, i) < 0) negate_row(i);
                if (d_(i + 1, i + 1) < 0) negate_row(i + 1);
            }
        }
    }

    // Simultaneous unimodular column transform:
    //   (col a, col b) := (x*col_a + y*col_b, w*col_a + z*col_b)
    void col_pair(std::size_t a, std::size_t b, const mpz_class& x, const mpz_class& y,
                  const mpz_class& w, const mpz_class& z) {
        for (std::size_t i = 0; i < r_; ++i) {
            mpz_class ca = d_(i, a), cb = d_(i, b);
            d_(i, a) = x * ca + y * cb;
            d_(i, b) = w * ca + z * cb;
            note_unit(i, a);
            note_unit(i, b);
        }
        if (want_v_)
            for (std::size_t i = 0; i < c_; ++i) {
                mpz_class ca = v_(i, a), cb = v_(i, b);
                v_(i, a) = x * ca + y * cb;
                v_(i, b) = w * ca + z * cb;
            }
    }

    IntegerMatrix d_, u_, v_;
    bool want_u_, want_v_;
    std::size_t r_, c_;
    std::size_t t_ = 0;
    std::size_t rank_ = 0;
    std::vector<std::size_t> units_;
};

}  // namespace

SmithDecomposition snf(const IntegerMatrix& a) {
    Eliminator e(a, true, true);
    e.run();
    return {std::move(e.u()), std::move(e.d()), std::move(e.v())};
}

IntegerMatrix snf_diagonal(const IntegerMatrix& a) {
    Eliminator e(a, false, false);
    e.run();
    return std::move(e.d());
}

std::vector<mpz_class> elementary_divisors(const IntegerMatrix& a) {
    IntegerMatrix d = snf_diagonal(a);
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
        if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
}

std::size_t rank(const IntegerMatrix& a) {
    Eliminator e(a, false, false);
    e.run();
    return e.rank();
}

AbelianGroupPresentation cokernel(const IntegerMatrix& a) {
    IntegerMatrix d = snf_diagonal(a);
    AbelianGroupPresentation g;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
        if (d(i, i) == 0) continue;
        ++nonzero;
        if (d(i, i) > 1) g.torsion.push_back(d(i, i));
    }
    g.free_rank = static_cast<unsigned long>(a.rows() - nonzero);
    return g;
}

IntegerMatrix kernel_basis(const IntegerMatrix& a) {
    Eliminator e(a, false, true);
    e.run();
    const IntegerMatrix& d = e.d();
    const IntegerMatrix& v = e.v();
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const bool diag_nonzero = j < std::min(a.rows(), a.cols()) && d(j, j) != 0;
        if (!diag_nonzero) zero_cols.push_back(j);
    }
    std::vector<std::size_t> all_rows(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) all_rows[i] = i;
    return v.submatrix(all_rows, zero_cols);
}

namespace {

// Beyond this many columns, subquotient switches from the kernel-coordinate
// presentation to the elementary-divisor route (identical output; see the
// randomized agreement test).
constexpr std::size_t kSubquotientDenseLimit = 420;

}  // namespace

AbelianGroupPresentation subquotient(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw internal_error("subquotient: shape mismatch");
    if (!(a * b).is_zero()) throw input_error("subquotient requires a*b = 0");

    if (a.cols() > kSubquotientDenseLimit) {
        // ker(a) is saturated, so the nonzero elementary divisors of b as a
        // map into Z^n equal those of b as a map into ker(a).
        const std::size_t nullity = a.cols() - rank(a);
        AbelianGroupPresentation g;
        std::size_t rank_b = 0;
        for (const auto& dv : elementary_divisors(b)) {
            ++rank_b;
            if (dv > 1) g.torsion.push_back(dv);
        }
        if (rank_b > nullity) throw internal_error("subquotient: image exceeds kernel");
        g.free_rank = static_cast<unsigned long>(nullity - rank_b);
        return g;
    }

    // Express im(b) in kernel-basis coordinates, then present the cokernel.
    IntegerMatrix k = kernel_basis(a);
    auto s = snf(k);
    const std::size_t kc = k.cols();
    IntegerMatrix c = s.u * b;
    IntegerMatrix y(kc, b.cols());
    for (std::size_t i = 0; i < k.rows(); ++i) {
        const bool diag_nonzero = i < kc && s.d(i, i) != 0;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (diag_nonzero) {
                mpz_class q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c(i, j).get_mpz_t(),
                            s.d(i, i).get_mpz_t());
                if (rem != 0) throw internal_error("subquotient: non-integral coordinates");
                y(i, j) = q;
            } else if (c(i, j) != 0) {
                throw internal_error("subquotient: image not contained in kernel");
            }
        }
    }
    return cokernel(s.v * y);
}

std::optional<IntegerMatrix> solve_integer(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.rows() != b.rows()) throw internal_error("solve_integer: shape mismatch");
    auto s = snf(a);
    IntegerMatrix c = s.u * b;
    IntegerMatrix y(a.cols(), b.cols());
    const std::size_t k = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const bool diag_nonzero = i < k && s.d(i, i) != 0;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (diag_nonzero) {
                mpz_class q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c(i, j).get_mpz_t(),
                            s.d(i, i).get_mpz_t());
                if (rem != 0) return std::nullopt;
                y(i, j) = q;
            } else if (c(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v * y;
}

IntegerMatrix inverse_unimodular(const IntegerMatrix& a) {
    if (!a.is_square()) throw input_error("inverse of non-square matrix");
    auto s = snf(a);
    if (!s.d.is_identity()) throw input_error("matrix is not unimodular");
    return s.v * s.u;
}

}  // namespace tbi
