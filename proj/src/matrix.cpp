#include "tbi/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace tbi {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw internal_error("ragged matrix initializer");
        for (long v : r) e_.emplace_back(v);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntegerMatrix::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

bool IntegerMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntegerMatrix IntegerMatrix::submatrix(const std::vector<std::size_t>& ri,
                                       const std::vector<std::size_t>& ci) const {
    IntegerMatrix s(ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
        for (std::size_t j = 0; j < ci.size(); ++j) s(i, j) = (*this)(ri[i], ci[j]);
    return s;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(e_[a * cols_ + j], e_[b * cols_ + j]);
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(e_[i * cols_ + a], e_[i * cols_ + b]);
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string IntegerMatrix::key() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << ":";
    for (const auto& x : e_) os << x.get_str() << ",";
    return os.str();
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw internal_error("shape mismatch in +");
    IntegerMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw internal_error("shape mismatch in -");
    IntegerMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

IntegerMatrix operator-(const IntegerMatrix& a) {
    IntegerMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
    return r;
}

IntegerMatrix operator*(const mpz_class& s, const IntegerMatrix& a) {
    IntegerMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

namespace {

void multiply_row_range(const IntegerMatrix& a, const IntegerMatrix& b, IntegerMatrix& r,
                        std::size_t i0, std::size_t i1) {
    const std::size_t n = a.cols(), c = b.cols();
    for (std::size_t i = i0; i < i1; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const mpz_class& aik = a(i, k);
            if (aik == 0) continue;  // the hot matrices are sparse
            for (std::size_t j = 0; j < c; ++j) {
                const mpz_class& bkj = b(k, j);
                if (bkj != 0) mpz_addmul(r(i, j).get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
            }
        }
    }
}

}  // namespace

IntegerMatrix serial::multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw internal_error("shape mismatch in *");
    IntegerMatrix r(a.rows(), b.cols());
    multiply_row_range(a, b, r, 0, a.rows());
    return r;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols() != b.rows()) throw internal_error("shape mismatch in *");
    IntegerMatrix r(a.rows(), b.cols());
    const bool big = a.rows() * a.cols() * b.cols() >= (std::size_t{1} << 18) && a.rows() >= 8;
#pragma omp parallel for schedule(dynamic, 4) if (big)
    for (long i = 0; i < static_cast<long>(a.rows()); ++i)
        multiply_row_range(a, b, r, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1);
    return r;
}

IntegerMatrix mat_pow(const IntegerMatrix& a, unsigned long k) {
    if (!a.is_square()) throw internal_error("mat_pow of non-square matrix");
    IntegerMatrix r = IntegerMatrix::identity(a.rows());
    IntegerMatrix base = a;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

mpz_class determinant(const IntegerMatrix& a) {
    if (!a.is_square()) throw internal_error("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntegerMatrix w = a;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && w(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            w.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : mpz_class(-w(n - 1, n - 1));
}

mpz_class trace(const IntegerMatrix& a) {
    if (!a.is_square()) throw internal_error("trace of non-square matrix");
    mpz_class t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

std::vector<mpz_class> exterior_traces(const IntegerMatrix& a) {
    if (!a.is_square()) throw internal_error("exterior_traces of non-square matrix");
    const std::size_t n = a.rows();
    std::vector<mpz_class> e(n + 1);
    e[0] = 1;
    // Faddeev-LeVerrier: the auxiliary sequence M_k = a(M_{k-1} + c_{k-1})
    // has c_k = -tr(M_k)/k exactly, and e_k = (-1)^k c_k.
    IntegerMatrix m = IntegerMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        mpz_class t = trace(m);
        if (!mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(k)))
            throw internal_error("exterior_traces: inexact division");
        mpz_class c;
        mpz_divexact_ui(c.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
        c = -c;
        e[k] = (k % 2 == 0) ? c : mpz_class(-c);
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c;
    }
    return e;
}

IntegerMatrix serial::kron_tensor(const IntegerMatrix& a, const IntegerMatrix& b) {
    IntegerMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const mpz_class& aij = a(i1, j1);
            if (aij == 0) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    r(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
        }
    return r;
}

IntegerMatrix kron_tensor(const IntegerMatrix& a, const IntegerMatrix& b) {
    IntegerMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    const bool big = r.rows() * r.cols() >= (std::size_t{1} << 16) && a.rows() >= 2;
#pragma omp parallel for schedule(static) if (big)
    for (long i1 = 0; i1 < static_cast<long>(a.rows()); ++i1) {
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const mpz_class& aij = a(static_cast<std::size_t>(i1), j1);
            if (aij == 0) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    r(static_cast<std::size_t>(i1) * b.rows() + i2, j1 * b.cols() + j2) =
                        aij * b(i2, j2);
        }
    }
    return r;
}

namespace {

constexpr std::size_t kExteriorEntryCap = 25'000'000;

void exterior_rows(const IntegerMatrix& a, std::size_t r,
                   const std::vector<std::vector<std::size_t>>& rsub,
                   const std::vector<std::vector<std::size_t>>& csub, IntegerMatrix& out,
                   std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i)
        for (std::size_t j = 0; j < csub.size(); ++j)
            out(i, j) = determinant(a.submatrix(rsub[i], csub[j]));
    (void)r;
}

}  // namespace

IntegerMatrix serial::exterior_power_matrix(const IntegerMatrix& a, std::size_t r) {
    auto rsub = lex_subsets(a.rows(), r);
    auto csub = lex_subsets(a.cols(), r);
    IntegerMatrix out(rsub.size(), csub.size());
    exterior_rows(a, r, rsub, csub, out, 0, rsub.size());
    return out;
}

IntegerMatrix exterior_power_matrix(const IntegerMatrix& a, std::size_t r) {
    if (r == 0) return IntegerMatrix::identity(1);
    if (r == 1) return a;
    auto rsub = lex_subsets(a.rows(), r);
    auto csub = lex_subsets(a.cols(), r);
    if (rsub.size() * csub.size() > kExteriorEntryCap)
        throw input_error("exterior power dimensions too large to materialize");
    IntegerMatrix out(rsub.size(), csub.size());
    const bool big = rsub.size() * csub.size() >= 4096;
#pragma omp parallel for schedule(dynamic, 8) if (big)
    for (long i = 0; i < static_cast<long>(rsub.size()); ++i)
        exterior_rows(a, r, rsub, csub, out, static_cast<std::size_t>(i),
                      static_cast<std::size_t>(i) + 1);
    return out;
}

bool is_prime(unsigned long q) {
    if (q < 2) return false;
    for (unsigned long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

std::size_t rank_mod_2_packed(std::vector<std::uint64_t>& bits, std::size_t rows,
                              std::size_t cols) {
    const std::size_t words = (cols + 63) / 64;
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols && rank < rows; ++j) {
        const std::size_t w = j / 64;
        const std::uint64_t bit = std::uint64_t{1} << (j % 64);
        std::size_t piv = rank;
        while (piv < rows && !(bits[piv * words + w] & bit)) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t t = 0; t < words; ++t)
                std::swap(bits[piv * words + t], bits[rank * words + t]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != rank && (bits[i * words + w] & bit))
                for (std::size_t t = w; t < words; ++t) bits[i * words + t] ^= bits[rank * words + t];
        }
        ++rank;
    }
    return rank;
}

namespace {

std::size_t rank_mod_2(const IntegerMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::uint64_t> m(rows * words, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (mpz_odd_p(a(i, j).get_mpz_t())) m[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    return rank_mod_2_packed(m, rows, cols);
}

unsigned long inv_mod(unsigned long a, unsigned long q) {
    long long t = 0, nt = 1, r = static_cast<long long>(q), nr = static_cast<long long>(a % q);
    while (nr != 0) {
        long long quo = r / nr;
        std::swap(t -= quo * nt, nt);
        std::swap(r -= quo * nr, nr);
    }
    return static_cast<unsigned long>(t < 0 ? t + static_cast<long long>(q) : t);
}

}  // namespace

std::size_t rank_mod_q(const IntegerMatrix& a, unsigned long q) {
    if (!is_prime(q)) throw input_error("rank_mod_q: modulus must be prime");
    if (q == 2) return rank_mod_2(a);
    if (q >= (1UL << 31)) throw input_error("rank_mod_q: modulus too large");
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<unsigned long> m(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class red = a(i, j) % static_cast<long>(q);
            long v = red.get_si();
            m[i * cols + j] = static_cast<unsigned long>(v < 0 ? v + static_cast<long>(q) : v);
        }
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols && rank < rows; ++j) {
        std::size_t piv = rank;
        while (piv < rows && m[piv * cols + j] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t t = 0; t < cols; ++t) std::swap(m[piv * cols + t], m[rank * cols + t]);
        const unsigned long inv = inv_mod(m[rank * cols + j], q);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            unsigned long f = m[i * cols + j];
            if (f == 0) continue;
            const unsigned long lam = (f * inv) % q;
            for (std::size_t t = j; t < cols; ++t) {
                unsigned long sub = (lam * m[rank * cols + t]) % q;
                m[i * cols + t] = (m[i * cols + t] + q - sub) % q;
            }
        }
        ++rank;
    }
    return rank;
}

unsigned long long binomial(unsigned long n, unsigned long r) {
    if (r > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, r);
    if (!b.fits_ulong_p()) throw internal_error("binomial overflows unsigned long");
    return b.get_ui();
}

std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t r) {
    std::vector<std::vector<std::size_t>> out;
    if (r > n) return out;
    std::vector<std::size_t> cur(r);
    for (std::size_t i = 0; i < r; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        // advance to the next combination in lexicographic order
        std::size_t i = r;
        bool advanced = false;
        while (i-- > 0) {
            if (cur[i] < i + n - r) {  // position i tops out at n - r + i
                ++cur[i];
                for (std::size_t j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

}  // namespace tbi
