#pragma once
#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbi {

// Bad user-supplied data (the CLI maps this to exit code 2).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A broken internal invariant; also exit code 2 at the CLI, since exit 1 is
// reserved for honest verification failures.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Dense row-major matrix over arbitrary-precision integers.  Matrices with
// zero rows and/or zero columns are legal everywhere and behave as the
// corresponding maps between free modules of those ranks.
class IntegerMatrix {
  public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntegerMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_identity() const;
    bool is_square() const { return rows_ == cols_; }

    IntegerMatrix transpose() const;
    IntegerMatrix submatrix(const std::vector<std::size_t>& ri,
                            const std::vector<std::size_t>& ci) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);

    std::string to_string() const;
    // Stable byte serialization, usable as a cache key.
    std::string key() const;

  private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> e_;
};

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator-(const IntegerMatrix& a);
IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator*(const mpz_class& s, const IntegerMatrix& a);

// a^k for k >= 0 (a square).
IntegerMatrix mat_pow(const IntegerMatrix& a, unsigned long k);

// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class determinant(const IntegerMatrix& a);

mpz_class trace(const IntegerMatrix& a);

// Traces of every exterior power: entry j is tr Lambda^j(a), j = 0..n (the
// elementary symmetric functions of the eigenvalues).  Faddeev-LeVerrier, so
// no minors are enumerated.
std::vector<mpz_class> exterior_traces(const IntegerMatrix& a);

// Kronecker product; the pair index (i1, i2) maps to i1 * dim2 + i2, i.e.
// the left factor is the major index.
IntegerMatrix kron_tensor(const IntegerMatrix& a, const IntegerMatrix& b);

// Matrix of r x r minors in lexicographic order of the index subsets: entry
// (I, J) is det a[I, J].  Functorial: ext(a*b, r) == ext(a, r) * ext(b, r).
IntegerMatrix exterior_power_matrix(const IntegerMatrix& a, std::size_t r);

// Rank over F_q; q must be prime.
std::size_t rank_mod_q(const IntegerMatrix& a, unsigned long q);

// Rank over F_2 of a packed row-major bit matrix with ceil(cols/64) words
// per row; destroys the buffer.  Lets callers assemble large sparse mod-2
// matrices (tensor blocks) without materializing integer entries.
std::size_t rank_mod_2_packed(std::vector<std::uint64_t>& bits, std::size_t rows,
                              std::size_t cols);

// Serial reference kernels, kept for tests and benchmarks; the public
// operations above use OpenMP when the work is large enough.
namespace serial {
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix kron_tensor(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix exterior_power_matrix(const IntegerMatrix& a, std::size_t r);
}  // namespace serial

bool is_prime(unsigned long q);
unsigned long long binomial(unsigned long n, unsigned long r);
// All r-element subsets of {0..n-1}, ascending inside each subset, subsets
// in lexicographic order.
std::vector<std::vector<std::size_t>> lex_subsets(std::size_t n, std::size_t r);

}  // namespace tbi
