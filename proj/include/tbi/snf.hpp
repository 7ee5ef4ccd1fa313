#pragma once
#include <optional>

#include "tbi/abelian.hpp"
#include "tbi/matrix.hpp"

namespace tbi {

// Smith normal form  u * a * v = d  with u, v unimodular and d diagonal with
// d(0,0) | d(1,1) | ... >= 0.
struct SmithDecomposition {
    IntegerMatrix u, d, v;
};

SmithDecomposition snf(const IntegerMatrix& a);

// Diagonal of the Smith form only (no transforms); cheaper and the entry
// growth is identical.
IntegerMatrix snf_diagonal(const IntegerMatrix& a);

// Nonzero diagonal entries of the Smith form, in chain order (1s included).
std::vector<mpz_class> elementary_divisors(const IntegerMatrix& a);

// Rank over Z (= rank over Q).
std::size_t rank(const IntegerMatrix& a);

// Z^rows / column-span(a).
AbelianGroupPresentation cokernel(const IntegerMatrix& a);

// Columns form a basis of ker(a) as a subgroup of Z^cols.  The basis spans a
// saturated (pure) subgroup, so it is a direct summand basis.
IntegerMatrix kernel_basis(const IntegerMatrix& a);

// ker(a) / im(b); requires a * b = 0.  Computed by expressing the columns of
// b in kernel_basis(a) coordinates and presenting the cokernel; beyond a size
// threshold an equivalent elementary-divisor route is used (the two agree,
// see the randomized property tests).
AbelianGroupPresentation subquotient(const IntegerMatrix& a, const IntegerMatrix& b);

// Solve a * x = b over the integers (all columns at once); nullopt if some
// column has no integral solution.
std::optional<IntegerMatrix> solve_integer(const IntegerMatrix& a, const IntegerMatrix& b);

// Inverse of a unimodular square matrix (|det| = 1 required).
IntegerMatrix inverse_unimodular(const IntegerMatrix& a);

}  // namespace tbi
