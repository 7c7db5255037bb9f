#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace multiarr {

using ZMatrix = std::vector<std::vector<mpz_class>>;  // row major

/// Basis of the integer kernel lattice { x : M x = 0 }, one basis vector per
/// column of the result... returned as a list of vectors. The kernel of an
/// integer matrix is saturated, so the basis vectors are primitive.
std::vector<std::vector<mpz_class>> integer_kernel_basis(const ZMatrix& m);

/// Invariant factors d_1 | d_2 | ... of the Smith normal form of M
/// (nonzero entries only, ascending divisibility).
std::vector<mpz_class> smith_invariant_factors(const ZMatrix& m);

/// Smith data for quotient computations: L * M * R = D with L, R unimodular.
/// Returns the diagonal of D (padded with zeros to min(rows, cols)) and
/// L_inv, the inverse of the left transform, whose columns express the
/// adapted basis of the row space's ambient lattice.
struct SmithDecomposition {
  std::vector<mpz_class> diagonal;
  ZMatrix left_inverse;  // rows x rows
};
SmithDecomposition smith_with_left_inverse(const ZMatrix& m);

/// Solve B x = v exactly over the rationals and verify the solution is
/// integral; throws if the system is unsolvable or non-integral. B must have
/// full column rank.
std::vector<mpz_class> solve_integer_in_basis(const ZMatrix& b, const std::vector<mpz_class>& v);

/// Unimodular W with W^T a = e_1 for a primitive integer vector a, so that
/// substituting x -> W y turns the linear form a.x into the coordinate y_1.
ZMatrix unimodular_completion(const std::vector<mpz_class>& a);

}  // namespace multiarr
