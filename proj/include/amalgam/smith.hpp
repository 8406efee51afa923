#pragma once

#include <gmpxx.h>

#include <vector>

namespace amalgam {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix transpose(const IntMatrix& m);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix to_int_matrix(const std::vector<std::vector<long>>& m);
/// Fraction-free (Bareiss) determinant.
mpz_class determinant(IntMatrix m);

/// U·M·V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... and d_i >= 0.
/// The inverses of U and V are tracked alongside.
struct SmithDecomposition {
  IntMatrix D;
  IntMatrix U, V;
  IntMatrix U_inv, V_inv;

  /// Diagonal of D (length min(rows, cols)).
  std::vector<mpz_class> invariant_factors() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

}  // namespace amalgam
