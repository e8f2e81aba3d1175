#pragma once

#include <cstddef>
#include <utility>

#include "torus1p/int_matrix.hpp"
#include "torus1p/normal_form.hpp"

namespace torus1p {

/// Input data of a torus homotopy: the matrix of the induced endomorphism
/// and the exponent vector of the loop traced by the basepoint.
struct HomotopyDescriptor {
  std::size_t n = 0;
  IntMatrix phi; // n x n
  IntVec c;      // length n

  HomotopyDescriptor() = default;
  HomotopyDescriptor(IntMatrix phi_, IntVec c_)
      : n(phi_.rows()), phi(std::move(phi_)), c(std::move(c_)) {
    validate();
  }

  void validate() const {
    if (n == 0) fail(errc::malformed_input, "dimension must be >= 1");
    if (phi.rows() != n || phi.cols() != n)
      fail(errc::dimension_mismatch, "phi must be n x n");
    if (c.size() != n)
      fail(errc::dimension_mismatch, "loop exponent vector must have length n");
  }

  IntMatrix phi_minus_identity() const {
    return phi - IntMatrix::identity(n);
  }

  /// [(phi - I) | c], the n x (n+1) matrix whose column lattice is the image
  /// of the difference homomorphism on the mapping torus.
  IntMatrix difference_lattice() const {
    return hcat(phi_minus_identity(), c);
  }
};

/// Base change by a unimodular P: phi -> P^{-1} phi P, c -> P^{-1} c.
inline HomotopyDescriptor conjugate(const HomotopyDescriptor& desc,
                                    const IntMatrix& p) {
  if (p.rows() != desc.n || p.cols() != desc.n)
    fail(errc::dimension_mismatch, "base change matrix must be n x n");
  IntMatrix pinv = unimodular_inverse(p);
  return HomotopyDescriptor(pinv * desc.phi * p, pinv * desc.c);
}

/// The reduced-basis shape: first column of phi equal to e1.
inline bool first_column_is_e1(const IntMatrix& phi) {
  if (!phi.square() || phi.rows() == 0) return false;
  for (std::size_t i = 0; i < phi.rows(); ++i)
    if (phi(i, 0) != (i == 0 ? 1 : 0)) return false;
  return true;
}

} // namespace torus1p
