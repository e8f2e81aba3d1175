#pragma once

#include "torus1p/homotopy.hpp"
#include "torus1p/int_matrix.hpp"

namespace torus1p {

/// Fiber-preserving map data on a T^2 bundle over S^1: the induced map fixes
/// the first generator, sends the second to a^{b12} b^{b22}, and sends the
/// base class to a^{c1} b^{c2} c0. The optional case label of the monodromy
/// classification does not enter the count.
struct T2BundleMapData {
  Int b12;
  Int b22;
  Int c1;
  Int c2;

  HomotopyDescriptor fiber_homotopy() const {
    IntMatrix phi(2, 2);
    phi(0, 0) = 1;
    phi(0, 1) = b12;
    phi(1, 0) = 0;
    phi(1, 1) = b22;
    return HomotopyDescriptor(phi, {c1, c2});
  }
};

/// Minimum number of fixed circles of the fiber-preserving map:
/// |c1 (b22 - 1) - c2 b12|.
inline Int bundle_t2_min_circles(const T2BundleMapData& d) {
  return boost::multiprecision::abs(d.c1 * (d.b22 - 1) - d.c2 * d.b12);
}

/// Circle-fiber case (total space T^2): the minimum number of circles in the
/// fixed set is |k|.
inline Int bundle_s1_min_circles(const Int& k) {
  return boost::multiprecision::abs(k);
}

} // namespace torus1p
