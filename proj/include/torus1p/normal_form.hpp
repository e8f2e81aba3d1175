#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torus1p/int_matrix.hpp"

namespace torus1p {

/// U * M * V = S with U, V unimodular and S diagonal, d_i >= 0, d_i | d_{i+1}.
struct SmithDecomposition {
  IntMatrix U; // rows x rows
  IntMatrix S; // rows x cols
  IntMatrix V; // cols x cols

  std::size_t rank() const {
    std::size_t r = 0;
    const std::size_t t = std::min(S.rows(), S.cols());
    while (r < t && S(r, r) != 0) ++r;
    return r;
  }

  /// Nonzero diagonal entries, in divisor-chain order.
  IntVec nonzero_diagonal() const {
    IntVec d;
    const std::size_t t = std::min(S.rows(), S.cols());
    for (std::size_t i = 0; i < t && S(i, i) != 0; ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

// Scan the trailing submatrix for the nonzero entry of minimal absolute
// value; row-major order breaks ties, which keeps the decomposition
// deterministic.
inline bool find_pivot(const IntMatrix& s, std::size_t t, std::size_t& pi,
                       std::size_t& pj) {
  bool found = false;
  Int best = 0;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      Int a = boost::multiprecision::abs(s(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

inline bool is_lone(const IntMatrix& s, std::size_t t) {
  for (std::size_t i = t + 1; i < s.rows(); ++i)
    if (s(i, t) != 0) return false;
  for (std::size_t j = t + 1; j < s.cols(); ++j)
    if (s(t, j) != 0) return false;
  return true;
}

} // namespace detail

/// Smith normal form with transforms. Minimal-absolute-value pivoting limits
/// coefficient growth; all arithmetic is exact.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithDecomposition d;
  d.U = IntMatrix::identity(m.rows());
  d.V = IntMatrix::identity(m.cols());
  d.S = m;
  IntMatrix& s = d.S;
  const std::size_t steps = std::min(m.rows(), m.cols());

  // Clear row t and column t beyond the pivot. The pivot magnitude strictly
  // decreases whenever a remainder survives a pass, so this terminates.
  auto eliminate = [&](std::size_t t) {
    while (!detail::is_lone(s, t)) {
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Int q = s(i, t) / s(t, t);
        if (q != 0) {
          s.add_row(i, t, -q);
          d.U.add_row(i, t, -q);
        }
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Int q = s(t, j) / s(t, t);
        if (q != 0) {
          s.add_col(j, t, -q);
          d.V.add_col(j, t, -q);
        }
      }
      std::size_t ni = t, nj = t;
      detail::find_pivot(s, t, ni, nj);
      if (ni != t || nj != t) {
        s.swap_rows(t, ni);
        d.U.swap_rows(t, ni);
        s.swap_cols(t, nj);
        d.V.swap_cols(t, nj);
      }
    }
  };

  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pi = t, pj = t;
    if (!detail::find_pivot(s, t, pi, pj)) break; // trailing block is zero
    s.swap_rows(t, pi);
    d.U.swap_rows(t, pi);
    s.swap_cols(t, pj);
    d.V.swap_cols(t, pj);
    eliminate(t);

    // Divisor-chain repair: fold a non-divisible entry into row t and redo.
    bool fixed;
    do {
      fixed = true;
      for (std::size_t i = t + 1; i < s.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < s.cols() && fixed; ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.add_row(t, i, 1);
            d.U.add_row(t, i, 1);
            fixed = false;
          }
      if (!fixed) eliminate(t);
    } while (!fixed);

    if (s(t, t) < 0) {
      s.negate_row(t);
      d.U.negate_row(t);
    }
  }
  return d;
}

inline std::size_t rank(const IntMatrix& m) {
  return smith_normal_form(m).rank();
}

/// Structure of Z^rows / (column lattice of M). Invariant factors exclude
/// 1-entries; order is the factor product when the quotient is finite.
struct CokernelStructure {
  IntVec invariant_factors;
  std::size_t free_rank = 0;
  std::optional<Int> order; // nullopt = infinite

  bool finite() const { return order.has_value(); }
};

inline CokernelStructure cokernel_structure(const IntMatrix& m) {
  SmithDecomposition d = smith_normal_form(m);
  CokernelStructure c;
  const std::size_t r = d.rank();
  c.free_rank = m.rows() - r;
  for (std::size_t i = 0; i < r; ++i)
    if (d.S(i, i) > 1) c.invariant_factors.push_back(d.S(i, i));
  if (c.free_rank == 0) {
    Int prod = 1;
    for (const Int& f : c.invariant_factors) prod *= f;
    c.order = prod;
  }
  return c;
}

/// Canonical row Hermite form of the lattice spanned by the rows of K:
/// echelon shape, positive pivots, entries above a pivot reduced into
/// [0, pivot). Zero rows are dropped.
inline IntMatrix hermite_rows(IntMatrix k) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < k.cols() && r < k.rows(); ++col) {
    // gcd cascade in this column below row r
    while (true) {
      std::size_t best = k.rows();
      Int besta = 0;
      for (std::size_t i = r; i < k.rows(); ++i) {
        if (k(i, col) == 0) continue;
        Int a = boost::multiprecision::abs(k(i, col));
        if (best == k.rows() || a < besta) {
          best = i;
          besta = a;
        }
      }
      if (best == k.rows()) break; // column clear
      k.swap_rows(r, best);
      bool clear = true;
      for (std::size_t i = r + 1; i < k.rows(); ++i) {
        if (k(i, col) == 0) continue;
        Int q = k(i, col) / k(r, col);
        k.add_row(i, r, -q);
        if (k(i, col) != 0) clear = false;
      }
      if (clear) break;
    }
    if (k(r, col) == 0) continue;
    if (k(r, col) < 0) k.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      // floor division puts the entry above the pivot into [0, pivot)
      Int q = k(i, col) / k(r, col);
      if (k(i, col) - q * k(r, col) < 0) q -= 1;
      if (q != 0) k.add_row(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, k.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) out(i, j) = k(i, j);
  return out;
}

/// Z-basis of {v : Mv = 0}, canonicalized: each vector primitive, first
/// nonzero coordinate positive, echelon (descending lexicographic) order.
inline std::vector<IntVec> kernel_basis(const IntMatrix& m) {
  SmithDecomposition d = smith_normal_form(m);
  const std::size_t r = d.rank();
  const std::size_t k = m.cols() - r;
  IntMatrix gens(k, m.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) gens(i, j) = d.V(j, r + i);
  IntMatrix h = hermite_rows(std::move(gens));
  std::vector<IntVec> basis;
  basis.reserve(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) basis.push_back(h.row(i));
  return basis;
}

/// Integer inverse of a unimodular matrix via adjugate / det. det must be
/// +-1; anything else means the caller broke the unimodularity contract.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (!u.square()) fail(errc::non_square, "inverse of non-square matrix");
  const std::size_t n = u.rows();
  Int det = exact_determinant(u);
  if (det != 1 && det != -1)
    fail(errc::internal, "unimodular_inverse: |det| != 1");
  IntMatrix inv(n, n);
  if (n == 0) return inv;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_ji (adjugate is the transposed cofactor matrix)
      IntMatrix sub(n - 1, n - 1);
      for (std::size_t a = 0, ai = 0; a < n; ++a) {
        if (a == j) continue;
        for (std::size_t b = 0, bj = 0; b < n; ++b) {
          if (b == i) continue;
          sub(ai, bj++) = u(a, b);
        }
        ++ai;
      }
      Int cof = exact_determinant(sub);
      if ((i + j) % 2 == 1) cof = -cof;
      inv(i, j) = det == 1 ? cof : -cof;
    }
  return inv;
}

/// Extend a primitive vector w to a basis of Z^n: returns P with first
/// column w and |det P| = 1. Deterministic (min-abs pivot reduction of w).
inline IntMatrix unimodular_complete(const IntVec& w) {
  const std::size_t n = w.size();
  if (is_zero(w)) fail(errc::zero_vector, "cannot complete the zero vector");
  if (gcd_of(w) != 1)
    fail(errc::non_primitive_vector, "vector is not primitive");

  // Row-reduce w to e1, accumulating the operations in u; then P = u^{-1}.
  IntVec v = w;
  IntMatrix u = IntMatrix::identity(n);
  while (true) {
    std::size_t best = n;
    Int besta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      Int a = boost::multiprecision::abs(v[i]);
      if (best == n || a < besta) {
        best = i;
        besta = a;
      }
    }
    if (best != 0) {
      std::swap(v[0], v[best]);
      u.swap_rows(0, best);
    }
    bool clear = true;
    for (std::size_t i = 1; i < n; ++i) {
      if (v[i] == 0) continue;
      Int q = v[i] / v[0];
      v[i] -= q * v[0];
      u.add_row(i, 0, -q);
      if (v[i] != 0) clear = false;
    }
    if (clear) break;
  }
  if (v[0] < 0) {
    v[0] = -v[0];
    u.negate_row(0);
  }
  if (v[0] != 1) fail(errc::internal, "primitive vector did not reduce to e1");
  return unimodular_inverse(u);
}

/// true iff v lies in the column lattice of B (solved through the SNF).
inline bool lattice_contains(const IntMatrix& b, const IntVec& v) {
  if (v.size() != b.rows())
    fail(errc::dimension_mismatch, "lattice membership: length mismatch");
  SmithDecomposition d = smith_normal_form(b);
  IntVec w = d.U * v;
  const std::size_t t = std::min(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Int di = i < t ? d.S(i, i) : Int(0);
    if (di == 0) {
      if (w[i] != 0) return false;
    } else if (w[i] % di != 0) {
      return false;
    }
  }
  return true;
}

} // namespace torus1p
