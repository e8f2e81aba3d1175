#pragma once

#include <cstdint>
#include <random>

#include "torus1p/int_matrix.hpp"

namespace testutil {

using torus1p::Int;
using torus1p::IntMatrix;
using torus1p::IntVec;

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                               std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline IntVec random_vector(std::mt19937_64& rng, std::size_t n, int lo,
                            int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntVec v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

// Product of random elementary operations; entries stay small.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix p = IntMatrix::identity(n);
  if (n < 2) return p;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> kind(0, 3);
  for (std::size_t step = 0; step < 2 * n * n; ++step) {
    std::size_t a = idx(rng), b = idx(rng);
    switch (kind(rng)) {
    case 0:
      if (a != b) p.add_row(a, b, Int(coef(rng)));
      break;
    case 1:
      if (a != b) p.add_col(a, b, Int(coef(rng)));
      break;
    case 2:
      p.swap_rows(a, b);
      break;
    default:
      p.negate_row(a);
      break;
    }
  }
  return p;
}

// Independent determinant oracle: recursive cofactor expansion.
inline Int cofactor_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t out = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        sub(i - 1, out++) = m(i, k);
      }
    }
    Int term = m(0, j) * cofactor_determinant(sub);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

} // namespace testutil
