#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "torus1p/homotopy.hpp"
#include "torus1p/int_matrix.hpp"
#include "torus1p/normal_form.hpp"

namespace torus1p {

using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;

/// Fractional part in [0, 1).
inline Rat frac01(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  Int q = num / den;
  if (num - q * den < 0) q -= 1; // floor
  return r - Rat(q);
}

inline bool is_integer(const Rat& r) {
  return boost::multiprecision::denominator(r) == 1;
}

/// The homotopy F(x,t) = M x + t c + epsilon on T^n, glued over t in S^1
/// (legal because F(x,0) and F(x,1) differ by the deck translation c).
/// epsilon is stored reduced mod Z^n.
struct LinearHomotopy {
  HomotopyDescriptor desc;
  RatVec epsilon;

  LinearHomotopy(HomotopyDescriptor d, RatVec eps)
      : desc(std::move(d)), epsilon(std::move(eps)) {
    if (epsilon.size() != desc.n)
      fail(errc::dimension_mismatch, "epsilon must have length n");
    for (auto& e : epsilon) e = frac01(e);
  }
};

enum class FixedSetMethod { exact, grid };

constexpr const char* fixed_set_method_name(FixedSetMethod m) {
  return m == FixedSetMethod::exact ? "EXACT" : "GRID";
}

struct FixedSetReport {
  std::size_t component_count = 0;
  FixedSetMethod method = FixedSetMethod::exact;
  std::vector<RatVec> samples_exact;             // (x_1..x_n, t), exact
  std::vector<std::vector<double>> samples_grid; // grid points, one per part
};

namespace detail {

// U * r for integer U and rational r, exact.
inline RatVec apply_int(const IntMatrix& u, const RatVec& r) {
  RatVec out(u.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j)
      if (u(i, j) != 0) out[i] += Rat(u(i, j)) * r[j];
  return out;
}

// Solvability of  Mat z = target (mod Z^rows)  over the reals, through the
// SNF: only the zero rows of S obstruct, and they demand integrality.
inline bool rational_in_image(const SmithDecomposition& d, const RatVec& target) {
  RatVec w = apply_int(d.U, target);
  const std::size_t rnk = d.rank();
  for (std::size_t i = rnk; i < w.size(); ++i)
    if (!is_integer(w[i])) return false;
  return true;
}

inline Int max_abs_row_sum(const IntMatrix& b) {
  Int worst = 0;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Int row_sum = 0;
    for (std::size_t j = 0; j < b.cols(); ++j)
      row_sum += boost::multiprecision::abs(b(i, j));
    if (row_sum > worst) worst = row_sum;
  }
  return worst;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = std::uint32_t(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]]; // path halving
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b < a ? a : b] = b < a ? b : a;
  }
};

} // namespace detail

/// Connected components of {(x,[t]) : (M - I) x + t c + epsilon = 0 mod Z^n}
/// on T^n x S^1. The solution set is a fiber of the torus homomorphism
/// induced by B = [(M-I) | c]: empty unless -epsilon lies on the image
/// subtorus (a rational membership test), otherwise a disjoint union of
/// (product of the nonzero invariant factors of B) parallel subtori.
inline FixedSetReport fixed_set_exact(const LinearHomotopy& h) {
  const std::size_t n = h.desc.n;
  IntMatrix b = h.desc.difference_lattice();
  SmithDecomposition d = smith_normal_form(b);

  RatVec target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = -h.epsilon[i];

  FixedSetReport report;
  report.method = FixedSetMethod::exact;
  if (!detail::rational_in_image(d, target)) return report; // count 0

  const std::size_t rnk = d.rank();
  Int count = 1;
  for (std::size_t i = 0; i < rnk; ++i) count *= d.S(i, i);
  if (count > Int(1) << 40)
    fail(errc::internal, "component count exceeds addressable range");
  report.component_count = count.convert_to<std::size_t>();

  // particular solution in y-coordinates (z = V y), free coordinates zero
  RatVec w = detail::apply_int(d.U, target);
  RatVec ybase(n + 1);
  for (std::size_t i = 0; i < rnk; ++i) ybase[i] = w[i] / Rat(d.S(i, i));

  // one representative per component: shift y_i by k_i / d_i
  IntVec k(rnk);
  bool done = false;
  while (!done) {
    RatVec y = ybase;
    for (std::size_t i = 0; i < rnk; ++i) y[i] += Rat(k[i]) / Rat(d.S(i, i));
    RatVec z = detail::apply_int(d.V, y);
    for (auto& zi : z) zi = frac01(zi);
    report.samples_exact.push_back(std::move(z));
    done = true;
    for (std::size_t pos = rnk; pos-- > 0;) {
      k[pos] += 1;
      if (k[pos] < d.S(pos, pos)) {
        done = false;
        break;
      }
      k[pos] = 0;
    }
  }
  return report;
}

/// Recommended marking tolerance: 1.5 grid steps scaled by how fast the
/// residual can change across one cell.
inline double default_grid_tol(const LinearHomotopy& h, std::size_t resolution) {
  Int worst = detail::max_abs_row_sum(h.desc.difference_lattice());
  return 1.5 / double(resolution) * (1.0 + worst.convert_to<double>());
}

/// Brute-force component count: sample the (n+1)-dimensional grid on
/// T^n x S^1, mark points whose residual lies within tol of the integer
/// lattice (max-norm on the torus), label marked points with wrap-around
/// axis-aligned union-find.
inline FixedSetReport fixed_set_grid(const LinearHomotopy& h,
                                     std::size_t resolution, double tol) {
  const std::size_t n = h.desc.n;
  if (n > 3)
    fail(errc::unsupported_dimension, "grid oracle supports n <= 3 only");
  if (resolution < 16)
    fail(errc::resolution_too_coarse, "need at least 16 samples per axis");

  IntMatrix b = h.desc.difference_lattice();
  Int worst = detail::max_abs_row_sum(b);
  // A residual sheet moves up to (1 + rowsum)/2 cells between adjacent grid
  // planes; below this threshold it can slip through unmarked.
  if (tol * double(resolution) < 0.5 * (1.0 + worst.convert_to<double>()))
    fail(errc::resolution_too_coarse,
         "tol * resolution too small for the matrix entries");

  const std::size_t dims = n + 1;
  const std::size_t res = resolution;
  double cells_d = 1;
  for (std::size_t a = 0; a < dims; ++a) cells_d *= double(res);
  if (cells_d > double(std::size_t(1) << 27))
    fail(errc::resolution_too_coarse, "grid exceeds desk scale");
  std::size_t cells = 1;
  for (std::size_t a = 0; a < dims; ++a) cells *= res;

  // residual of row r depends only on (sum_a B[r][a] idx_a) mod res
  std::vector<std::vector<std::int64_t>> step(n, std::vector<std::int64_t>(dims));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t a = 0; a < dims; ++a) {
      Int m = b(r, a) % Int(res);
      if (m < 0) m += Int(res);
      step[r][a] = m.convert_to<std::int64_t>();
    }
  std::vector<std::vector<char>> within(n, std::vector<char>(res));
  for (std::size_t r = 0; r < n; ++r) {
    double eps = h.epsilon[r].convert_to<double>();
    for (std::size_t s = 0; s < res; ++s) {
      double v = double(s) / double(res) + eps;
      v -= std::floor(v);
      double dist = std::min(v, 1.0 - v);
      within[r][s] = dist < tol ? 1 : 0;
    }
  }

  std::vector<std::size_t> strides(dims);
  strides[dims - 1] = 1;
  for (std::size_t a = dims - 1; a-- > 0;) strides[a] = strides[a + 1] * res;

  std::vector<bool> marked(cells, false);
  std::vector<std::size_t> marked_cells;
  std::vector<std::int64_t> residue(n, 0);
  auto walk = [&](auto&& self, std::size_t axis, std::size_t base) -> void {
    if (axis + 1 == dims) {
      std::vector<std::int64_t> acc = residue;
      for (std::size_t s = 0; s < res; ++s) {
        bool hit = true;
        for (std::size_t r = 0; r < n; ++r)
          if (!within[r][std::size_t(acc[r])]) {
            hit = false;
            break;
          }
        if (hit) {
          marked[base + s] = true;
          marked_cells.push_back(base + s);
        }
        for (std::size_t r = 0; r < n; ++r) {
          acc[r] += step[r][axis];
          if (acc[r] >= std::int64_t(res)) acc[r] -= std::int64_t(res);
        }
      }
      return;
    }
    std::vector<std::int64_t> saved = residue;
    for (std::size_t s = 0; s < res; ++s) {
      self(self, axis + 1, base + s * strides[axis]);
      for (std::size_t r = 0; r < n; ++r) {
        residue[r] += step[r][axis];
        if (residue[r] >= std::int64_t(res)) residue[r] -= std::int64_t(res);
      }
    }
    residue = saved;
  };
  walk(walk, 0, 0);

  FixedSetReport report;
  report.method = FixedSetMethod::grid;
  if (marked_cells.empty()) {
    if (fixed_set_exact(h).component_count > 0)
      fail(errc::resolution_too_coarse,
           "marked set empty but the exact count is positive");
    return report;
  }

  std::unordered_map<std::size_t, std::uint32_t> dense;
  dense.reserve(marked_cells.size() * 2);
  for (std::size_t i = 0; i < marked_cells.size(); ++i)
    dense.emplace(marked_cells[i], std::uint32_t(i));

  detail::UnionFind uf(marked_cells.size());
  std::vector<std::size_t> idx(dims);
  for (std::size_t i = 0; i < marked_cells.size(); ++i) {
    std::size_t cell = marked_cells[i];
    std::size_t rem = cell;
    for (std::size_t a = 0; a < dims; ++a) {
      idx[a] = rem / strides[a];
      rem %= strides[a];
    }
    for (std::size_t a = 0; a < dims; ++a) {
      std::size_t next = (idx[a] + 1) % res;
      std::size_t neighbor = cell - idx[a] * strides[a] + next * strides[a];
      if (marked[neighbor]) uf.unite(i, dense.at(neighbor));
    }
  }

  std::unordered_map<std::uint32_t, std::size_t> roots; // root -> first cell
  for (std::size_t i = 0; i < marked_cells.size(); ++i) {
    std::uint32_t root = uf.find(std::uint32_t(i));
    roots.emplace(root, marked_cells[i]); // keeps the first (scan order)
  }
  report.component_count = roots.size();
  std::vector<std::size_t> firsts;
  firsts.reserve(roots.size());
  for (const auto& [root, cell] : roots) firsts.push_back(cell);
  std::sort(firsts.begin(), firsts.end());
  for (std::size_t cell : firsts) {
    std::vector<double> point(dims);
    std::size_t rem = cell;
    for (std::size_t a = 0; a < dims; ++a) {
      point[a] = double(rem / strides[a]) / double(res);
      rem %= strides[a];
    }
    report.samples_grid.push_back(std::move(point));
  }
  return report;
}

/// Deterministic generic offset: (1/p, 1/p^2, ..., 1/p^n) for the first
/// admissible prime p after skipping `seed` of them. Admissible: p exceeds
/// twice the largest matrix entry and is coprime to every invariant factor
/// of [(M-I) | c]. The returned offset is verified to kill the t = 0, 1
/// slices (possible exactly when det(M-I) = 0) and, in the rank-deficient
/// case, to miss the image subtorus; failing primes are skipped.
inline RatVec choose_generic_epsilon(const HomotopyDescriptor& desc,
                                     std::uint64_t seed) {
  desc.validate();
  const std::size_t n = desc.n;
  IntMatrix b = desc.difference_lattice();
  SmithDecomposition snf_b = smith_normal_form(b);
  SmithDecomposition snf_diff = smith_normal_form(desc.phi_minus_identity());
  IntVec factors = snf_b.nonzero_diagonal();

  Int maxent = 0;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Int a = boost::multiprecision::abs(b(i, j));
      if (a > maxent) maxent = a;
    }

  const bool want_slices = snf_diff.rank() < n;  // det(M - I) = 0
  const bool want_offimage = snf_b.rank() < n;   // rank(B) < n

  auto is_prime = [](std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
      if (p % q == 0) return false;
    return true;
  };

  std::uint64_t skipped = 0;
  for (std::uint64_t p = 2;; ++p) {
    if (!is_prime(p)) continue;
    if (Int(2) * maxent >= Int(p)) continue;
    bool coprime = true;
    for (const Int& f : factors)
      if (f % Int(p) == 0) {
        coprime = false;
        break;
      }
    if (!coprime) continue;
    if (skipped < seed) {
      ++skipped;
      continue;
    }
    RatVec eps(n);
    Rat power = 1;
    for (std::size_t i = 0; i < n; ++i) {
      power /= Rat(p);
      eps[i] = power;
    }
    RatVec neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -eps[i];
    if (want_slices && detail::rational_in_image(snf_diff, neg)) continue;
    if (want_offimage && detail::rational_in_image(snf_b, neg)) continue;
    return eps;
  }
}

} // namespace torus1p
