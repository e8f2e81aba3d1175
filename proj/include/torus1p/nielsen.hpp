#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "torus1p/hochschild.hpp"
#include "torus1p/homotopy.hpp"
#include "torus1p/int_matrix.hpp"
#include "torus1p/normal_form.hpp"

namespace torus1p {

/// |det(phi - I)|, the classical Nielsen number of a torus map.
inline Int classical_nielsen(const IntMatrix& phi) {
  if (!phi.square()) fail(errc::non_square, "classical_nielsen needs phi square");
  return boost::multiprecision::abs(
      exact_determinant(phi - IntMatrix::identity(phi.rows())));
}

struct ReducedBasis {
  IntMatrix P;             // unimodular base change, first column in ker(phi-I)
  HomotopyDescriptor desc; // P^{-1} phi P (first column e1), P^{-1} c
};

/// Change basis so that phi fixes e1. Requires det(phi - I) = 0; the first
/// column of P is the canonical primitive kernel vector of (phi - I).
inline ReducedBasis reduce_basis(const HomotopyDescriptor& desc) {
  desc.validate();
  if (classical_nielsen(desc.phi) != 0)
    fail(errc::classical_nonzero, "reduce_basis needs det(phi - I) = 0");
  auto kernel = kernel_basis(desc.phi_minus_identity());
  if (kernel.empty()) fail(errc::internal, "singular matrix without kernel");
  IntMatrix p = unimodular_complete(kernel.front());
  return ReducedBasis{p, conjugate(desc, p)};
}

/// Columns 2..n of (phi' - I) followed by c'; defined only in reduced basis.
inline IntMatrix one_param_matrix(const HomotopyDescriptor& reduced) {
  reduced.validate();
  if (!first_column_is_e1(reduced.phi))
    fail(errc::not_reduced_basis, "one_param_matrix needs first column e1");
  const std::size_t n = reduced.n;
  IntMatrix diff = reduced.phi_minus_identity();
  IntMatrix a(n, n);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j - 1) = diff(i, j);
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = reduced.c[i];
  return a;
}

enum class OneParamCase { classical_nonzero, rank_deficient, full_rank };

constexpr const char* one_param_case_name(OneParamCase c) {
  switch (c) {
  case OneParamCase::classical_nonzero: return "CLASSICAL_NONZERO";
  case OneParamCase::rank_deficient: return "RANK_DEFICIENT";
  case OneParamCase::full_rank: return "FULL_RANK";
  }
  return "?";
}

/// N(F) plus the direction of the swept homology class. The sign of alpha is
/// genuinely ambiguous (it flips with the orientation convention), so only
/// the primitive direction is reported, flagged as such.
struct OneParamResult {
  Int N;
  std::optional<IntVec> alpha_direction;
  bool sign_ambiguous = false;
  OneParamCase which = OneParamCase::classical_nonzero;
};

inline OneParamResult one_param_nielsen(const HomotopyDescriptor& desc) {
  desc.validate();
  OneParamResult r;
  if (classical_nielsen(desc.phi) != 0) {
    r.N = 0;
    r.which = OneParamCase::classical_nonzero;
    return r;
  }
  ReducedBasis rb = reduce_basis(desc);
  IntMatrix a = one_param_matrix(rb.desc);
  Int det = exact_determinant(a);
  if (det == 0) {
    r.N = 0;
    r.which = OneParamCase::rank_deficient;
    return r;
  }
  r.N = boost::multiprecision::abs(det);
  r.which = OneParamCase::full_rank;
  r.alpha_direction = rb.P.column(0); // kernel direction in the original basis
  r.sign_ambiguous = true;
  return r;
}

/// L(F) = N(F) * (+-alpha): reported as magnitude, primitive direction and
/// the ambiguity flag; the zero class when N = 0.
struct LefschetzClass {
  Int magnitude;
  std::optional<IntVec> alpha_direction;
  bool sign_ambiguous = false;

  bool is_zero() const { return magnitude == 0; }
};

inline LefschetzClass lefschetz_class(const HomotopyDescriptor& desc) {
  OneParamResult r = one_param_nielsen(desc);
  return LefschetzClass{r.N, r.alpha_direction, r.sign_ambiguous};
}

/// Structure and representatives of Z^n / [(phi - I) | c]. When the quotient
/// is finite the representatives enumerate the box cut out by the Smith
/// diagonal, mapped back through U^{-1}.
struct SemiconjugacyClasses {
  CokernelStructure structure;
  bool finite = false;
  std::vector<GroupElement> representatives; // empty when infinite
};

inline SemiconjugacyClasses semiconjugacy_classes(const HomotopyDescriptor& desc) {
  desc.validate();
  IntMatrix b = desc.difference_lattice();
  SmithDecomposition d = smith_normal_form(b);
  SemiconjugacyClasses out;
  out.structure = cokernel_structure(b);
  out.finite = out.structure.finite();
  if (!out.finite) return out;

  IntMatrix uinv = unimodular_inverse(d.U);
  const std::size_t n = desc.n;
  IntVec y(n);
  bool done = false;
  while (!done) {
    out.representatives.emplace_back(uinv * y);
    done = true;
    for (std::size_t pos = n; pos-- > 0;) {
      y[pos] += 1;
      if (y[pos] < d.S(pos, pos)) {
        done = false;
        break;
      }
      y[pos] = 0;
    }
  }
  return out;
}

/// Basis of the semicentralizer: ker(phi - I); the same for every group
/// element.
inline std::vector<IntVec> semicentralizer(const HomotopyDescriptor& desc) {
  desc.validate();
  return kernel_basis(desc.phi_minus_identity());
}

/// gcd of the absolute values of the n maximal minors of [(phi - I) | c];
/// zero when they all vanish.
inline Int jezierski_D(const HomotopyDescriptor& desc) {
  desc.validate();
  IntMatrix b = desc.difference_lattice();
  Int g = 0;
  for (std::size_t j = 0; j <= desc.n; ++j) {
    Int minor = exact_determinant(delete_column(b, j));
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(minor));
  }
  return g;
}

/// Derived shortcut for N(F): product of invariant factors of [(phi - I)|c]
/// when its rank is n, else 0. Kept separate so tests can pit it against the
/// reduced-basis route.
inline Int invariant_factor_product(const HomotopyDescriptor& desc) {
  desc.validate();
  IntMatrix b = desc.difference_lattice();
  SmithDecomposition d = smith_normal_form(b);
  if (d.rank() < desc.n) return 0;
  Int prod = 1;
  for (std::size_t i = 0; i < desc.n; ++i) prod *= d.S(i, i);
  return prod;
}

} // namespace torus1p
