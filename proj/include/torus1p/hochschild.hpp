#pragma once

#include <cstddef>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "torus1p/homotopy.hpp"
#include "torus1p/int_matrix.hpp"
#include "torus1p/normal_form.hpp"

namespace torus1p {

/// Element u_1^{k_1} ... u_n^{k_n} of the free abelian group, stored as its
/// exponent vector. The group law is exponent addition.
struct GroupElement {
  IntVec exp;

  GroupElement() = default;
  explicit GroupElement(IntVec e) : exp(std::move(e)) {}

  static GroupElement zero(std::size_t n) { return GroupElement(IntVec(n)); }
  static GroupElement unit(std::size_t n, std::size_t axis, Int power = 1) {
    IntVec e(n);
    e[axis] = std::move(power);
    return GroupElement(std::move(e));
  }

  std::size_t dim() const { return exp.size(); }
  bool is_identity() const { return is_zero(exp); }

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    return GroupElement(a.exp + b.exp);
  }
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) {
    return GroupElement(a.exp - b.exp);
  }
  GroupElement operator-() const {
    IntVec e(exp.size());
    for (std::size_t i = 0; i < exp.size(); ++i) e[i] = -exp[i];
    return GroupElement(std::move(e));
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.exp == b.exp;
  }
  friend bool operator!=(const GroupElement& a, const GroupElement& b) {
    return !(a == b);
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.exp.size() != b.exp.size()) return a.exp.size() < b.exp.size();
    for (std::size_t i = 0; i < a.exp.size(); ++i) {
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i];
    }
    return false;
  }
};

/// phi . g, the endomorphism acting on exponent vectors.
inline GroupElement apply_phi(const IntMatrix& phi, const GroupElement& g) {
  if (!phi.square() || phi.rows() != g.dim())
    fail(errc::dimension_mismatch, "apply_phi: shape mismatch");
  return GroupElement(phi * g.exp);
}

/// Element of the group ring ZG: a finite Z-linear combination of group
/// elements. Zero coefficients are never stored.
struct RingElement {
  std::map<GroupElement, Int> terms;

  RingElement() = default;
  explicit RingElement(const GroupElement& g) { terms.emplace(g, 1); }

  bool is_zero() const { return terms.empty(); }

  void add(const GroupElement& g, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms.emplace(g, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.terms == b.terms;
  }
};

inline RingElement operator+(const RingElement& a, const RingElement& b) {
  RingElement r = a;
  for (const auto& [g, c] : b.terms) r.add(g, c);
  return r;
}

/// 1-chains: combinations of B (x) D with the twisting matrix carried along.
/// Like terms are combined eagerly so equality is plain term comparison.
struct Chain1 {
  IntMatrix phi;
  std::map<std::pair<GroupElement, GroupElement>, Int> terms;

  Chain1() = default;
  explicit Chain1(IntMatrix phi_) : phi(std::move(phi_)) {}

  std::size_t dim() const { return phi.rows(); }
  bool is_zero() const { return terms.empty(); }

  void add(const Int& coeff, const GroupElement& b, const GroupElement& d) {
    if (coeff == 0) return;
    if (b.dim() != dim() || d.dim() != dim())
      fail(errc::dimension_mismatch, "chain term has wrong dimension");
    auto key = std::make_pair(b, d);
    auto [it, inserted] = terms.emplace(std::move(key), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  friend bool operator==(const Chain1& a, const Chain1& b) {
    return a.phi == b.phi && a.terms == b.terms;
  }
};

/// 2-chains B (x) D (x) E.
struct Chain2 {
  IntMatrix phi;
  std::map<std::tuple<GroupElement, GroupElement, GroupElement>, Int> terms;

  Chain2() = default;
  explicit Chain2(IntMatrix phi_) : phi(std::move(phi_)) {}

  std::size_t dim() const { return phi.rows(); }
  bool is_zero() const { return terms.empty(); }

  void add(const Int& coeff, const GroupElement& b, const GroupElement& d,
           const GroupElement& e) {
    if (coeff == 0) return;
    if (b.dim() != dim() || d.dim() != dim() || e.dim() != dim())
      fail(errc::dimension_mismatch, "chain term has wrong dimension");
    auto key = std::make_tuple(b, d, e);
    auto [it, inserted] = terms.emplace(std::move(key), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  friend bool operator==(const Chain2& a, const Chain2& b) {
    return a.phi == b.phi && a.terms == b.terms;
  }
};

/// d1(B (x) D) = D.phi(B) - B.D, extended linearly. The twisted right action
/// turns the leading factor into phi(B).
inline RingElement boundary_d1(const Chain1& ch) {
  RingElement out;
  for (const auto& [bd, coeff] : ch.terms) {
    const auto& [b, d] = bd;
    out.add(d + apply_phi(ch.phi, b), coeff);
    out.add(b + d, -coeff);
  }
  return out;
}

/// d2(B (x) D (x) E) = D (x) E.phi(B) - BD (x) E + B (x) DE.
inline Chain1 boundary_d2(const Chain2& ch) {
  Chain1 out(ch.phi);
  for (const auto& [bde, coeff] : ch.terms) {
    const auto& [b, d, e] = bde;
    out.add(coeff, d, e + apply_phi(ch.phi, b));
    out.add(-coeff, b + d, e);
    out.add(coeff, b, d + e);
  }
  return out;
}

using RingMatrix = std::vector<std::vector<RingElement>>;

/// sign * sum_{i,j} P[i][j] (x) Q[j][i], expanded bilinearly over group-ring
/// terms. P must be r x s and Q s x r.
inline Chain1 tensor_trace(const IntMatrix& phi, const RingMatrix& p,
                           const RingMatrix& q, int sign) {
  if (sign != 1 && sign != -1)
    fail(errc::malformed_input, "tensor_trace sign must be +1 or -1");
  const std::size_t r = p.size();
  const std::size_t s = r == 0 ? q.size() : p[0].size();
  for (const auto& row : p)
    if (row.size() != s) fail(errc::dimension_mismatch, "P is ragged");
  if (q.size() != s)
    fail(errc::dimension_mismatch, "trace needs Q rows == P cols");
  for (const auto& row : q)
    if (row.size() != r) fail(errc::dimension_mismatch, "Q must be s x r");

  Chain1 out(phi);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (const auto& [g, a] : p[i][j].terms)
        for (const auto& [h, b] : q[j][i].terms) out.add(Int(sign) * a * b, g, h);
  return out;
}

/// The group element B.D marking the semiconjugacy class of a tensor term.
inline GroupElement marker(const GroupElement& b, const GroupElement& d) {
  return b + d;
}

/// g1 ~ g2 iff g2 - g1 lies in the column lattice of [(phi - I) | c].
inline bool same_class(const GroupElement& g1, const GroupElement& g2,
                       const HomotopyDescriptor& desc) {
  if (g1.dim() != desc.n || g2.dim() != desc.n)
    fail(errc::dimension_mismatch, "same_class: wrong dimension");
  return lattice_contains(desc.difference_lattice(), (g2 - g1).exp);
}

/// Split a chain along semiconjugacy classes of its markers. Keys are the
/// lexicographically minimal marker encountered in each class.
inline std::map<GroupElement, Chain1>
decompose_components(const Chain1& ch, const HomotopyDescriptor& desc) {
  if (ch.dim() != desc.n)
    fail(errc::dimension_mismatch, "decompose_components: wrong dimension");
  std::vector<std::pair<GroupElement, Chain1>> parts;
  for (const auto& [bd, coeff] : ch.terms) {
    GroupElement m = marker(bd.first, bd.second);
    bool placed = false;
    for (auto& [rep, part] : parts) {
      if (same_class(m, rep, desc)) {
        part.add(coeff, bd.first, bd.second);
        if (m < rep) rep = m;
        placed = true;
        break;
      }
    }
    if (!placed) {
      Chain1 part(ch.phi);
      part.add(coeff, bd.first, bd.second);
      parts.emplace_back(m, std::move(part));
    }
  }
  std::map<GroupElement, Chain1> out;
  for (auto& [rep, part] : parts) out.emplace(rep, std::move(part));
  return out;
}

namespace detail {

// B is supported on the u_1 axis only.
inline bool axis1_only(const GroupElement& b) {
  for (std::size_t i = 1; i < b.dim(); ++i)
    if (b.exp[i] != 0) return false;
  return true;
}

// Rewriting state for the canonical reduction. Every mutation of the working
// chain goes through apply_boundary, so cur + d2(cert) stays equal to the
// input chain identically.
struct CanonicalReducer {
  Chain1 cur;
  Chain2 cert;

  explicit CanonicalReducer(const Chain1& ch) : cur(ch), cert(ch.phi) {}

  // By-value parameters throughout: callers hand in references into map
  // nodes that these moves erase.
  void apply_boundary(Int delta, GroupElement b, GroupElement d,
                      GroupElement e) {
    cert.add(delta, b, d, e);
    // cur -= delta * d2(b (x) d (x) e)
    cur.add(-delta, d, e + apply_phi(cur.phi, b));
    cur.add(delta, b + d, e);
    cur.add(-delta, b, d + e);
  }

  // a * 0 (x) d is the boundary of a * 0 (x) 0 (x) d.
  void drop_zero(Int a, GroupElement d) {
    apply_boundary(a, GroupElement::zero(cur.dim()),
                   GroupElement::zero(cur.dim()), d);
  }

  // Replace a * (x+y) (x) e by a * y (x) (e + phi x) + a * x (x) (y + e).
  void split(Int a, GroupElement x, GroupElement y, GroupElement e) {
    apply_boundary(-a, x, y, e);
  }

  // Replace a * v (x) e by -a * (-v) (x) (e + v + phi v).
  void reverse(Int a, GroupElement v, GroupElement e) {
    apply_boundary(a, v, -v, e + v);
    drop_zero(a, e + v);
  }

  // Merge m * v (x) e1 + m * w (x) e2 (with e1 + phi v = w + e2) into
  // m * (v+w) (x) (e2 - phi v).
  void concat(Int m, GroupElement v, GroupElement w, GroupElement e2) {
    GroupElement tail = e2 - apply_phi(cur.phi, v);
    apply_boundary(m, v, w, tail);
    if ((v + w).is_identity()) drop_zero(m, tail);
  }
};

} // namespace detail

/// Rewrite a 1-cycle into the normal form where every term is a * (u_1 (x) D'),
/// returning the normal form together with a 2-chain certificate satisfying
/// ch - canonical = d2(certificate) exactly. Requires the twisting matrix in
/// reduced basis with rank(phi - I) = n - 1; then ker(phi - I) = Z e_1 and the
/// rewriting below terminates.
inline std::pair<Chain1, Chain2> reduce_to_canonical(const Chain1& ch) {
  const std::size_t n = ch.dim();
  if (!boundary_d1(ch).is_zero())
    fail(errc::not_a_cycle, "reduce_to_canonical needs a 1-cycle");
  if (rank(ch.phi - IntMatrix::identity(n)) != n - 1)
    fail(errc::rank_precondition, "reduce_to_canonical needs rank(phi-I)=n-1");
  if (!first_column_is_e1(ch.phi))
    fail(errc::not_reduced_basis,
         "reduce_to_canonical needs phi with first column e1");

  detail::CanonicalReducer rw(ch);
  const GroupElement e1 = GroupElement::unit(n, 0);

  // Phase 1: split every term whose B mixes the u_1 axis with the rest.
  while (true) {
    bool progressed = false;
    for (const auto& [bd, coeff] : rw.cur.terms) {
      const GroupElement& b = bd.first;
      if (b.exp[0] == 0 || detail::axis1_only(b)) continue;
      GroupElement x = GroupElement::unit(n, 0, b.exp[0]);
      GroupElement y = b - x;
      rw.split(coeff, x, y, bd.second);
      progressed = true;
      break;
    }
    if (!progressed) break;
  }

  // Phase 2: terms with B outside Z e_1 pair up head-to-tail (the cycle
  // condition makes their d1 contributions a circulation); concatenating
  // along the circulation melts them away.
  while (true) {
    // orient every such term positively
    bool reversed = true;
    while (reversed) {
      reversed = false;
      for (const auto& [bd, coeff] : rw.cur.terms) {
        if (detail::axis1_only(bd.first)) continue;
        if (coeff < 0) {
          rw.reverse(coeff, bd.first, bd.second);
          reversed = true;
          break;
        }
      }
    }
    // pick the first remaining term and chase its head
    const GroupElement* v = nullptr;
    const GroupElement* ev = nullptr;
    Int a1;
    for (const auto& [bd, coeff] : rw.cur.terms) {
      if (detail::axis1_only(bd.first)) continue;
      v = &bd.first;
      ev = &bd.second;
      a1 = coeff;
      break;
    }
    if (v == nullptr) break;
    GroupElement head = *ev + apply_phi(rw.cur.phi, *v);
    const GroupElement* w = nullptr;
    const GroupElement* ew = nullptr;
    Int a2;
    for (const auto& [bd, coeff] : rw.cur.terms) {
      if (detail::axis1_only(bd.first)) continue;
      if (marker(bd.first, bd.second) == head) {
        w = &bd.first;
        ew = &bd.second;
        a2 = coeff;
        break;
      }
    }
    if (w == nullptr)
      fail(errc::internal, "cycle invariant broken during reduction");
    Int m = a1 < a2 ? a1 : a2;
    GroupElement vv = *v, ww = *w, e2 = *ew; // copies: concat mutates the map
    rw.concat(m, vv, ww, e2);
  }

  // Phase 3: normalize u_1^k (x) D to k copies of u_1 (x) u_1^{k-1} D.
  while (true) {
    bool progressed = false;
    for (const auto& [bd, coeff] : rw.cur.terms) {
      const Int& k = bd.first.exp[0];
      if (k == 1) continue;
      GroupElement d = bd.second;
      Int a = coeff;
      if (k == 0) {
        rw.drop_zero(a, d);
      } else if (k > 1) {
        rw.split(a, e1, GroupElement::unit(n, 0, k - 1), d);
      } else { // k <= -1: step the exponent toward zero
        rw.apply_boundary(a, e1, bd.first, d - e1);
      }
      progressed = true;
      break;
    }
    if (!progressed) break;
  }

  return {std::move(rw.cur), std::move(rw.cert)};
}

/// Per-class coefficient sums of a canonical chain: the coordinate of each
/// semiconjugacy class in H_1 of its semicentralizer. Zero sums are omitted.
inline std::map<GroupElement, Int>
homology_coefficients(const Chain1& canonical, const HomotopyDescriptor& desc) {
  if (canonical.dim() != desc.n || desc.phi != canonical.phi)
    fail(errc::dimension_mismatch,
         "homology_coefficients: descriptor does not match chain");
  if (rank(desc.phi_minus_identity()) != desc.n - 1)
    fail(errc::rank_precondition,
         "homology_coefficients needs rank(phi-I)=n-1");
  const GroupElement e1 = GroupElement::unit(desc.n, 0);
  for (const auto& [bd, coeff] : canonical.terms)
    if (bd.first != e1)
      fail(errc::malformed_input,
           "homology_coefficients expects a canonical chain (B = u_1)");

  std::vector<std::pair<GroupElement, Int>> classes;
  for (const auto& [bd, coeff] : canonical.terms) {
    GroupElement m = marker(bd.first, bd.second);
    bool placed = false;
    for (auto& [rep, sum] : classes) {
      if (same_class(m, rep, desc)) {
        sum += coeff;
        if (m < rep) rep = m;
        placed = true;
        break;
      }
    }
    if (!placed) classes.emplace_back(m, coeff);
  }
  std::map<GroupElement, Int> out;
  for (auto& [rep, sum] : classes)
    if (sum != 0) out.emplace(rep, sum);
  return out;
}

} // namespace torus1p
