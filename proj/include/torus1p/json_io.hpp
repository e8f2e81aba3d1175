#pragma once

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "torus1p/bundles.hpp"
#include "torus1p/hochschild.hpp"
#include "torus1p/homotopy.hpp"
#include "torus1p/nielsen.hpp"
#include "torus1p/oracle.hpp"

namespace torus1p::jsonio {

using json = nlohmann::ordered_json;

inline void require_object(const json& j, const char* what) {
  if (!j.is_object()) fail(errc::malformed_input, std::string(what) + " must be a JSON object");
}

inline const json& require_key(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    fail(errc::malformed_input,
         std::string(what) + " is missing required key \"" + key + "\"");
  return *it;
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                                const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      fail(errc::malformed_input,
           std::string(what) + " has unknown key \"" + it.key() + "\"");
  }
}

inline Int parse_int(const json& j, const char* what) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Int(j.get<std::int64_t>());
  fail(errc::malformed_input, std::string(what) + " must be an integer");
}

/// Integers outside the int64 range are emitted as decimal strings.
inline json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

inline IntVec parse_int_vector(const json& j, const char* what) {
  if (!j.is_array())
    fail(errc::malformed_input, std::string(what) + " must be an array");
  IntVec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(parse_int(e, what));
  return v;
}

inline json int_vector_to_json(const IntVec& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

inline IntMatrix parse_matrix(const json& j, const char* what) {
  if (!j.is_array())
    fail(errc::malformed_input, std::string(what) + " must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = rows == 0 ? 0 : j.front().is_array() ? j.front().size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != cols)
      fail(errc::malformed_input, std::string(what) + " must be rectangular");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_int(row[k], what);
  }
  return m;
}

inline json matrix_to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(int_vector_to_json(m.row(i)));
  return out;
}

/// Problem document: {"n": int, "phi": [[int]], "c": [int]}.
inline HomotopyDescriptor parse_problem(const json& j) {
  require_object(j, "problem");
  reject_unknown_keys(j, {"n", "phi", "c"}, "problem");
  Int n = parse_int(require_key(j, "n", "problem"), "n");
  if (n < 1 || n > 64) fail(errc::malformed_input, "n must be in [1, 64]");
  IntMatrix phi = parse_matrix(require_key(j, "phi", "problem"), "phi");
  IntVec c = parse_int_vector(require_key(j, "c", "problem"), "c");
  std::size_t dim = n.convert_to<std::size_t>();
  if (phi.rows() != dim || phi.cols() != dim)
    fail(errc::malformed_input, "phi must be n x n");
  if (c.size() != dim) fail(errc::malformed_input, "c must have length n");
  return HomotopyDescriptor(std::move(phi), std::move(c));
}

inline json problem_to_json(const HomotopyDescriptor& d) {
  json out = json::object();
  out["n"] = d.n;
  out["phi"] = matrix_to_json(d.phi);
  out["c"] = int_vector_to_json(d.c);
  return out;
}

namespace detail {

inline std::pair<std::size_t, IntMatrix> parse_chain_header(const json& j,
                                                            const char* what) {
  require_object(j, what);
  Int n = parse_int(require_key(j, "n", what), "n");
  if (n < 1 || n > 64) fail(errc::malformed_input, "n must be in [1, 64]");
  std::size_t dim = n.convert_to<std::size_t>();
  IntMatrix phi = parse_matrix(require_key(j, "phi", what), "phi");
  if (phi.rows() != dim || phi.cols() != dim)
    fail(errc::malformed_input, "phi must be n x n");
  return {dim, std::move(phi)};
}

inline GroupElement parse_element(const json& j, std::size_t dim, const char* what) {
  IntVec v = parse_int_vector(j, what);
  if (v.size() != dim)
    fail(errc::malformed_input, std::string(what) + " must have length n");
  return GroupElement(std::move(v));
}

} // namespace detail

/// Chain document: {"n", "phi", "terms": [{"coeff", "B", "D"}]}.
inline Chain1 parse_chain1(const json& j) {
  auto [dim, phi] = detail::parse_chain_header(j, "chain");
  reject_unknown_keys(j, {"n", "phi", "terms"}, "chain");
  Chain1 ch(std::move(phi));
  const json& terms = require_key(j, "terms", "chain");
  if (!terms.is_array()) fail(errc::malformed_input, "terms must be an array");
  for (const auto& t : terms) {
    require_object(t, "term");
    reject_unknown_keys(t, {"coeff", "B", "D"}, "term");
    ch.add(parse_int(require_key(t, "coeff", "term"), "coeff"),
           detail::parse_element(require_key(t, "B", "term"), dim, "B"),
           detail::parse_element(require_key(t, "D", "term"), dim, "D"));
  }
  return ch;
}

/// 2-chain document: term objects additionally carry "E".
inline Chain2 parse_chain2(const json& j) {
  auto [dim, phi] = detail::parse_chain_header(j, "chain");
  reject_unknown_keys(j, {"n", "phi", "terms"}, "chain");
  Chain2 ch(std::move(phi));
  const json& terms = require_key(j, "terms", "chain");
  if (!terms.is_array()) fail(errc::malformed_input, "terms must be an array");
  for (const auto& t : terms) {
    require_object(t, "term");
    reject_unknown_keys(t, {"coeff", "B", "D", "E"}, "term");
    ch.add(parse_int(require_key(t, "coeff", "term"), "coeff"),
           detail::parse_element(require_key(t, "B", "term"), dim, "B"),
           detail::parse_element(require_key(t, "D", "term"), dim, "D"),
           detail::parse_element(require_key(t, "E", "term"), dim, "E"));
  }
  return ch;
}

inline json chain1_to_json(const Chain1& ch) {
  json out = json::object();
  out["n"] = ch.dim();
  out["phi"] = matrix_to_json(ch.phi);
  json terms = json::array();
  for (const auto& [bd, coeff] : ch.terms) {
    json t = json::object();
    t["coeff"] = int_to_json(coeff);
    t["B"] = int_vector_to_json(bd.first.exp);
    t["D"] = int_vector_to_json(bd.second.exp);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

inline json chain2_to_json(const Chain2& ch) {
  json out = json::object();
  out["n"] = ch.dim();
  out["phi"] = matrix_to_json(ch.phi);
  json terms = json::array();
  for (const auto& [bde, coeff] : ch.terms) {
    json t = json::object();
    t["coeff"] = int_to_json(coeff);
    t["B"] = int_vector_to_json(std::get<0>(bde).exp);
    t["D"] = int_vector_to_json(std::get<1>(bde).exp);
    t["E"] = int_vector_to_json(std::get<2>(bde).exp);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

inline json ring_to_json(const RingElement& r) {
  json terms = json::array();
  for (const auto& [g, coeff] : r.terms) {
    json t = json::object();
    t["coeff"] = int_to_json(coeff);
    t["g"] = int_vector_to_json(g.exp);
    terms.push_back(std::move(t));
  }
  json out = json::object();
  out["terms"] = std::move(terms);
  return out;
}

inline RingElement parse_ring_element(const json& j, std::size_t dim) {
  if (!j.is_array())
    fail(errc::malformed_input, "ring element must be an array of terms");
  RingElement r;
  for (const auto& t : j) {
    require_object(t, "ring term");
    reject_unknown_keys(t, {"coeff", "g"}, "ring term");
    r.add(detail::parse_element(require_key(t, "g", "ring term"), dim, "g"),
          parse_int(require_key(t, "coeff", "ring term"), "coeff"));
  }
  return r;
}

/// Trace document: {"n", "phi", "sign", "P": [[ringelem]], "Q": [[ringelem]]}
/// with ringelem = [{"coeff", "g"}].
struct TraceInput {
  IntMatrix phi;
  RingMatrix P;
  RingMatrix Q;
  int sign = 1;
};

inline TraceInput parse_trace_input(const json& j) {
  auto [dim, phi] = detail::parse_chain_header(j, "trace input");
  reject_unknown_keys(j, {"n", "phi", "sign", "P", "Q"}, "trace input");
  TraceInput in;
  in.phi = std::move(phi);
  Int sign = parse_int(require_key(j, "sign", "trace input"), "sign");
  if (sign != 1 && sign != -1)
    fail(errc::malformed_input, "sign must be +1 or -1");
  in.sign = sign.convert_to<int>();
  auto parse_ring_matrix = [&](const json& mj, const char* what) {
    if (!mj.is_array())
      fail(errc::malformed_input, std::string(what) + " must be an array");
    RingMatrix m;
    for (const auto& row : mj) {
      if (!row.is_array())
        fail(errc::malformed_input, std::string(what) + " must be an array of rows");
      std::vector<RingElement> r;
      for (const auto& e : row) r.push_back(parse_ring_element(e, dim));
      m.push_back(std::move(r));
    }
    return m;
  };
  in.P = parse_ring_matrix(require_key(j, "P", "trace input"), "P");
  in.Q = parse_ring_matrix(require_key(j, "Q", "trace input"), "Q");
  return in;
}

/// Bundle documents: {"b12","b22","c1","c2"} and {"k"}.
inline T2BundleMapData parse_bundle_t2(const json& j) {
  require_object(j, "bundle data");
  reject_unknown_keys(j, {"b12", "b22", "c1", "c2"}, "bundle data");
  return T2BundleMapData{parse_int(require_key(j, "b12", "bundle data"), "b12"),
                         parse_int(require_key(j, "b22", "bundle data"), "b22"),
                         parse_int(require_key(j, "c1", "bundle data"), "c1"),
                         parse_int(require_key(j, "c2", "bundle data"), "c2")};
}

inline Int parse_bundle_s1(const json& j) {
  require_object(j, "bundle data");
  reject_unknown_keys(j, {"k"}, "bundle data");
  return parse_int(require_key(j, "k", "bundle data"), "k");
}

inline std::string rational_to_string(const Rat& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1)
    s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

/// "p/q" or "p"; exact.
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) fail(errc::malformed_input, "zero denominator");
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(errc::malformed_input, "cannot parse rational \"" + s + "\"");
  }
}

} // namespace torus1p::jsonio
