#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "torus1p/json_io.hpp"

namespace torus1p::cli {

using jsonio::json;

namespace detail {

inline json load_input(const std::string& spec) {
  std::string text;
  std::size_t first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') {
    text = spec; // inline JSON
  } else {
    std::ifstream in(spec);
    if (!in) fail(errc::malformed_input, "cannot open input file: " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::malformed_input, std::string("invalid JSON: ") + e.what());
  }
}

inline std::string render_direction(const IntVec& v, bool ambiguous) {
  std::string s = ambiguous ? "+-(" : "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

struct OracleFlags {
  std::string method = "exact";
  std::size_t resolution = 192;
  double tol = -1.0; // negative = derive from resolution and the matrix
  std::string epsilon;
  std::uint64_t seed = 0;
  bool samples = false;
};

inline json run_oracle(const HomotopyDescriptor& desc, const OracleFlags& f) {
  RatVec eps;
  if (!f.epsilon.empty()) {
    std::stringstream ss(f.epsilon);
    std::string item;
    while (std::getline(ss, item, ',')) eps.push_back(jsonio::parse_rational(item));
    if (eps.size() != desc.n)
      fail(errc::malformed_input, "epsilon must have n components");
  } else {
    eps = choose_generic_epsilon(desc, f.seed);
  }
  LinearHomotopy h(desc, std::move(eps));

  FixedSetReport report;
  if (f.method == "exact") {
    report = fixed_set_exact(h);
  } else if (f.method == "grid") {
    double tol = f.tol >= 0 ? f.tol : default_grid_tol(h, f.resolution);
    report = fixed_set_grid(h, f.resolution, tol);
  } else {
    fail(errc::malformed_input, "method must be exact or grid");
  }

  json out = json::object();
  out["components"] = report.component_count;
  out["method"] = fixed_set_method_name(report.method);
  if (f.samples) {
    json samples = json::array();
    if (report.method == FixedSetMethod::exact) {
      for (const auto& z : report.samples_exact) {
        json point = json::array();
        for (const auto& zi : z) point.push_back(jsonio::rational_to_string(zi));
        samples.push_back(std::move(point));
      }
    } else {
      for (const auto& z : report.samples_grid) {
        json point = json::array();
        for (double zi : z) point.push_back(zi);
        samples.push_back(std::move(point));
      }
    }
    out["samples"] = std::move(samples);
  }
  return out;
}

inline std::string to_text(const std::string& cmd, const json& doc) {
  std::ostringstream os;
  if (cmd == "classic") {
    os << "classical Nielsen number: " << doc["N"] << "\n";
  } else if (cmd == "one-param") {
    os << "N(F) = " << doc["N"] << "  [" << doc["case"].get<std::string>() << "]\n";
    if (doc.contains("alpha"))
      os << "alpha direction (sign ambiguous): " << doc["alpha"].dump() << "\n";
  } else if (cmd == "lefschetz") {
    if (doc["N"] == 0) {
      os << "L(F) = 0\n";
    } else {
      os << "L(F) = " << doc["N"] << " * alpha, alpha = +-" << doc["alpha"].dump()
         << "\n";
    }
  } else if (cmd == "semiconj") {
    os << "cokernel order: " << doc["order"] << ", invariant factors "
       << doc["invariant_factors"].dump() << ", free rank " << doc["free_rank"]
       << "\n";
    if (doc.contains("representatives"))
      os << "representatives: " << doc["representatives"].dump() << "\n";
  } else if (cmd == "semicentralizer") {
    os << "semicentralizer basis: " << doc["basis"].dump() << "\n";
  } else if (cmd == "jezierski") {
    os << "D = " << doc["D"] << "\n";
  } else if (cmd == "oracle") {
    os << doc["components"] << " component(s) [" << doc["method"].get<std::string>()
       << "]\n";
    if (doc.contains("samples")) os << "samples: " << doc["samples"].dump() << "\n";
  } else if (cmd == "bundle-t2" || cmd == "bundle-s1") {
    os << "minimum number of fixed circles: " << doc["min_circles"] << "\n";
  } else {
    os << doc.dump(2) << "\n"; // chain documents: pretty JSON is the text form
  }
  return os.str();
}

} // namespace detail

/// Parse and dispatch one CLI invocation. args excludes the program name.
/// Returns the process exit code: 0 ok, 2 input error, 3 internal error.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"one-parameter fixed point invariants on the n-torus"};
  app.require_subcommand(1);

  struct Common {
    std::string input;
    std::string format = "json";
  };
  std::map<std::string, Common> common;
  detail::OracleFlags oracle_flags;

  const std::vector<std::string> commands = {
      "classic",        "one-param",       "lefschetz",     "semiconj",
      "semicentralizer", "jezierski",      "hochschild-d1", "hochschild-d2",
      "hochschild-reduce", "trace",        "oracle",        "bundle-t2",
      "bundle-s1"};
  const std::map<std::string, std::string> descriptions = {
      {"classic", "classical Nielsen number |det(phi - I)|"},
      {"one-param", "one-parameter Nielsen number N(F) and alpha direction"},
      {"lefschetz", "one-parameter Lefschetz class L(F) = N(F) alpha"},
      {"semiconj", "semiconjugacy class structure and representatives"},
      {"semicentralizer", "basis of the semicentralizer ker(phi - I)"},
      {"jezierski", "gcd of the maximal minors of [(phi - I) | c]"},
      {"hochschild-d1", "boundary d1 of a 1-chain"},
      {"hochschild-d2", "boundary d2 of a 2-chain"},
      {"hochschild-reduce", "canonical form and certificate of a 1-cycle"},
      {"trace", "tensor trace of two group-ring matrices"},
      {"oracle", "count fixed circles of the linear homotopy geometrically"},
      {"bundle-t2", "minimum fixed circles on a T^2 bundle over S^1"},
      {"bundle-s1", "minimum fixed circles on a circle bundle over S^1"}};

  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    Common& c = common[name];
    sub->add_option("--input", c.input, "input file path or inline JSON")
        ->required();
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    if (name == "oracle") {
      sub->add_option("--method", oracle_flags.method, "exact or grid")
          ->check(CLI::IsMember({"exact", "grid"}));
      sub->add_option("--resolution", oracle_flags.resolution,
                      "grid samples per axis");
      sub->add_option("--tol", oracle_flags.tol, "grid marking tolerance");
      sub->add_option("--epsilon", oracle_flags.epsilon,
                      "offset \"p/q,p/q,...\" (default: generic from seed)");
      sub->add_option("--seed", oracle_flags.seed, "seed for the generic offset");
      sub->add_flag("--samples", oracle_flags.samples,
                    "include one sample point per component");
    }
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    json doc = {{"error", {{"code", "MalformedInput"}, {"message", e.what()}}}};
    out << doc.dump() << "\n";
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const Common& c = common[cmd];

  try {
    json input = detail::load_input(c.input);
    json doc;
    if (cmd == "classic") {
      HomotopyDescriptor d = jsonio::parse_problem(input);
      doc["N"] = jsonio::int_to_json(classical_nielsen(d.phi));
    } else if (cmd == "one-param") {
      HomotopyDescriptor d = jsonio::parse_problem(input);
      OneParamResult r = one_param_nielsen(d);
      doc["N"] = jsonio::int_to_json(r.N);
      doc["case"] = one_param_case_name(r.which);
      if (r.alpha_direction) {
        doc["alpha"] = jsonio::int_vector_to_json(*r.alpha_direction);
        doc["sign_ambiguous"] = r.sign_ambiguous;
      }
    } else if (cmd == "lefschetz") {
      HomotopyDescriptor d = jsonio::parse_problem(input);
      LefschetzClass l = lefschetz_class(d);
      doc["N"] = jsonio::int_to_json(l.magnitude);
      if (l.alpha_direction) {
        doc["alpha"] = jsonio::int_vector_to_json(*l.alpha_direction);
        doc["sign_ambiguous"] = l.sign_ambiguous;
      }
    } else if (cmd == "semiconj") {
      HomotopyDescriptor d = jsonio::parse_problem(input);
      SemiconjugacyClasses sc = semiconjugacy_classes(d);
      if (sc.finite)
        doc["order"] = jsonio::int_to_json(*sc.structure.order);
      else
        doc["order"] = "INFINITE";
      json factors = json::array();
      for (const Int& f : sc.structure.invariant_factors)
        factors.push_back(jsonio::int_to_json(f));
      doc["invariant_factors"] = std::move(factors);
      doc["free_rank"] = sc.structure.free_rank;
      if (sc.finite) {
        json reps = json::array();
        for (const auto& g : sc.representatives)
          reps.push_back(jsonio::int_vector_to_json(g.exp));
        doc["representatives"] = std::move(reps);
      }
    } else if (cmd == "semicentralizer") {
      HomotopyDescriptor d = jsonio::parse_problem(input);
      json basis = json::array();
      for (const auto& v : semicentralizer(d))
        basis.push_back(jsonio::int_vector_to_json(v));
      doc["basis"] = std::move(basis);
    } else if (cmd == "jezierski") {
      HomotopyDescriptor d = jsonio::parse_problem(input);
      doc["D"] = jsonio::int_to_json(jezierski_D(d));
    } else if (cmd == "hochschild-d1") {
      Chain1 ch = jsonio::parse_chain1(input);
      doc = jsonio::ring_to_json(boundary_d1(ch));
    } else if (cmd == "hochschild-d2") {
      Chain2 ch = jsonio::parse_chain2(input);
      doc = jsonio::chain1_to_json(boundary_d2(ch));
    } else if (cmd == "hochschild-reduce") {
      Chain1 ch = jsonio::parse_chain1(input);
      auto [canonical, certificate] = reduce_to_canonical(ch);
      doc["canonical"] = jsonio::chain1_to_json(canonical);
      doc["certificate"] = jsonio::chain2_to_json(certificate);
    } else if (cmd == "trace") {
      jsonio::TraceInput in = jsonio::parse_trace_input(input);
      doc = jsonio::chain1_to_json(tensor_trace(in.phi, in.P, in.Q, in.sign));
    } else if (cmd == "oracle") {
      HomotopyDescriptor d = jsonio::parse_problem(input);
      doc = detail::run_oracle(d, oracle_flags);
    } else if (cmd == "bundle-t2") {
      T2BundleMapData d = jsonio::parse_bundle_t2(input);
      doc["min_circles"] = jsonio::int_to_json(bundle_t2_min_circles(d));
    } else if (cmd == "bundle-s1") {
      Int k = jsonio::parse_bundle_s1(input);
      doc["min_circles"] = jsonio::int_to_json(bundle_s1_min_circles(k));
    }

    if (c.format == "text")
      out << detail::to_text(cmd, doc);
    else
      out << doc.dump() << "\n";
    return 0;
  } catch (const Error& e) {
    json doc = {{"error",
                 {{"code", e.code_name()}, {"message", e.message()}}}};
    out << doc.dump() << "\n";
    return e.code() == errc::internal ? 3 : 2;
  } catch (const std::exception& e) {
    json doc = {{"error", {{"code", "InternalError"}, {"message", e.what()}}}};
    out << doc.dump() << "\n";
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

} // namespace torus1p::cli
