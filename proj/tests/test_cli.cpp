#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "torus1p/cli.hpp"

using namespace torus1p;
using jsonio::json;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("one-param: full-rank circle, byte-stable output") {
  auto r = run_cli({"one-param", "--input", R"({"n":1,"phi":[[1]],"c":[4]})"});
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out ==
          "{\"N\":4,\"case\":\"FULL_RANK\",\"alpha\":[1],\"sign_ambiguous\":true}\n");
}

TEST_CASE("one-param: classical obstruction") {
  auto r = run_cli({"one-param", "--input", R"({"n":2,"phi":[[2,0],[0,2]],"c":[1,1]})"});
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "{\"N\":0,\"case\":\"CLASSICAL_NONZERO\"}\n");
}

TEST_CASE("oracle: exact count matches the documented example") {
  auto r = run_cli({"oracle", "--method", "exact", "--input",
                    R"({"n":2,"phi":[[1,1],[0,2]],"c":[0,1]})", "--seed", "0"});
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "{\"components\":1,\"method\":\"EXACT\"}\n");
}

TEST_CASE("oracle: grid agrees with exact through the CLI") {
  std::string input = R"({"n":2,"phi":[[1,1],[0,2]],"c":[0,1]})";
  auto exact = run_cli({"oracle", "--method", "exact", "--input", input});
  auto grid = run_cli({"oracle", "--method", "grid", "--resolution", "192",
                       "--input", input});
  REQUIRE(exact.exit_code == 0);
  REQUIRE(grid.exit_code == 0);
  REQUIRE(json::parse(exact.out)["components"] ==
          json::parse(grid.out)["components"]);
}

TEST_CASE("oracle: explicit epsilon and samples") {
  auto r = run_cli({"oracle", "--method", "exact", "--epsilon", "1/7",
                    "--samples", "--input", R"({"n":1,"phi":[[1]],"c":[2]})"});
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["components"] == 2);
  REQUIRE(doc["samples"].size() == 2);
}

TEST_CASE("oracle: grid dimension cap") {
  auto r = run_cli({"oracle", "--method", "grid", "--input",
                    R"({"n":4,"phi":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"c":[0,0,0,0]})"});
  REQUIRE(r.exit_code == 2);
  json doc = json::parse(r.out);
  REQUIRE(doc["error"]["code"] == "UnsupportedDimension");
}

TEST_CASE("malformed input handling") {
  auto bad_json = run_cli({"one-param", "--input", "{not json"});
  REQUIRE(bad_json.exit_code == 2);
  REQUIRE(json::parse(bad_json.out)["error"]["code"] == "MalformedInput");

  auto bad_shape = run_cli({"one-param", "--input", R"({"n":2,"phi":[[1]],"c":[0,0]})"});
  REQUIRE(bad_shape.exit_code == 2);

  auto missing_key = run_cli({"one-param", "--input", R"({"n":1,"phi":[[1]]})"});
  REQUIRE(missing_key.exit_code == 2);

  auto unknown_key = run_cli({"one-param", "--input", R"({"n":1,"phi":[[1]],"c":[1],"x":0})"});
  REQUIRE(unknown_key.exit_code == 2);

  auto missing_file = run_cli({"one-param", "--input", "/nonexistent.json"});
  REQUIRE(missing_file.exit_code == 2);
}

TEST_CASE("unknown flags and subcommands are rejected") {
  auto unknown_flag = run_cli({"one-param", "--input", R"({"n":1,"phi":[[1]],"c":[1]})",
                               "--frobnicate"});
  REQUIRE(unknown_flag.exit_code == 2);
  auto unknown_cmd = run_cli({"does-not-exist"});
  REQUIRE(unknown_cmd.exit_code == 2);
}

TEST_CASE("classic, jezierski, semiconj, semicentralizer, lefschetz") {
  auto classic = run_cli({"classic", "--input", R"({"n":1,"phi":[[2]],"c":[0]})"});
  REQUIRE(classic.exit_code == 0);
  REQUIRE(json::parse(classic.out)["N"] == 1);

  auto jez = run_cli({"jezierski", "--input", R"({"n":1,"phi":[[1]],"c":[3]})"});
  REQUIRE(json::parse(jez.out)["D"] == 3);

  auto sc = run_cli({"semiconj", "--input", R"({"n":1,"phi":[[1]],"c":[3]})"});
  json scd = json::parse(sc.out);
  REQUIRE(scd["order"] == 3);
  REQUIRE(scd["representatives"].size() == 3);

  auto scinf = run_cli({"semiconj", "--input", R"({"n":2,"phi":[[1,0],[0,1]],"c":[0,0]})"});
  json scinfd = json::parse(scinf.out);
  REQUIRE(scinfd["order"] == "INFINITE");
  REQUIRE(scinfd["free_rank"] == 2);
  REQUIRE_FALSE(scinfd.contains("representatives"));

  auto cent = run_cli({"semicentralizer", "--input", R"({"n":2,"phi":[[1,1],[0,2]],"c":[0,0]})"});
  REQUIRE(json::parse(cent.out)["basis"] == json::parse("[[1,0]]"));

  auto lef = run_cli({"lefschetz", "--input", R"({"n":2,"phi":[[1,1],[0,2]],"c":[0,1]})"});
  json lefd = json::parse(lef.out);
  REQUIRE(lefd["N"] == 1);
  REQUIRE(lefd["alpha"] == json::parse("[1,0]"));
  REQUIRE(lefd["sign_ambiguous"] == true);
}

TEST_CASE("hochschild subcommands") {
  std::string chain = R"({"n":2,"phi":[[1,1],[0,2]],"terms":[{"coeff":1,"B":[1,1],"D":[0,0]}]})";
  auto d1 = run_cli({"hochschild-d1", "--input", chain});
  REQUIRE(d1.exit_code == 0);
  REQUIRE(json::parse(d1.out) ==
          json::parse(R"({"terms":[{"coeff":-1,"g":[1,1]},{"coeff":1,"g":[2,2]}]})"));

  std::string chain2 = R"({"n":2,"phi":[[1,1],[0,2]],"terms":[{"coeff":1,"B":[0,0],"D":[0,0],"E":[3,1]}]})";
  auto d2 = run_cli({"hochschild-d2", "--input", chain2});
  REQUIRE(d2.exit_code == 0);
  json d2doc = json::parse(d2.out);
  REQUIRE(d2doc["terms"] == json::parse(R"([{"coeff":1,"B":[0,0],"D":[3,1]}])"));

  std::string cycle = R"({"n":1,"phi":[[1]],"terms":[{"coeff":1,"B":[2],"D":[0]}]})";
  auto red = run_cli({"hochschild-reduce", "--input", cycle});
  REQUIRE(red.exit_code == 0);
  json reddoc = json::parse(red.out);
  REQUIRE(reddoc["canonical"]["terms"] ==
          json::parse(R"([{"coeff":2,"B":[1],"D":[1]}])"));
  // certificate closes the gap: input - canonical = d2(certificate)
  Chain1 input_chain = jsonio::parse_chain1(json::parse(cycle));
  Chain1 canonical = jsonio::parse_chain1(reddoc["canonical"]);
  Chain2 cert = jsonio::parse_chain2(reddoc["certificate"]);
  Chain1 recovered = boundary_d2(cert);
  for (const auto& [bd, c] : canonical.terms) recovered.add(c, bd.first, bd.second);
  REQUIRE(recovered == input_chain);

  auto not_cycle = run_cli({"hochschild-reduce", "--input",
                            R"({"n":2,"phi":[[1,1],[0,2]],"terms":[{"coeff":1,"B":[0,1],"D":[0,0]}]})"});
  REQUIRE(not_cycle.exit_code == 2);
  REQUIRE(json::parse(not_cycle.out)["error"]["code"] == "NotACycle");
}

TEST_CASE("trace subcommand") {
  std::string input = R"({"n":2,"phi":[[1,1],[0,2]],"sign":1,
    "P":[[[{"coeff":1,"g":[0,0]},{"coeff":-1,"g":[-1,0]}]]],
    "Q":[[[{"coeff":1,"g":[0,1]}]]]})";
  auto r = run_cli({"trace", "--input", input});
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["terms"] == json::parse(
              R"([{"coeff":-1,"B":[-1,0],"D":[0,1]},{"coeff":1,"B":[0,0],"D":[0,1]}])"));
}

TEST_CASE("bundle subcommands") {
  auto t2 = run_cli({"bundle-t2", "--input", R"({"b12":0,"b22":-1,"c1":2,"c2":1})"});
  REQUIRE(json::parse(t2.out)["min_circles"] == 4);
  auto s1 = run_cli({"bundle-s1", "--input", R"({"k":-4})"});
  REQUIRE(json::parse(s1.out)["min_circles"] == 4);
}

TEST_CASE("text format renders") {
  auto r = run_cli({"one-param", "--format", "text", "--input",
                    R"({"n":1,"phi":[[1]],"c":[4]})"});
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("N(F) = 4") != std::string::npos);
}

TEST_CASE("emitted documents re-parse under the published schema") {
  std::mt19937_64 rng(60606);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t n = 1 + (rng() % 3);
    IntMatrix phi = random_matrix(rng, n, n, -3, 3);
    IntVec c = random_vector(rng, n, -3, 3);
    json problem = jsonio::problem_to_json(HomotopyDescriptor(phi, c));
    // round trip of the problem document itself
    HomotopyDescriptor d = jsonio::parse_problem(problem);
    REQUIRE(d.phi == phi);
    REQUIRE(d.c == c);

    auto r = run_cli({"one-param", "--input", problem.dump()});
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc.contains("N"));
    REQUIRE(doc.contains("case"));

    // end-to-end restatement of the minor-gcd equality on singular inputs
    if (classical_nielsen(phi) == 0) {
      auto jez = run_cli({"jezierski", "--input", problem.dump()});
      REQUIRE(json::parse(jez.out)["D"] == doc["N"]);
    }
  }
}

TEST_CASE("chain documents round trip") {
  std::mt19937_64 rng(70707);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t n = 1 + (rng() % 3);
    Chain1 ch(random_matrix(rng, n, n, -3, 3));
    for (int t = 0; t < 4; ++t)
      ch.add(coeff(rng), GroupElement(random_vector(rng, n, -4, 4)),
             GroupElement(random_vector(rng, n, -4, 4)));
    REQUIRE(jsonio::parse_chain1(jsonio::chain1_to_json(ch)) == ch);

    Chain2 ch2(random_matrix(rng, n, n, -3, 3));
    for (int t = 0; t < 4; ++t)
      ch2.add(coeff(rng), GroupElement(random_vector(rng, n, -4, 4)),
              GroupElement(random_vector(rng, n, -4, 4)),
              GroupElement(random_vector(rng, n, -4, 4)));
    REQUIRE(jsonio::parse_chain2(jsonio::chain2_to_json(ch2)) == ch2);
  }
}
