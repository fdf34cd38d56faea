#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fields.hpp"
#include "nrhw/report.hpp"
#include "nrhw/verdicts.hpp"

using namespace nrhw;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(NRHW_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string specs_dir() { return NRHW_SPECS; }

}  // namespace

TEST_CASE("field specs parse, render, and round-trip byte for byte") {
  FieldSpec spec;
  spec.name = "sqrt2";
  spec.f = {-2, 0, 1};
  spec.sigmas = {{0, 1}, {0, -1}};

  std::string text = render_field_spec(spec);
  FieldSpec back = parse_field_spec(text);
  REQUIRE(back.name == spec.name);
  REQUIRE(back.f == spec.f);
  REQUIRE(back.sigmas == spec.sigmas);
  REQUIRE(back.order.empty());
  REQUIRE(render_field_spec(back) == text);

  spec.order = {2, 1};
  std::string with_order = render_field_spec(spec);
  REQUIRE(parse_field_spec(with_order).order == std::vector<int>{2, 1});
  REQUIRE(render_field_spec(parse_field_spec(with_order)) == with_order);
}

TEST_CASE("field spec diagnostics name the offending part") {
  REQUIRE_THROWS_WITH(parse_field_spec("{nope"), Catch::Matchers::ContainsSubstring("byte"));
  REQUIRE_THROWS_WITH(parse_field_spec(R"({"name":"x","f":[1],"sigmas":[],"extra":1})"),
                      Catch::Matchers::ContainsSubstring("unknown field spec key"));
  REQUIRE_THROWS_WITH(parse_field_spec(R"({"name":"x","f":"no","sigmas":[]})"),
                      Catch::Matchers::ContainsSubstring("\"f\""));
  REQUIRE_THROWS_WITH(parse_field_spec(R"({"name":"x","f":[1,0,1],"sigmas":[[0,1.5]]})"),
                      Catch::Matchers::ContainsSubstring("integers"));
  REQUIRE_THROWS_WITH(
      parse_field_spec(R"({"name":"x","f":[-2,0,1],"sigmas":[[0,1],[0,-1]],"order":[1,1]})"),
      Catch::Matchers::ContainsSubstring("permutation"));
  REQUIRE_THROWS_WITH(
      parse_field_spec(R"({"name":"x","f":[-2,0,1],"sigmas":[[0,1],[0,-1]],"order":[1]})"),
      Catch::Matchers::ContainsSubstring("order"));
}

TEST_CASE("built-in example specs build valid groups") {
  for (std::int64_t d : {2, 3, 6, 7, 11}) {
    FieldSpec spec = quadratic_field_spec(d);
    REQUIRE(spec.f == std::vector<std::int64_t>{-d, 0, 1});
    GaloisGroup G = group_from_spec(spec);
    REQUIRE(G.n() == 2);
  }
  REQUIRE_THROWS(quadratic_field_spec(5));   // 1 mod 4
  REQUIRE_THROWS(quadratic_field_spec(4));   // 0 mod 4
  REQUIRE_THROWS(quadratic_field_spec(18));  // not squarefree
  REQUIRE_THROWS(quadratic_field_spec(-2));

  for (int m : {3, 5, 7}) {
    FieldSpec spec = cyclotomic_field_spec(m);
    REQUIRE(static_cast<int>(spec.f.size()) == m);
    REQUIRE(static_cast<int>(spec.sigmas.size()) == m - 1);
    GaloisGroup G = group_from_spec(spec);
    REQUIRE(G.n() == m - 1);
  }
  REQUIRE_THROWS(cyclotomic_field_spec(4));
  REQUIRE_THROWS(cyclotomic_field_spec(9));
}

TEST_CASE("spec order and the override map to ring positions") {
  FieldSpec spec = quadratic_field_spec(2);
  GaloisGroup G = group_from_spec(spec);

  REQUIRE(tensor_from_spec(G, spec).order == std::vector<int>{0, 1});
  spec.order = {2, 1};
  REQUIRE(tensor_from_spec(G, spec).order == std::vector<int>{1, 0});
  REQUIRE(tensor_from_spec(G, spec, {1, 2}).order == std::vector<int>{0, 1});
}

TEST_CASE("reports aggregate verdicts and round-trip as JSON") {
  Json report;
  report["command"] = "example";
  report["verdicts"] = Json{{"alpha", true}, {"beta", false}};
  report["primes"] = Json::array({Json{{"p", 2}, {"verdicts", Json{{"gamma", true}}}}});
  REQUIRE_FALSE(finalize_report(report));
  REQUIRE(report["suite"]["pass"] == 2);
  REQUIRE(report["suite"]["fail"] == 1);
  REQUIRE(report["overall"] == false);

  std::string text = render_text(report);
  REQUIRE(text.find("[PASS] alpha") != std::string::npos);
  REQUIRE(text.find("[FAIL] beta") != std::string::npos);
  REQUIRE(text.find("overall: FAIL") != std::string::npos);

  std::string js = render_json(report);
  REQUIRE(render_json(Json::parse(js)) == js);
}

TEST_CASE("verdict bundles reproduce the frozen quadratic facts") {
  GaloisGroup G = testfields::sqrt2();
  TensorRing T(G);

  BasisVerdicts bv = basis_verdicts(T);
  REQUIRE(bv.ok());
  REQUIRE(subset_ideals_match(T));

  PrimeIdeal Q2 = split_prime(G, 2)[0];
  FqAlgebra A2(Q2.F, T.tau_values(Q2));
  AlgebraVerdicts av = algebra_verdicts(A2);
  REQUIRE(av.algebra_dim == 5);
  REQUIRE(av.radical_dim == 3);
  REQUIRE(av.nilpotency_index == 3);
  REQUIRE(av.codomain_dim == 2);
  REQUIRE_FALSE(av.semisimple);
  REQUIRE_FALSE(av.homomorphism_sampled);
  REQUIRE(av.ok());

  ReciprocityVerdicts rv = reciprocity_verdicts(A2);
  REQUIRE(rv.ok());
  REQUIRE(rv.D == std::vector<std::vector<int>>{{1, 0}, {1, 1}});
  REQUIRE(rv.V == std::vector<std::vector<int>>{{1, 1}, {0, 1}});
  REQUIRE(rv.C == std::vector<std::vector<int>>{{2, 1}, {1, 1}});

  REQUIRE(chain_duality_all(T));
  REQUIRE(fiber_blocks_match(T, Q2, A2));
  REQUIRE(evaluation_verdicts(G, Q2, A2).ok());

  PrimeIdeal Q7 = split_prime(G, 7)[0];
  FqAlgebra A7(Q7.F, T.tau_values(Q7));
  REQUIRE(idempotent_verdict(T, Q7));
  REQUIRE(evaluation_verdicts(G, Q7, A7).ok());

  SheafVerdicts sv = sheaf_verdicts(G);
  REQUIRE(sv.quadratic);
  REQUIRE(sv.ok());
  REQUIRE(sv.default_order_fails_middle);
}

TEST_CASE("binary: examples output matches the shipped specs byte for byte") {
  auto quad = run_cli("examples quadratic -d 2");
  REQUIRE(quad.exit_code == 0);
  REQUIRE(quad.out == slurp(specs_dir() + "/sqrt2.json"));

  auto cyc = run_cli("examples cyclotomic -n 5");
  REQUIRE(cyc.exit_code == 0);
  REQUIRE(cyc.out == slurp(specs_dir() + "/zeta5.json"));
}

TEST_CASE("binary: verify emits a passing, byte-stable JSON report") {
  auto res = run_cli("verify " + specs_dir() + "/sqrt3.json --primes 2..7 --suite semisimplicity --json");
  REQUIRE(res.exit_code == 0);
  Json report = Json::parse(res.out);
  REQUIRE(report["overall"] == true);
  REQUIRE(report["suite"]["fail"] == 0);
  REQUIRE(report["field"]["name"] == "sqrt3");
  REQUIRE(report["primes"].size() == 4);  // 2, 3, 5, 7
  REQUIRE(render_json(report) == res.out);
}

TEST_CASE("binary: invalid input exits nonzero") {
  auto bad = run_cli("field check " + specs_dir() + "/does_not_exist.json");
  REQUIRE(bad.exit_code == 2);

  char tmpl[] = "/tmp/nrhw_bad_XXXXXX";
  int fd = mkstemp(tmpl);
  REQUIRE(fd >= 0);
  std::string payload = R"({"name":"bad","f":[-2,0,1],"sigmas":[[0,1],[1,1]]})";
  REQUIRE(write(fd, payload.data(), payload.size()) == static_cast<ssize_t>(payload.size()));
  close(fd);
  auto fail = run_cli(std::string("field check ") + tmpl);
  REQUIRE(fail.exit_code == 1);
  REQUIRE(fail.out.find("[FAIL] group_axioms") != std::string::npos);
  std::remove(tmpl);
}
