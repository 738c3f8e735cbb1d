#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "modelspace/dual_operator.hpp"
#include "modelspace/errors.hpp"
#include "modelspace/io.hpp"

using namespace modelspace;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}
}  // namespace

TEST_CASE("inner function descriptors round trip") {
  const BlaschkeProduct u(Complex(0, 1), {Complex(0.5, 0), Complex(-0.25, 0.1)});
  const BlaschkeProduct back = blaschke_from_json(blaschke_to_json(u));
  CHECK(back.degree() == 2);
  CHECK(std::abs(back.constant() - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(back.zeros()[1] - Complex(-0.25, 0.1)) < 1e-15);

  const BlaschkeProduct p = blaschke_from_json(nlohmann::json{{"power", 3}});
  CHECK(p.degree() == 3);
  CHECK(p.value_at_zero() == Complex(0, 0));

  CHECK_THROWS_AS(blaschke_from_json(nlohmann::json{{"power", -1}}), DescriptorError);
  CHECK_THROWS_AS(
      blaschke_from_json(nlohmann::json{{"constant", {2.0, 0.0}}, {"zeros", nlohmann::json::array()}}),
      DescriptorError);
  CHECK_THROWS_AS(blaschke_from_json(nlohmann::json{{"power", 1}, {"zeros", nlohmann::json::array()}}),
                  DescriptorError);
}

TEST_CASE("display labels") {
  CHECK(blaschke_label(BlaschkeProduct()) == "1");
  CHECK(blaschke_label(BlaschkeProduct::power_of_z(1)) == "z");
  CHECK(blaschke_label(BlaschkeProduct::power_of_z(2)) == "z^2");
  const std::string l = blaschke_label(BlaschkeProduct::moebius(Complex(0.5, 0)));
  CHECK(l.rfind("blaschke(", 0) == 0);
  CHECK(l.find("0.5") != std::string::npos);
}

TEST_CASE("symbol descriptors round trip and accumulate") {
  FourierVector f(FrequencyBand{-2, 1});
  f.set(-2, Complex(0.5, -1.5));
  f.set(1, Complex(1, 0));
  const FourierVector back = symbol_from_json(symbol_to_json(f));
  CHECK((back - f).norm() < 1e-15);

  const FourierVector acc = symbol_from_json(
      nlohmann::json{{"terms", {{0, 1.0, 0.0}, {0, 2.0, 0.0}}}});
  CHECK(std::abs(acc.at(0) - Complex(3, 0)) < 1e-15);

  const FourierVector empty =
      symbol_from_json(nlohmann::json{{"terms", nlohmann::json::array()}});
  CHECK(empty.norm() == 0.0);
}

TEST_CASE("config grammar") {
  const std::string text =
      "# sample configuration\n"
      "n = 32\n"
      "seed = 7\n"
      "band_guard = 4\n"
      "kappa_a = 0.25\n"
      "suite = blocks\n"
      "suite = flip\n"
      "u = {\"power\": 2}\n"
      "tol.blocks.coupling = 1e-8\n"
      "\n";
  const CampaignConfig cfg = parse_config_text(text);
  CHECK(cfg.n == 32);
  CHECK(cfg.seed == 7);
  CHECK(cfg.band_guard == 4);
  CHECK(cfg.kappa_a == doctest::Approx(0.25));
  REQUIRE(cfg.suites.size() == 2);
  CHECK(cfg.suites[0] == "blocks");
  CHECK(cfg.suites[1] == "flip");
  REQUIRE(cfg.functions.size() == 1);
  CHECK(cfg.functions[0].degree() == 2);
  CHECK(cfg.tolerance_overrides.at("blocks.coupling") == doctest::Approx(1e-8));
}

TEST_CASE("config grammar rejections carry the line number") {
  try {
    parse_config_text("n = 16\nbogus = 1\n");
    FAIL("expected DescriptorError");
  } catch (const DescriptorError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("n 16\n"), DescriptorError);
  CHECK_THROWS_AS(parse_config_text("n = \n"), DescriptorError);
  CHECK_THROWS_AS(parse_config_text("n = sixteen\n"), DescriptorError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/path/config.txt"), DescriptorError);
}

TEST_CASE("matrix dump format") {
  const std::string path = "/tmp/modelspace_test_matrix.csv";
  write_matrix_csv(path, unilateral_shift_matrix(2));
  const std::string expected =
      "row_label,col_label,re,im\n"
      "z^0,z^0,0,0\n"
      "z^0,z^1,0,0\n"
      "z^1,z^0,1,0\n"
      "z^1,z^1,0,0\n";
  CHECK(slurp(path) == expected);
  std::remove(path.c_str());
}

TEST_CASE("matrix sidecar carries frame metadata") {
  const std::string path = "/tmp/modelspace_test_matrix_meta.json";
  write_matrix_sidecar(path, unilateral_shift_matrix(3), nlohmann::json{{"n", 3}});
  const nlohmann::json meta = nlohmann::json::parse(slurp(path));
  CHECK(meta.at("op") == "S");
  CHECK(meta.at("rows").size() == 3);
  CHECK(meta.at("cols").size() == 3);
  CHECK(meta.at("interior_cols") == nlohmann::json({0, 1}));
  CHECK(meta.at("params").at("n") == 3);
  CHECK(meta.at("version") == kVersionString);
  std::remove(path.c_str());
}

TEST_CASE("report lines are deterministic JSON") {
  const VerificationReport rep =
      make_report("area.check", nlohmann::json{{"u", "z"}}, 0.5, 1.0, 3.25);
  const std::string line = report_line(rep);
  CHECK(line ==
        "{\"check\":\"area.check\",\"params\":{\"u\":\"z\"},\"pass\":true,"
        "\"residual\":0.5,\"runtime_ms\":3.25,\"tolerance\":1.0}");
  CHECK(report_line(rep) == line);
}

TEST_CASE("operator descriptors") {
  const BuiltOperator d =
      operator_from_descriptor(nlohmann::json{{"op", "D"}, {"u", {{"power", 1}}}}, 4);
  CHECK(d.matrix.entries.rows() == 8);
  CHECK(d.matrix.domain[0] == "zbar^4");
  CHECK(d.params.at("op") == "D");

  const BuiltOperator h = operator_from_descriptor(
      nlohmann::json{{"op", "Hankel"},
                     {"phi", {{"terms", {{-2, 1.0, 0.0}}}}}},
      4);
  // H_phi z^k has coefficient phi(-j-k) at zbar^j; phi = zbar^2 puts ones
  // at (row zbar^2, col z^0) and (row zbar^1, col z^1)
  CHECK(std::abs(h.matrix.entries(2, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(h.matrix.entries(3, 1) - Complex(1, 0)) < 1e-15);
  CHECK(h.matrix.codomain[2] == "zbar^2");

  CHECK_THROWS_AS(operator_from_descriptor(nlohmann::json{{"op", "nope"}}, 4),
                  DescriptorError);
  CHECK_THROWS_AS(operator_from_descriptor(nlohmann::json{{"op", "D"}}, 4),
                  DescriptorError);
  CHECK_THROWS_AS(
      operator_from_descriptor(nlohmann::json{{"op", "W"}, {"u", {{"power", 1}}}}, 4),
      DescriptorError);
  CHECK_THROWS_AS(
      operator_from_descriptor(nlohmann::json{{"op", "V"}, {"u", {{"power", 1}}}}, 4),
      ZeroAtOriginError);
  CHECK_THROWS_AS(
      operator_from_descriptor(nlohmann::json{{"op", "D"}, {"u", {{"power", 1}}}}, 1),
      DescriptorError);
}

TEST_CASE("subspace descriptors") {
  const BlaschkeProduct u = BlaschkeProduct::moebius(Complex(0.5, 0));
  const AmbientBasis basis(u, 4);
  const OperatorMatrix d = build_D(basis);

  const BuiltSubspace chain =
      subspace_from_descriptor(nlohmann::json{{"kind", "zbar_chain"}}, basis, d);
  CHECK(chain.space.dimension() == 4);

  const BuiltSubspace sum = subspace_from_descriptor(
      nlohmann::json{{"kind", "direct_sum"},
                     {"parts", {{{"kind", "zbar_chain"}}, {{"kind", "uchain"}}}}},
      basis, d);
  CHECK(sum.space.dimension() == 8);

  const BuiltSubspace krylov = subspace_from_descriptor(
      nlohmann::json{{"kind", "cyclic"}, {"seed", {{"terms", {{4, 1.0, 0.0}}}}}},
      basis, d);
  CHECK(krylov.space.dimension() == 4);

  CHECK_THROWS_AS(
      subspace_from_descriptor(nlohmann::json{{"kind", "mystery"}}, basis, d),
      DescriptorError);
  CHECK_THROWS_AS(
      subspace_from_descriptor(
          nlohmann::json{{"kind", "cyclic"}, {"seed", {{"terms", {{99, 1.0, 0.0}}}}}},
          basis, d),
      DescriptorError);
  CHECK_THROWS_AS(
      subspace_from_descriptor(
          nlohmann::json{{"kind", "cyclic"},
                         {"seed", {{"terms", nlohmann::json::array()}}}},
          basis, d),
      DescriptorError);
}

TEST_CASE("equivalence decisions serialize with both origin moduli") {
  const BlaschkeProduct u = BlaschkeProduct::moebius(Complex(0.5, 0));
  const BlaschkeProduct v = BlaschkeProduct::moebius(Complex(0, 0.5));
  const EquivalenceDecision dec = decide_unitary_equivalence(u, v, 8);
  const nlohmann::json j = decision_to_json(dec, u, v, 8);
  CHECK(j.at("n") == 8);
  CHECK(j.at("similar") == true);
  CHECK(j.at("unitarily_equivalent") == true);
  CHECK(j.at("mod_u0").get<double>() == doctest::Approx(0.5));
  CHECK(j.at("certificate").at("kind") == "unitary");
}
