// Command line front end: verification campaigns, matrix dumps and
// subspace classification reports over the compressed-shift frames.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modelspace/dual_operator.hpp"
#include "modelspace/equivalence.hpp"
#include "modelspace/errors.hpp"
#include "modelspace/io.hpp"
#include "modelspace/subspaces.hpp"
#include "modelspace/verification.hpp"

namespace {

nlohmann::json parse_inline_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw modelspace::DescriptorError(what + ": " + e.what());
  }
}

// Streams either to a file or to stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw modelspace::DescriptorError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct VerifyArgs {
  std::string config_path;
  std::vector<std::string> suites;
  int n_override = -1;
  std::string seed_override;
  std::string out_path;
};

int run_verify(const VerifyArgs& args) {
  modelspace::CampaignConfig cfg;
  if (!args.config_path.empty()) cfg = modelspace::load_config_file(args.config_path);
  if (!args.suites.empty()) cfg.suites = args.suites;
  if (args.n_override > 0) cfg.n = args.n_override;
  if (!args.seed_override.empty()) cfg.seed = std::stoull(args.seed_override);
  cfg.validate();

  OutputTarget out(args.out_path);
  const std::vector<modelspace::VerificationReport> reports = modelspace::run_campaign(cfg);
  bool all_pass = true;
  for (const modelspace::VerificationReport& r : reports) {
    out.stream() << modelspace::report_line(r) << "\n";
    all_pass = all_pass && r.pass;
  }
  out.stream().flush();
  return all_pass ? 0 : 1;
}

struct MatrixArgs {
  std::string op;
  std::string u_text;
  std::string v_text;
  std::string phi_text;
  int n = 0;
  std::string out_path;
};

int run_matrix(const MatrixArgs& args) {
  nlohmann::json desc;
  desc["op"] = args.op;
  if (!args.u_text.empty()) desc["u"] = parse_inline_json(args.u_text, "--u");
  if (!args.v_text.empty()) desc["v"] = parse_inline_json(args.v_text, "--v");
  if (!args.phi_text.empty()) desc["phi"] = parse_inline_json(args.phi_text, "--phi");

  const modelspace::BuiltOperator built = modelspace::operator_from_descriptor(desc, args.n);
  modelspace::write_matrix_csv(args.out_path, built.matrix);
  modelspace::write_matrix_sidecar(args.out_path + ".json", built.matrix, built.params);
  modelspace::log_info("wrote " + args.out_path + " and sidecar");
  return 0;
}

struct SubspaceArgs {
  std::string u_text;
  std::string s_text;
  std::string op = "D";
  std::string v_text;
  std::string phi_text;
  int n = 0;
  std::string out_path;
};

int run_subspace(const SubspaceArgs& args) {
  const modelspace::BlaschkeProduct u =
      modelspace::blaschke_from_json(parse_inline_json(args.u_text, "--u"));
  const modelspace::AmbientBasis basis(u, args.n);

  nlohmann::json op_desc;
  op_desc["op"] = args.op;
  op_desc["u"] = modelspace::blaschke_to_json(u);
  if (!args.v_text.empty()) op_desc["v"] = parse_inline_json(args.v_text, "--v");
  if (!args.phi_text.empty()) op_desc["phi"] = parse_inline_json(args.phi_text, "--phi");
  const modelspace::BuiltOperator op = modelspace::operator_from_descriptor(op_desc, args.n);

  const modelspace::BuiltSubspace built = modelspace::subspace_from_descriptor(
      parse_inline_json(args.s_text, "--s"), basis, op.matrix);

  nlohmann::json result;
  result["u"] = modelspace::blaschke_to_json(u);
  result["n"] = args.n;
  result["operator"] = args.op;
  result["subspace"] = built.params;
  result["dimension"] = built.space.dimension();
  result["construction"] = built.space.construction;
  result["version"] = modelspace::kVersionString;

  // Semantic outcomes (not invariant, predicate failures, no scorable
  // columns) are findings about the subspace, reported in the JSON body.
  try {
    try {
      result["invariance_residual"] =
          modelspace::invariance_residual(op.matrix, built.space);
    } catch (const modelspace::NoScorableColumnsError&) {
      result["invariance_residual"] =
          modelspace::invariance_residual(op.matrix, built.space, 0.05);
      result["interior_mass_tol"] = 0.05;
    }
  } catch (const modelspace::Error& e) {
    result["invariance_error"] = e.what();
  }

  try {
    result["pminus"] = modelspace::pminus_report_to_json(
        modelspace::classify_pminus_image(built.space, basis));
  } catch (const modelspace::Error& e) {
    result["pminus"] = nlohmann::json{{"error", e.what()}};
  }

  try {
    result["classification"] = modelspace::split_report_to_json(
        modelspace::classify_orthogonal_sum(built.space, basis));
  } catch (const modelspace::NotInvariantError& e) {
    result["classification"] = nlohmann::json{{"outcome", "not_invariant"},
                                              {"detail", e.what()}};
  } catch (const modelspace::PredicateFailedError& e) {
    result["classification"] = nlohmann::json{{"outcome", "predicate_failed"},
                                              {"detail", e.what()}};
  } catch (const modelspace::NoScorableColumnsError& e) {
    result["classification"] = nlohmann::json{{"outcome", "not_scorable"},
                                              {"detail", e.what()}};
  }

  OutputTarget out(args.out_path);
  out.stream() << result.dump(2) << "\n";
  out.stream().flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-frame checks for compressed shifts on model space complements"};
  app.require_subcommand(1);

  VerifyArgs vargs;
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites (JSON lines)");
  verify->add_option("--config", vargs.config_path, "Config file (key = value lines)");
  verify->add_option("--suite", vargs.suites, "Suite name, repeatable (default: all)");
  verify->add_option("--n", vargs.n_override, "Truncation length override");
  verify->add_option("--seed", vargs.seed_override, "Seed override");
  verify->add_option("--out", vargs.out_path, "Output path (default stdout)");

  MatrixArgs margs;
  CLI::App* matrix = app.add_subcommand("matrix", "Dump one operator matrix as CSV");
  matrix->add_option("--op", margs.op, "Operator name")->required();
  matrix->add_option("--u", margs.u_text, "Inner function descriptor (JSON)");
  matrix->add_option("--v", margs.v_text, "Second inner function descriptor (JSON)");
  matrix->add_option("--phi", margs.phi_text, "Symbol descriptor (JSON)");
  matrix->add_option("--n", margs.n, "Truncation length")->required();
  matrix->add_option("--out", margs.out_path, "CSV output path")->required();

  SubspaceArgs sargs;
  CLI::App* subspace =
      app.add_subcommand("subspace", "Build a subspace and classify it (JSON)");
  subspace->add_option("--u", sargs.u_text, "Inner function descriptor (JSON)")->required();
  subspace->add_option("--s", sargs.s_text, "Subspace descriptor (JSON)")->required();
  subspace->add_option("--op", sargs.op, "Operator name (default D)");
  subspace->add_option("--v", sargs.v_text, "Second inner function descriptor (JSON)");
  subspace->add_option("--phi", sargs.phi_text, "Symbol descriptor (JSON)");
  subspace->add_option("--n", sargs.n, "Truncation length")->required();
  subspace->add_option("--out", sargs.out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(vargs);
    if (matrix->parsed()) return run_matrix(margs);
    if (subspace->parsed()) return run_subspace(sargs);
  } catch (const modelspace::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
