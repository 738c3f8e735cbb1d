#pragma once

#include <string>

#include <json.hpp>

#include "modelspace/blaschke.hpp"
#include "modelspace/dual_operator.hpp"
#include "modelspace/equivalence.hpp"
#include "modelspace/fourier.hpp"
#include "modelspace/report.hpp"
#include "modelspace/subspaces.hpp"
#include "modelspace/verification.hpp"

namespace modelspace {

inline constexpr const char* kVersionString = "0.1.0";

// Logging is controlled by the MODELSPACE_LOG environment variable:
// quiet (default), info, debug.  Messages go to stderr so stdout stays
// machine readable.
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };
LogLevel log_level();
void log_info(const std::string& message);
void log_debug(const std::string& message);

nlohmann::json complex_to_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);

// {"constant":[re,im],"zeros":[[re,im],...]} with {"power":d} accepted as a
// shorthand for z^d.  Serialization always emits the long form.
nlohmann::json blaschke_to_json(const BlaschkeProduct& u);
BlaschkeProduct blaschke_from_json(const nlohmann::json& j);

// Compact display name: "z", "z^3", "blaschke(0.5)", "blaschke(0.5,-0.5)".
std::string blaschke_label(const BlaschkeProduct& u);

// {"terms":[[j,re,im],...]}; absent frequencies are zero.
nlohmann::json symbol_to_json(const FourierVector& f);
FourierVector symbol_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const IntertwinerCertificate& cert);
nlohmann::json decision_to_json(const EquivalenceDecision& decision,
                                const BlaschkeProduct& u,
                                const BlaschkeProduct& v, int n);
nlohmann::json block_form_to_json(const BlockForm& blocks);
nlohmann::json pminus_report_to_json(const PMinusReport& report);
nlohmann::json split_report_to_json(const OrthoSplitReport& report);

// CSV dump, one line per entry: row_label,col_label,re,im.  Writes the
// header line first, then rows in row-major order.  Numbers use %.17g so
// the dump round-trips doubles exactly.
void write_matrix_csv(const std::string& path, const OperatorMatrix& m);

// JSON sidecar describing a dump: op name, frame labels, interior columns,
// caller-supplied params, library version.
void write_matrix_sidecar(const std::string& path, const OperatorMatrix& m,
                          const nlohmann::json& params);

// Plain-text config: one `key = value` per line, # comments, blank lines
// ignored.  Keys: n, seed, band_guard, kappa_a, suite (repeatable),
// u (repeatable, JSON descriptor), tol.<check-name>.  Unknown keys raise
// DescriptorError.
CampaignConfig parse_config_text(const std::string& text);
CampaignConfig load_config_file(const std::string& path);

// Builds the matrix named by an operator descriptor such as
// {"op":"D","u":{...}} at frame length n.  Ops: D, Dstar, Su, U, V, Vinv,
// W (needs "v"), M, Q, A_phi, D_phi, Hankel (the latter three need "phi").
struct BuiltOperator {
  OperatorMatrix matrix;
  nlohmann::json params;
};
BuiltOperator operator_from_descriptor(const nlohmann::json& desc, int n);

// Builds a subspace from a descriptor against an existing frame.  Kinds:
// zbar_chain, uchain, gamma_u_h2 {"gamma"}, zbar_conj_k {"alpha"},
// direct_sum {"parts":[...]}, pullback {"w":{"alpha","beta"}},
// char_fn {"arcs":[[a,b],...]}, cyclic {"seed": symbol, coordinates by
// frame slot}.  `t` is the operator used for cyclic subspaces.
struct BuiltSubspace {
  SubspaceBasis space;
  nlohmann::json params;
};
BuiltSubspace subspace_from_descriptor(const nlohmann::json& desc,
                                       const AmbientBasis& basis,
                                       const OperatorMatrix& t);

// One JSON-lines record for a report, keys sorted, no trailing newline.
std::string report_line(const VerificationReport& report);

}  // namespace modelspace
