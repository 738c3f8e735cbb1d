#include "modelspace/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace modelspace {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw DescriptorError("config value for " + key + " is not a number: " + value);
  }
}

long long parse_integer(const std::string& value, const std::string& key) {
  try {
    size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw DescriptorError("config value for " + key + " is not an integer: " + value);
  }
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_compact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

std::string format_complex_compact(const Complex& z) {
  if (z.imag() == 0.0) return format_compact(z.real());
  if (z.real() == 0.0) return format_compact(z.imag()) + "i";
  std::string s = format_compact(z.real());
  if (z.imag() > 0) s += "+";
  s += format_compact(z.imag()) + "i";
  return s;
}

nlohmann::json parse_json_or_throw(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DescriptorError(what + ": " + e.what());
  }
}

void require_object(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object()) throw DescriptorError(what + " must be a JSON object");
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* raw = std::getenv("MODELSPACE_LOG");
    if (raw == nullptr) return LogLevel::Quiet;
    const std::string v(raw);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Quiet;
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::Info) std::cerr << "[info] " << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::Debug) std::cerr << "[debug] " << message << "\n";
}

nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DescriptorError("complex value must be a [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

nlohmann::json blaschke_to_json(const BlaschkeProduct& u) {
  nlohmann::json zeros = nlohmann::json::array();
  for (const Complex& z : u.zeros()) zeros.push_back(complex_to_json(z));
  return nlohmann::json{{"constant", complex_to_json(u.constant())}, {"zeros", zeros}};
}

BlaschkeProduct blaschke_from_json(const nlohmann::json& j) {
  require_object(j, "inner function descriptor");
  if (j.contains("power")) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "power") {
        throw DescriptorError("power shorthand admits no other keys, found: " + it.key());
      }
    }
    if (!j["power"].is_number_integer() || j["power"].get<int>() < 0) {
      throw DescriptorError("power must be a nonnegative integer");
    }
    return BlaschkeProduct::power_of_z(j["power"].get<int>());
  }
  if (!j.contains("zeros")) {
    throw DescriptorError("inner function descriptor needs zeros or power");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "zeros" && it.key() != "constant") {
      throw DescriptorError("unknown inner function key: " + it.key());
    }
  }
  if (!j["zeros"].is_array()) throw DescriptorError("zeros must be an array");
  std::vector<Complex> zeros;
  for (const auto& z : j["zeros"]) zeros.push_back(complex_from_json(z));
  Complex constant(1, 0);
  if (j.contains("constant")) constant = complex_from_json(j["constant"]);
  return BlaschkeProduct(constant, std::move(zeros));
}

std::string blaschke_label(const BlaschkeProduct& u) {
  bool all_origin = true;
  for (const Complex& z : u.zeros()) {
    if (z != Complex(0, 0)) all_origin = false;
  }
  if (all_origin && u.constant() == Complex(1, 0)) {
    if (u.degree() == 0) return "1";
    if (u.degree() == 1) return "z";
    return "z^" + std::to_string(u.degree());
  }
  std::string s = "blaschke(";
  if (u.constant() != Complex(1, 0)) {
    s += "c=" + format_complex_compact(u.constant()) + ";";
  }
  for (size_t i = 0; i < u.zeros().size(); ++i) {
    if (i) s += ",";
    s += format_complex_compact(u.zeros()[i]);
  }
  s += ")";
  return s;
}

nlohmann::json symbol_to_json(const FourierVector& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (int j = f.n_min(); j <= f.n_max(); ++j) {
    const Complex c = f.at(j);
    if (c == Complex(0, 0)) continue;
    terms.push_back(nlohmann::json::array({j, c.real(), c.imag()}));
  }
  return nlohmann::json{{"terms", terms}};
}

FourierVector symbol_from_json(const nlohmann::json& j) {
  require_object(j, "symbol descriptor");
  if (!j.contains("terms") || !j["terms"].is_array()) {
    throw DescriptorError("symbol descriptor needs a terms array");
  }
  std::map<int, Complex> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
        !t[1].is_number() || !t[2].is_number()) {
      throw DescriptorError("symbol term must be [frequency, re, im]");
    }
    terms[t[0].get<int>()] += Complex(t[1].get<double>(), t[2].get<double>());
  }
  if (terms.empty()) return FourierVector::monomial(0, Complex(0, 0));
  FourierVector f(FrequencyBand{terms.begin()->first, terms.rbegin()->first});
  for (const auto& [freq, c] : terms) f.set(freq, c);
  return f;
}

nlohmann::json certificate_to_json(const IntertwinerCertificate& cert) {
  return nlohmann::json{
      {"kind", cert.kind == CertificateKind::Unitary ? "unitary" : "similarity"},
      {"name", cert.matrix.name},
      {"residual_intertwine", cert.residual_intertwine},
      {"residual_unitarity", cert.residual_unitarity}};
}

nlohmann::json decision_to_json(const EquivalenceDecision& decision,
                                const BlaschkeProduct& u,
                                const BlaschkeProduct& v, int n) {
  nlohmann::json out{{"u", blaschke_to_json(u)},
                     {"v", blaschke_to_json(v)},
                     {"n", n},
                     {"mod_u0", decision.mod_u0},
                     {"mod_v0", decision.mod_v0},
                     {"similar", decision.similar},
                     {"unitarily_equivalent", decision.unitarily_equivalent}};
  if (decision.certificate.has_value()) {
    out["certificate"] = certificate_to_json(*decision.certificate);
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

nlohmann::json block_form_to_json(const BlockForm& blocks) {
  return nlohmann::json{{"resid_shift", blocks.resid_shift},
                        {"resid_coupling", blocks.resid_coupling},
                        {"lower_left_max", blocks.lower_left_max},
                        {"resid_q", blocks.resid_q},
                        {"coupling_entry", complex_to_json(blocks.coupling_entry)}};
}

nlohmann::json pminus_report_to_json(const PMinusReport& report) {
  const char* kind = "zero";
  if (report.kind == PMinusKind::All) kind = "all";
  if (report.kind == PMinusKind::ZbarConjK) kind = "zbar_conj_k";
  return nlohmann::json{{"kind", kind},
                        {"dimension", report.dimension},
                        {"predicate_residual", report.predicate_residual}};
}

nlohmann::json split_report_to_json(const OrthoSplitReport& report) {
  return nlohmann::json{{"split", report.split},
                        {"tag", split_tag_name(report.tag)},
                        {"x_dim", report.x_dim},
                        {"y_dim", report.y_dim},
                        {"gamma_trivial", report.gamma_trivial},
                        {"invariance", report.invariance},
                        {"split_residual", report.split_residual}};
}

void write_matrix_csv(const std::string& path, const OperatorMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "row_label,col_label,re,im\n";
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
      const Complex v = m.entries(i, j);
      out << m.codomain[static_cast<size_t>(i)] << ","
          << m.domain[static_cast<size_t>(j)] << "," << format_double(v.real())
          << "," << format_double(v.imag()) << "\n";
    }
  }
  if (!out) throw Error("write to " + path + " failed");
}

void write_matrix_sidecar(const std::string& path, const OperatorMatrix& m,
                          const nlohmann::json& params) {
  nlohmann::json side{{"op", m.name},
                      {"rows", m.codomain},
                      {"cols", m.domain},
                      {"interior_cols", m.interior_cols},
                      {"params", params},
                      {"version", kVersionString}};
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << side.dump(2) << "\n";
  if (!out) throw Error("write to " + path + " failed");
}

CampaignConfig parse_config_text(const std::string& text) {
  CampaignConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw DescriptorError("config line " + std::to_string(line_no) +
                            " has no '=': " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw DescriptorError("config line " + std::to_string(line_no) +
                            " has an empty key or value");
    }
    if (key == "n") {
      cfg.n = static_cast<int>(parse_integer(value, key));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_integer(value, key));
    } else if (key == "band_guard") {
      cfg.band_guard = static_cast<int>(parse_integer(value, key));
    } else if (key == "kappa_a") {
      cfg.kappa_a = parse_double(value, key);
    } else if (key == "suite") {
      cfg.suites.push_back(value);
    } else if (key == "u") {
      cfg.functions.push_back(
          blaschke_from_json(parse_json_or_throw(value, "config key u")));
    } else if (key.rfind("tol.", 0) == 0) {
      const std::string name = key.substr(4);
      if (name.empty()) throw DescriptorError("tol. needs a check name");
      cfg.tolerance_overrides[name] = parse_double(value, key);
    } else {
      throw DescriptorError("config line " + std::to_string(line_no) +
                            " has an unknown key: " + key);
    }
  }
  return cfg;
}

CampaignConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  CampaignConfig cfg = parse_config_text(buf.str());
  cfg.validate();
  return cfg;
}

BuiltOperator operator_from_descriptor(const nlohmann::json& desc, int n) {
  require_object(desc, "operator descriptor");
  if (!desc.contains("op") || !desc["op"].is_string()) {
    throw DescriptorError("operator descriptor needs an op name");
  }
  if (n < 2) throw DescriptorError("frame length n must be at least 2");
  const std::string op = desc["op"].get<std::string>();

  const auto need_u = [&]() {
    if (!desc.contains("u")) throw DescriptorError("op " + op + " needs u");
    return blaschke_from_json(desc["u"]);
  };
  const auto need_v = [&]() {
    if (!desc.contains("v")) throw DescriptorError("op " + op + " needs v");
    return blaschke_from_json(desc["v"]);
  };
  const auto need_phi = [&]() {
    if (!desc.contains("phi")) throw DescriptorError("op " + op + " needs phi");
    return symbol_from_json(desc["phi"]);
  };

  BuiltOperator out;
  out.params = nlohmann::json{{"op", op}, {"n", n}};
  if (desc.contains("u")) out.params["u"] = blaschke_to_json(need_u());
  if (desc.contains("v")) out.params["v"] = blaschke_to_json(need_v());
  if (desc.contains("phi")) out.params["phi"] = symbol_to_json(need_phi());

  if (op == "D") {
    out.matrix = build_D(AmbientBasis(need_u(), n));
  } else if (op == "Dstar") {
    out.matrix = build_D_star(AmbientBasis(need_u(), n));
  } else if (op == "Su") {
    out.matrix = build_S_u(ModelSpace::with_tail(need_u(), 1e-12));
  } else if (op == "U") {
    out.matrix = build_U(AmbientBasis(need_u(), n));
  } else if (op == "V") {
    out.matrix = build_V(AmbientBasis(need_u(), n)).matrix;
  } else if (op == "Vinv") {
    out.matrix = build_V(AmbientBasis(need_u(), n)).inverse;
  } else if (op == "W") {
    out.matrix = build_W_uv(AmbientBasis(need_u(), n), AmbientBasis(need_v(), n)).matrix;
  } else if (op == "M") {
    out.matrix = bilateral_shift_matrix(n);
  } else if (op == "Q") {
    out.matrix = q_matrix(n);
  } else if (op == "A_phi") {
    out.matrix = build_truncated_toeplitz(ModelSpace::with_tail(need_u(), 1e-12), need_phi());
  } else if (op == "D_phi") {
    out.matrix = build_dual_tt(AmbientBasis(need_u(), n), need_phi());
  } else if (op == "Hankel") {
    out.matrix = build_hankel(need_phi(), n);
  } else if (op == "SplusSstar") {
    out.matrix = s_plus_sstar_matrix(n);
  } else {
    throw DescriptorError("unknown op: " + op);
  }
  return out;
}

BuiltSubspace subspace_from_descriptor(const nlohmann::json& desc,
                                       const AmbientBasis& basis,
                                       const OperatorMatrix& t) {
  require_object(desc, "subspace descriptor");
  if (!desc.contains("kind") || !desc["kind"].is_string()) {
    throw DescriptorError("subspace descriptor needs a kind");
  }
  const std::string kind = desc["kind"].get<std::string>();

  BuiltSubspace out;
  out.params = nlohmann::json{{"kind", kind}};

  if (kind == "zbar_chain") {
    out.space = zbar_chain_span(basis);
  } else if (kind == "uchain") {
    out.space = uchain_span(basis);
  } else if (kind == "gamma_u_h2") {
    if (!desc.contains("gamma")) throw DescriptorError("gamma_u_h2 needs gamma");
    const BlaschkeProduct gamma = blaschke_from_json(desc["gamma"]);
    out.params["gamma"] = blaschke_to_json(gamma);
    out.space = subspace_gamma_uH2(gamma, basis);
  } else if (kind == "zbar_conj_k") {
    if (!desc.contains("alpha")) throw DescriptorError("zbar_conj_k needs alpha");
    const BlaschkeProduct alpha = blaschke_from_json(desc["alpha"]);
    out.params["alpha"] = blaschke_to_json(alpha);
    out.space = subspace_zbar_conj_K(alpha, basis);
  } else if (kind == "direct_sum") {
    if (!desc.contains("parts") || !desc["parts"].is_array() || desc["parts"].empty()) {
      throw DescriptorError("direct_sum needs a nonempty parts array");
    }
    nlohmann::json parts = nlohmann::json::array();
    bool first = true;
    for (const auto& p : desc["parts"]) {
      BuiltSubspace piece = subspace_from_descriptor(p, basis, t);
      parts.push_back(piece.params);
      if (first) {
        out.space = piece.space;
        first = false;
      } else {
        out.space = direct_sum(out.space, piece.space);
      }
    }
    out.params["parts"] = parts;
  } else if (kind == "pullback" || kind == "char_fn") {
    int count = -1;
    if (desc.contains("count")) {
      if (!desc["count"].is_number_integer()) throw DescriptorError("count must be an integer");
      count = desc["count"].get<int>();
      out.params["count"] = count;
    }
    if (kind == "pullback") {
      if (!desc.contains("w") || !desc["w"].is_object()) {
        throw DescriptorError("pullback needs a w object with alpha and beta");
      }
      const auto& w = desc["w"];
      if (!w.contains("alpha") || !w.contains("beta")) {
        throw DescriptorError("pullback w needs alpha and beta");
      }
      const BlaschkeProduct alpha = blaschke_from_json(w["alpha"]);
      const BlaschkeProduct beta = blaschke_from_json(w["beta"]);
      out.params["w"] = nlohmann::json{{"alpha", blaschke_to_json(alpha)},
                                       {"beta", blaschke_to_json(beta)}};
      out.space = pullback_V_inv(basis, PullbackSymbol::quotient(alpha, beta), count);
    } else {
      if (!desc.contains("arcs") || !desc["arcs"].is_array()) {
        throw DescriptorError("char_fn needs an arcs array");
      }
      ArcUnion arcs;
      for (const auto& a : desc["arcs"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
          throw DescriptorError("arc must be a [start, end] pair of angles");
        }
        arcs.arcs.emplace_back(a[0].get<double>(), a[1].get<double>());
      }
      out.params["arcs"] = desc["arcs"];
      out.space = pullback_V_inv(basis, PullbackSymbol::char_fn(arcs), count);
    }
  } else if (kind == "cyclic") {
    if (!desc.contains("seed")) throw DescriptorError("cyclic needs a seed symbol");
    const FourierVector seed_terms = symbol_from_json(desc["seed"]);
    out.params["seed"] = symbol_to_json(seed_terms);
    const int dim = static_cast<int>(t.entries.cols());
    CVector seed = CVector::Zero(dim);
    for (int j = seed_terms.n_min(); j <= seed_terms.n_max(); ++j) {
      if (seed_terms.at(j) == Complex(0, 0)) continue;
      if (j < 0 || j >= dim) {
        throw DescriptorError("cyclic seed slot " + std::to_string(j) +
                              " is outside the frame");
      }
      seed(j) = seed_terms.at(j);
    }
    if (seed.norm() == 0.0) throw DescriptorError("cyclic seed is zero");
    out.space = cyclic_subspace(t, seed, 4 * dim, 1e-12);
  } else {
    throw DescriptorError("unknown subspace kind: " + kind);
  }
  return out;
}

std::string report_line(const VerificationReport& report) {
  return to_json(report).dump();
}

}  // namespace modelspace
