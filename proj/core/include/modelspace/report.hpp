#pragma once

#include <string>

#include <json.hpp>

namespace modelspace {

// One executed check: what was measured, against what bound, and whether it
// cleared.  `pass` is always residual <= tolerance with both finite.
struct VerificationReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
};

inline VerificationReport make_report(std::string check, nlohmann::json params,
                                      double residual, double tolerance,
                                      double runtime_ms = 0.0) {
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  r.runtime_ms = runtime_ms;
  return r;
}

inline nlohmann::json to_json(const VerificationReport& r) {
  return nlohmann::json{{"check", r.check},     {"params", r.params},
                        {"residual", r.residual}, {"tolerance", r.tolerance},
                        {"pass", r.pass},         {"runtime_ms", r.runtime_ms}};
}

}  // namespace modelspace
