#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modelspace/blaschke.hpp"
#include "modelspace/report.hpp"

namespace modelspace {

// Knobs for a verification run.  Everything has a sensible default so an
// empty config runs the full battery on the stock function list.
struct CampaignConfig {
  int n = 64;
  int band_guard = 8;
  std::uint64_t seed = 987654321ull;
  double kappa_a = 0.5;

  // Inner functions to sweep; empty means the stock campaign.
  std::vector<BlaschkeProduct> functions;
  // Suite names to run, in order; empty means all of them.
  std::vector<std::string> suites;
  // Full check name -> replacement tolerance (or floor, for bound checks).
  std::map<std::string, double> tolerance_overrides;

  std::vector<BlaschkeProduct> campaign() const;

  // Throws DescriptorError when the knobs are unusable (n too small for the
  // campaign degrees, non-positive tolerances, unknown suite names).
  void validate() const;
};

std::vector<BlaschkeProduct> default_campaign();

std::vector<std::string> all_suite_names();

// Runs one named suite and returns its reports in execution order.
std::vector<VerificationReport> run_suite(const std::string& name,
                                          const CampaignConfig& cfg);

// Runs the configured suites back to back.
std::vector<VerificationReport> run_campaign(const CampaignConfig& cfg);

}  // namespace modelspace
