// Acceptance gate: runs the full verification campaign at stock settings
// and condenses the reports into one line per acceptance criterion.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "modelspace/io.hpp"
#include "modelspace/verification.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<std::string> checks;
};

const std::vector<Criterion> kCriteria = {
    {1,
     "projection routes agree on random vectors",
     {"projections.formula_vs_basis"}},
    {2,
     "coefficient identities for the half-plane projections",
     {"projections.coefficient_identities"}},
    {3,
     "conjugate model space frames span the same subspace",
     {"model_space.quotient_frames"}},
    {4,
     "structural compression matches the dense projection route",
     {"dual_formula.build_vs_dense", "dual_formula.dense_escape"}},
    {5,
     "defect operators are rank one with the predicted weight",
     {"defect.top_singular_value", "defect.dd_star_rank_one", "defect.d_star_d",
      "defect.commutator_norm", "defect.conjugation_similarity"}},
    {6,
     "conjugated block form has the predicted four blocks",
     {"blocks.lower_left_zero", "blocks.coupling", "blocks.coupling_oracle",
      "blocks.q_block", "blocks.shift_block"}},
    {7,
     "vanishing origin value flips onto shift plus backshift unitarily",
     {"flip.intertwine", "flip.unitary"}},
    {8,
     "nonvanishing origin value gives a similarity onto the two sided shift",
     {"similarity.intertwine", "similarity.inverse_consistency",
      "similarity.v_unitarity_floor", "similarity.non_normality"}},
    {9,
     "pairwise equivalence decisions with certificates",
     {"equivalence.pair_decision", "equivalence.pair_intertwine",
      "equivalence.pair_unitarity", "equivalence.similarity_gap"}},
    {10,
     "constructed invariant subspaces pass the invariance gate",
     {"subspaces.uchain_invariant", "subspaces.zbar_chain_invariant",
      "subspaces.zbar_chain_witness", "subspaces.gamma_uh2_invariant",
      "subspaces.zbar_conj_k_invariant", "subspaces.zbar_conj_k_plus_uchain",
      "subspaces.direct_sum_invariant", "subspaces.direct_sum_conj_k",
      "subspaces.pullback_quotient_invariant", "subspaces.pullback_analytic_weight",
      "subspaces.pullback_antianalytic_weight"}},
    {11,
     "matched truncation proper containment with a distance witness",
     {"examples.proper_containment", "examples.containment_witness",
      "examples.containment_dimensions"}},
    {12,
     "cyclic vector for the shift pair with membership sampling",
     {"examples.cyclic_pair_membership", "examples.cyclic_pair_witness"}},
    {13,
     "approximate point spectrum inside the disc",
     {"examples.approx_eigen"}},
    {14,
     "orthogonal splitting classification over the named cases",
     {"subspaces.classify_trivial", "subspaces.classify_zbar_chain",
      "subspaces.classify_conj_k", "subspaces.classify_gamma",
      "subspaces.classify_chain_plus_gamma", "subspaces.classify_conj_k_plus_gamma",
      "subspaces.classify_full", "subspaces.classify_uchain",
      "subspaces.classify_gamma_nonzero", "subspaces.classify_conj_k_plus_uchain",
      "subspaces.classify_nonsplitting", "subspaces.pminus_zero",
      "subspaces.pminus_all", "subspaces.pminus_conj_k"}},
};

}  // namespace

int main() {
  modelspace::CampaignConfig cfg;
  std::vector<modelspace::VerificationReport> reports;
  try {
    reports = modelspace::run_campaign(cfg);
  } catch (const modelspace::Error& e) {
    std::fprintf(stderr, "campaign failed to run: %s\n", e.what());
    return 1;
  }

  std::map<std::string, int> seen;
  std::map<std::string, int> failed;
  std::map<std::string, double> worst;
  for (const modelspace::VerificationReport& r : reports) {
    ++seen[r.check];
    if (!r.pass) ++failed[r.check];
    const double margin = r.residual - r.tolerance;
    if (!worst.count(r.check) || margin > worst[r.check]) worst[r.check] = margin;
  }

  int passed_criteria = 0;
  for (const Criterion& c : kCriteria) {
    bool ok = true;
    std::string detail;
    for (const std::string& name : c.checks) {
      if (!seen.count(name)) {
        ok = false;
        detail = name + " produced no reports";
        break;
      }
      if (failed.count(name)) {
        ok = false;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s failed %d/%d instance(s)", name.c_str(),
                      failed[name], seen[name]);
        detail = buf;
        break;
      }
    }
    if (ok) ++passed_criteria;
    std::printf("criterion %02d %s  %s%s%s\n", c.id, ok ? "PASS" : "FAIL", c.title,
                detail.empty() ? "" : "  -- ", detail.c_str());
  }

  std::printf("acceptance: %d/%zu criteria pass over %zu reports\n", passed_criteria,
              kCriteria.size(), reports.size());
  return passed_criteria == static_cast<int>(kCriteria.size()) ? 0 : 1;
}
