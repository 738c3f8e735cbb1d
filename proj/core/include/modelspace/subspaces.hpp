#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modelspace/dual_operator.hpp"
#include "modelspace/linalg.hpp"
#include "modelspace/report.hpp"

namespace modelspace {

// Orthonormal frame for a subspace of a labelled coordinate space.  The
// scorable flags mark columns whose images under the operator of interest
// stay representable in the truncation; the invariance checker consults
// them in addition to its own interior-mass rule.
struct SubspaceBasis {
  std::vector<std::string> ambient;  // labels of the ambient frame
  CMatrix columns;                   // orthonormal columns in ambient coordinates
  std::vector<bool> scorable;
  std::string construction;

  int dimension() const { return static_cast<int>(columns.cols()); }
};

// Pairwise disjoint arcs (theta_start, theta_end) within [0, 2*pi).
struct ArcUnion {
  std::vector<std::pair<double, double>> arcs;
};

// Fourier coefficients of the indicator function of the arc union on
// [-band, band]: c(0) = total measure / 2pi,
// c(m) = (e^{-im a} - e^{-im b}) / (2 pi i m) summed over arcs (a, b).
FourierVector arc_indicator_coeffs(const ArcUnion& arcs, int band);
// Rejects empty, overlapping, or full-circle arc unions.
void validate_arcs(const ArcUnion& arcs);

// max over scored columns b of ||(I - P P^*) T b||.  A column is scored
// when its flag is set and its mass on T's non-interior columns is below
// the interior mass tolerance (1e-12 by default; approximate constructions
// such as arc indicators need a looser gate).  NoScorableColumnsError when
// nothing qualifies.
double invariance_residual(const OperatorMatrix& T, const SubspaceBasis& S);
double invariance_residual(const OperatorMatrix& T, const SubspaceBasis& S,
                           double interior_mass_tol);

// The two exact coordinate chains.
SubspaceBasis zbar_chain_span(const AmbientBasis& basis);
SubspaceBasis uchain_span(const AmbientBasis& basis);

// Orthonormalized span of gamma * u * z^k for k = 0 .. n-1-band(gamma);
// TailTooLargeError when gamma's expansion does not fit the chain.
SubspaceBasis subspace_gamma_uH2(const BlaschkeProduct& gamma, const AmbientBasis& basis);

// Columns zbar * conj-reflect(e_k) over the orthonormal model basis of
// alpha; dimension = degree(alpha), all inside the zbar chain.
SubspaceBasis subspace_zbar_conj_K(const BlaschkeProduct& alpha, const AmbientBasis& basis);

// Concatenation; the parts must share the ambient frame and be mutually
// orthogonal within 1e-10 (NotOrthogonalError).
SubspaceBasis direct_sum(const SubspaceBasis& X, const SubspaceBasis& Y);

// Weight for the pullback construction: either conj(alpha) * beta with
// alpha, beta coprime finite Blaschke products, or the indicator of an
// arc union.
struct PullbackSymbol {
  enum class Kind { QuotientInner, CharFn };
  Kind kind = Kind::QuotientInner;
  BlaschkeProduct alpha;
  BlaschkeProduct beta;
  ArcUnion arcs;

  static PullbackSymbol quotient(BlaschkeProduct a, BlaschkeProduct b);
  static PullbackSymbol char_fn(ArcUnion a);
};

// Spans of (P^- + conj(u(0)) u P^+)(w * z^j), j = 0 .. count-1, expressed
// directly in ambient coordinates and orthonormalized.  count < 0 selects
// the largest clip-free generator family; RankDeficientError when the
// generators are not independent at cutoff 1e-10; ZeroAtOriginError when
// u(0) = 0.
//
// Arc indicator weights decay like 1/frequency, so their generators lose
// real mass to the frame window.  For that kind the scorable flags keep
// only directions whose orthogonalization pivot exceeds three times the
// clip budget below; the rest of the family is retained as span but is
// too noise-dominated to score.
SubspaceBasis pullback_V_inv(const AmbientBasis& basis, const PullbackSymbol& w,
                             int count = -1);

// Certified upper bound on the coefficient mass any arc indicator
// generator loses outside a frame with n chain slots per side (worst case
// over the clip-free generator family).  This is the accuracy floor of
// the char_fn pullback at that truncation; it decays like 1/sqrt(n).
double charfn_clip_budget(const ArcUnion& arcs, const BlaschkeProduct& u, int n);

// Orthonormalized Krylov family {T^m seed} grown until the increment norm
// falls below tol or n_max vectors are reached.
SubspaceBasis cyclic_subspace(const OperatorMatrix& T, const CVector& seed,
                              int n_max, double tol);

// ---------------------------------------------------------------------------
// Classification

enum class PMinusKind { Zero, All, ZbarConjK };

struct PMinusReport {
  PMinusKind kind = PMinusKind::Zero;
  int dimension = 0;
  double predicate_residual = 0.0;  // backshift-invariance of the image span
};

// Span of the anti-analytic parts of S's columns: Zero below 1e-10, All at
// full chain dimension, otherwise the proper case, gated by the
// backshift-invariance predicate at 1e-8 (PredicateFailedError beyond it).
PMinusReport classify_pminus_image(const SubspaceBasis& S, const AmbientBasis& basis);

enum class SplitTag {
  Trivial,
  Hbar20,
  ZbarConjK,
  GammaUH2,
  Hbar20PlusGammaUH2,
  ZbarConjKPlusGammaUH2,
  ZbarConjKPlusUH2,
  FullAmbient,
  NonSplitting,
};

const char* split_tag_name(SplitTag tag);

struct OrthoSplitReport {
  bool split = false;
  SplitTag tag = SplitTag::NonSplitting;
  int x_dim = 0;            // anti-analytic part
  int y_dim = 0;            // analytic chain part
  bool gamma_trivial = false;  // u z^0 lies in the analytic part
  double invariance = 0.0;
  double split_residual = 0.0;
};

// Decides whether an invariant S equals (P^- S) + (P^+ S) at the truncation
// and names the resulting case for the relevant origin branch.
// NotInvariantError when S fails the 1e-8 invariance gate.
OrthoSplitReport classify_orthogonal_sum(const SubspaceBasis& S, const AmbientBasis& basis);

// ---------------------------------------------------------------------------
// Worked examples

struct ProperContainmentReport {
  SubspaceBasis inner_space;   // pullback at matched truncation
  SubspaceBasis outer_space;   // zbar conj-model-space part plus the full chain
  double containment_residual = 0.0;
  double witness_distance = 0.0;  // distance of z - lambda to the inner space
  int inner_dim = 0;
  int outer_dim = 0;
};

// The proper-containment configuration: u = alpha = Moebius(lambda),
// beta = z.  ZeroAtOriginError at lambda = 0.
ProperContainmentReport proper_containment_example(Complex lambda, int n);

struct CyclicModelReport {
  SubspaceBasis cyclic;
  double max_membership_residual = 0.0;  // over the random sample
  double witness_distance = 0.0;         // of 1 (+) kappa to the subspace
  int samples = 0;
};

// Cyclic subspace of S (+) S* seeded with kappa_a (+) kappa_a, compared on
// random polynomials f against the family f (+) f(a)(1 - a^2) kappa_a.
CyclicModelReport cyclic_shift_pair_example(double a, int n, int n_random,
                                            uint64_t seed);

}  // namespace modelspace
