#include "modelspace/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "modelspace/equivalence.hpp"
#include "modelspace/model_space.hpp"
#include "modelspace/random.hpp"

namespace modelspace {

namespace {

constexpr double kPi = 3.14159265358979323846;

FourierExpansion expansion_of(const BlaschkeProduct& b, double tail_tol) {
  const int band = b.decay_rate() == 0.0 ? b.degree() : band_for_tail(b, tail_tol);
  return fourier_coeffs(b, band);
}

std::vector<bool> interior_mask(const OperatorMatrix& T) {
  std::vector<bool> mask(static_cast<size_t>(T.entries.cols()), false);
  for (int c : T.interior_cols) mask[static_cast<size_t>(c)] = true;
  return mask;
}

double column_residual(const CMatrix& q, const CVector& v) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.adjoint() * v)).norm();
}

}  // namespace

void validate_arcs(const ArcUnion& arcs) {
  if (arcs.arcs.empty()) throw DescriptorError("arc union: no arcs");
  double total = 0.0;
  std::vector<std::pair<double, double>> sorted = arcs.arcs;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [a, b] : sorted) {
    if (!(a >= 0.0 && b <= 2.0 * kPi && a < b)) {
      throw DescriptorError("arc union: arc endpoints must satisfy 0 <= start < end <= 2*pi");
    }
    total += b - a;
  }
  for (size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i].second > sorted[i + 1].first) {
      throw DescriptorError("arc union: arcs overlap");
    }
  }
  if (!(total > 0.0 && total < 2.0 * kPi)) {
    throw DescriptorError("arc union: total measure must lie strictly between 0 and 2*pi");
  }
}

FourierVector arc_indicator_coeffs(const ArcUnion& arcs, int band) {
  validate_arcs(arcs);
  if (band < 0) throw Error("arc_indicator_coeffs: negative band");
  FourierVector out(FrequencyBand{-band, band});
  for (const auto& [a, b] : arcs.arcs) {
    out.set(0, out.at(0) + Complex((b - a) / (2.0 * kPi), 0.0));
    for (int m = -band; m <= band; ++m) {
      if (m == 0) continue;
      const Complex num = std::exp(Complex(0.0, -m * a)) - std::exp(Complex(0.0, -m * b));
      out.set(m, out.at(m) + num / Complex(0.0, 2.0 * kPi * m));
    }
  }
  return out;
}

double invariance_residual(const OperatorMatrix& T, const SubspaceBasis& S) {
  return invariance_residual(T, S, 1e-12);
}

double invariance_residual(const OperatorMatrix& T, const SubspaceBasis& S,
                           double interior_mass_tol) {
  if (T.domain != S.ambient) {
    throw Error("invariance_residual: subspace ambient does not match the operator domain");
  }
  if (S.dimension() == 0) return 0.0;
  if (static_cast<int>(S.scorable.size()) != S.dimension()) {
    throw Error("invariance_residual: scorable flags out of step with the columns");
  }
  const std::vector<bool> interior = interior_mask(T);
  double worst = 0.0;
  bool scored = false;
  for (int c = 0; c < S.dimension(); ++c) {
    if (!S.scorable[static_cast<size_t>(c)]) continue;
    const CVector b = S.columns.col(c);
    double outside = 0.0;
    for (int i = 0; i < b.size(); ++i) {
      if (!interior[static_cast<size_t>(i)]) outside += std::norm(b(i));
    }
    if (std::sqrt(outside) > interior_mass_tol) continue;
    scored = true;
    worst = std::max(worst, column_residual(S.columns, T.entries * b));
  }
  if (!scored) {
    throw NoScorableColumnsError("invariance_residual: every column escapes the interior");
  }
  return worst;
}

SubspaceBasis zbar_chain_span(const AmbientBasis& basis) {
  const int n = basis.n();
  SubspaceBasis out;
  out.ambient = basis.labels();
  out.columns = CMatrix::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) out.columns(i, i) = 1.0;
  out.scorable.assign(static_cast<size_t>(n), true);
  out.construction = "zbar_chain";
  return out;
}

SubspaceBasis uchain_span(const AmbientBasis& basis) {
  const int n = basis.n();
  SubspaceBasis out;
  out.ambient = basis.labels();
  out.columns = CMatrix::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) out.columns(n + i, i) = 1.0;
  out.scorable.assign(static_cast<size_t>(n), true);
  if (n > 0) out.scorable.back() = false;
  out.construction = "uchain";
  return out;
}

SubspaceBasis subspace_gamma_uH2(const BlaschkeProduct& gamma, const AmbientBasis& basis) {
  const int n = basis.n();
  const FourierExpansion g = expansion_of(gamma, 1e-12);
  const int band = g.coeffs.n_max();
  if (band > n - 1) {
    throw TailTooLargeError("subspace_gamma_uH2: expansion band " + std::to_string(band) +
                            " exceeds the chain length");
  }
  const int cols = n - band;
  CMatrix raw = CMatrix::Zero(2 * n, cols);
  for (int k = 0; k < cols; ++k) {
    for (int i = 0; i <= band; ++i) {
      raw(basis.index_uchain(k + i), k) = g.coeffs.at(i);
    }
  }
  std::vector<int> kept;
  SubspaceBasis out;
  out.ambient = basis.labels();
  out.columns = mgs_orthonormalize(raw, 1e-10, &kept);
  if (static_cast<int>(kept.size()) != cols) {
    throw RankDeficientError("subspace_gamma_uH2: dependent generator family");
  }
  out.scorable.assign(static_cast<size_t>(cols), true);
  if (cols > 0) out.scorable.back() = false;
  out.construction = "gamma_u_h2(deg " + std::to_string(gamma.degree()) + ")";
  return out;
}

SubspaceBasis subspace_zbar_conj_K(const BlaschkeProduct& alpha, const AmbientBasis& basis) {
  const int n = basis.n();
  SubspaceBasis out;
  out.ambient = basis.labels();
  out.construction = "zbar_conj_k(deg " + std::to_string(alpha.degree()) + ")";
  if (alpha.degree() == 0) {
    out.columns = CMatrix::Zero(2 * n, 0);
    return out;
  }
  const int band = alpha.decay_rate() == 0.0 ? alpha.degree()
                                             : band_for_tail(alpha, 1e-12);
  if (band + 1 > n) {
    throw TailTooLargeError("subspace_zbar_conj_K: model basis does not fit the chain");
  }
  const ModelBasis mb = tm_basis(alpha, band);
  CMatrix raw = CMatrix::Zero(2 * n, mb.dimension());
  for (int k = 0; k < mb.dimension(); ++k) {
    const FourierVector& e = mb.vectors[static_cast<size_t>(k)];
    // zbar * conj-reflect(e): coefficient at zbar^i is conj(e(i-1)).
    for (int i = 1; i <= n; ++i) {
      raw(basis.index_zbar(i), k) = std::conj(e.at(i - 1));
    }
  }
  std::vector<int> kept;
  out.columns = mgs_orthonormalize(raw, 1e-10, &kept);
  if (static_cast<int>(kept.size()) != mb.dimension()) {
    throw RankDeficientError("subspace_zbar_conj_K: dependent model basis images");
  }
  out.scorable.assign(static_cast<size_t>(mb.dimension()), true);
  return out;
}

SubspaceBasis direct_sum(const SubspaceBasis& X, const SubspaceBasis& Y) {
  if (X.ambient != Y.ambient) throw Error("direct_sum: mismatched ambient frames");
  if (X.dimension() == 0) return Y;
  if (Y.dimension() == 0) return X;
  const CMatrix cross = X.columns.adjoint() * Y.columns;
  if (cross.cwiseAbs().maxCoeff() > 1e-10) {
    throw NotOrthogonalError("direct_sum: parts are not mutually orthogonal");
  }
  SubspaceBasis out;
  out.ambient = X.ambient;
  out.columns.resize(X.columns.rows(), X.dimension() + Y.dimension());
  out.columns << X.columns, Y.columns;
  out.scorable = X.scorable;
  out.scorable.insert(out.scorable.end(), Y.scorable.begin(), Y.scorable.end());
  out.construction = "direct_sum(" + X.construction + ", " + Y.construction + ")";
  return out;
}

PullbackSymbol PullbackSymbol::quotient(BlaschkeProduct a, BlaschkeProduct b) {
  PullbackSymbol w;
  w.kind = Kind::QuotientInner;
  w.alpha = std::move(a);
  w.beta = std::move(b);
  return w;
}

PullbackSymbol PullbackSymbol::char_fn(ArcUnion a) {
  PullbackSymbol w;
  w.kind = Kind::CharFn;
  w.arcs = std::move(a);
  return w;
}

double charfn_clip_budget(const ArcUnion& arcs, const BlaschkeProduct& u, int n) {
  validate_arcs(arcs);
  if (n < 1) throw Error("charfn_clip_budget: chain length must be positive");
  const int extended = 8 * n;
  const FourierVector wx = arc_indicator_coeffs(arcs, extended);
  const double u0sq = std::norm(u.value_at_zero());
  const int family = (n - 1) / 2 + 1;
  // |c(m)| <= arcs/(pi |m|), so the mass past the extended band is below
  // arcs^2/(pi^2 extended) on each side.
  const double n_arcs = static_cast<double>(arcs.arcs.size());
  const double remainder = 2.0 * (1.0 + u0sq) * n_arcs * n_arcs /
                           (kPi * kPi * static_cast<double>(extended - family));
  double worst = 0.0;
  for (int j = 0; j < family; ++j) {
    double clipped = remainder;
    for (int m = n + j + 1; m <= extended; ++m) clipped += std::norm(wx.at(-m));
    for (int m = n - j; m <= extended; ++m) clipped += u0sq * std::norm(wx.at(m));
    worst = std::max(worst, clipped);
  }
  return std::sqrt(worst);
}

SubspaceBasis pullback_V_inv(const AmbientBasis& basis, const PullbackSymbol& w, int count) {
  if (!origin_value_nonzero(basis.u())) {
    throw ZeroAtOriginError("pullback_V_inv: u vanishes at the origin");
  }
  const Complex scale = std::conj(basis.u().value_at_zero());
  const int n = basis.n();

  FourierVector what;
  int exact_count = 0;
  std::string tag;
  if (w.kind == PullbackSymbol::Kind::QuotientInner) {
    if (!is_coprime(w.alpha, w.beta)) {
      throw DescriptorError("pullback_V_inv: alpha and beta share a zero");
    }
    const FourierExpansion ea = expansion_of(w.alpha, 1e-12);
    const FourierExpansion eb = expansion_of(w.beta, 1e-12);
    what = multiply(conj_reflect(ea.coeffs), eb.coeffs);
    const int analytic_reach = eb.coeffs.n_max();
    exact_count = n - analytic_reach;
    if (exact_count <= 0) {
      throw TailTooLargeError("pullback_V_inv: weight reaches past the chain");
    }
    tag = "pullback(quotient deg " + std::to_string(w.alpha.degree()) + "/" +
          std::to_string(w.beta.degree()) + ")";
  } else {
    what = arc_indicator_coeffs(w.arcs, 2 * n);
    exact_count = (n - 1) / 2 + 1;
    tag = "pullback(char_fn)";
  }

  const int m = count < 0 ? exact_count : count;
  if (m <= 0 || m > 2 * n) throw Error("pullback_V_inv: generator count out of range");

  CMatrix raw = CMatrix::Zero(2 * n, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 1; i <= n; ++i) {
      raw(basis.index_zbar(i), j) = what.at(-i - j);
    }
    for (int k = 0; k < n; ++k) {
      raw(basis.index_uchain(k), j) = scale * what.at(k - j);
    }
  }
  std::vector<int> kept;
  SubspaceBasis out;
  out.ambient = basis.labels();
  out.columns = mgs_orthonormalize(raw, 1e-10, &kept);
  if (static_cast<int>(kept.size()) != m) {
    throw RankDeficientError("pullback_V_inv: dependent generator family");
  }
  out.scorable.assign(static_cast<size_t>(m), false);
  for (int i = 0; i + 1 < exact_count && i < m; ++i) out.scorable[static_cast<size_t>(i)] = true;
  if (w.kind == PullbackSymbol::Kind::CharFn) {
    // The generator Gram is a Toeplitz matrix of the indicator, whose
    // small eigenvalues collapse along the family; directions with a
    // pivot at or below the clip noise are kept in the span but cannot
    // be trusted for scoring.
    const double budget = charfn_clip_budget(w.arcs, basis.u(), n);
    const CMatrix r_upper = out.columns.adjoint() * raw;
    for (int i = 0; i < m; ++i) {
      if (std::abs(r_upper(i, i)) <= 3.0 * budget) {
        out.scorable[static_cast<size_t>(i)] = false;
      }
    }
  }
  out.construction = tag;
  return out;
}

SubspaceBasis cyclic_subspace(const OperatorMatrix& T, const CVector& seed, int n_max,
                              double tol) {
  const int dim = static_cast<int>(T.entries.cols());
  if (seed.size() != dim) throw Error("cyclic_subspace: seed size mismatch");
  const double s0 = seed.norm();
  if (s0 == 0.0) throw Error("cyclic_subspace: zero seed");
  if (n_max <= 0) throw Error("cyclic_subspace: n_max must be positive");

  CMatrix q(dim, std::min(n_max, dim));
  int cols = 0;
  q.col(cols++) = seed / s0;
  bool converged = false;
  while (cols < q.cols()) {
    CVector w = T.entries * q.col(cols - 1);
    // two orthogonalization passes keep the frame orthonormal in bursts of
    // nearly dependent directions
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < cols; ++i) {
        w -= q.col(i) * q.col(i).dot(w);
      }
    }
    const double beta = w.norm();
    if (beta < tol) {
      converged = true;
      break;
    }
    q.col(cols++) = w / beta;
  }
  SubspaceBasis out;
  out.ambient = T.domain;
  out.columns = q.leftCols(cols);
  out.scorable.assign(static_cast<size_t>(cols), true);
  if (!converged && cols > 0) out.scorable.back() = false;
  out.construction = "cyclic(" + T.name + ")";
  return out;
}

PMinusReport classify_pminus_image(const SubspaceBasis& S, const AmbientBasis& basis) {
  if (S.ambient != basis.labels()) {
    throw Error("classify_pminus_image: subspace lives in a different frame");
  }
  const int n = basis.n();
  PMinusReport rep;
  if (S.dimension() == 0) return rep;
  const CMatrix x = S.columns.topRows(n);
  double mx = 0.0;
  for (int c = 0; c < x.cols(); ++c) mx = std::max(mx, x.col(c).norm());
  if (mx < 1e-10) return rep;

  const CMatrix qx = mgs_orthonormalize(x, 1e-10);
  rep.dimension = static_cast<int>(qx.cols());
  if (rep.dimension == n) {
    rep.kind = PMinusKind::All;
    return rep;
  }
  const OperatorMatrix q = q_matrix(n);
  double resid = 0.0;
  for (int c = 0; c < qx.cols(); ++c) {
    resid = std::max(resid, column_residual(qx, q.entries * qx.col(c)));
  }
  rep.predicate_residual = resid;
  if (resid >= 1e-8) {
    throw PredicateFailedError(
        "classify_pminus_image: proper image span is not backshift invariant "
        "(residual " + std::to_string(resid) + ")");
  }
  rep.kind = PMinusKind::ZbarConjK;
  return rep;
}

const char* split_tag_name(SplitTag tag) {
  switch (tag) {
    case SplitTag::Trivial: return "trivial";
    case SplitTag::Hbar20: return "hbar2_0";
    case SplitTag::ZbarConjK: return "zbar_conj_k";
    case SplitTag::GammaUH2: return "gamma_u_h2";
    case SplitTag::Hbar20PlusGammaUH2: return "hbar2_0_plus_gamma_u_h2";
    case SplitTag::ZbarConjKPlusGammaUH2: return "zbar_conj_k_plus_gamma_u_h2";
    case SplitTag::ZbarConjKPlusUH2: return "zbar_conj_k_plus_u_h2";
    case SplitTag::FullAmbient: return "full_ambient";
    case SplitTag::NonSplitting: return "non_splitting";
  }
  return "unknown";
}

OrthoSplitReport classify_orthogonal_sum(const SubspaceBasis& S, const AmbientBasis& basis) {
  OrthoSplitReport rep;
  const OperatorMatrix d = build_D(basis);
  rep.invariance = invariance_residual(d, S);
  if (rep.invariance >= 1e-8) {
    throw NotInvariantError("classify_orthogonal_sum: invariance residual " +
                            std::to_string(rep.invariance));
  }
  const int n = basis.n();
  if (S.dimension() == 0) {
    rep.split = true;
    rep.tag = SplitTag::Trivial;
    return rep;
  }

  const CMatrix qx = mgs_orthonormalize(S.columns.topRows(n), 1e-10);
  const CMatrix qy = mgs_orthonormalize(S.columns.bottomRows(n), 1e-10);
  rep.x_dim = static_cast<int>(qx.cols());
  rep.y_dim = static_cast<int>(qy.cols());

  CMatrix parts = CMatrix::Zero(2 * n, rep.x_dim + rep.y_dim);
  parts.topLeftCorner(n, rep.x_dim) = qx;
  parts.bottomRightCorner(n, rep.y_dim) = qy;
  rep.split_residual = max_projection_residual(S.columns, parts);
  rep.split = rep.split_residual < 1e-8 && rep.x_dim + rep.y_dim == S.dimension();
  if (!rep.split) {
    rep.tag = SplitTag::NonSplitting;
    return rep;
  }

  if (rep.y_dim > 0) {
    CVector chain0 = CVector::Zero(n);
    chain0(0) = 1.0;
    rep.gamma_trivial = column_residual(qy, chain0) < 1e-8;
  }

  const PMinusReport pm = classify_pminus_image(S, basis);
  const bool origin_nonzero = origin_value_nonzero(basis.u());

  if (rep.x_dim == n && rep.y_dim == n) {
    rep.tag = SplitTag::FullAmbient;
  } else if (pm.kind == PMinusKind::Zero) {
    rep.tag = rep.y_dim > 0 ? SplitTag::GammaUH2 : SplitTag::Trivial;
  } else if (origin_nonzero) {
    // A nonvanishing origin value forces the analytic part to be the whole
    // chain whenever the anti-analytic part is nonzero.
    if (!rep.gamma_trivial || rep.y_dim != n) {
      throw PredicateFailedError(
          "classify_orthogonal_sum: nonzero anti-analytic part without the full chain");
    }
    rep.tag = SplitTag::ZbarConjKPlusUH2;
  } else if (pm.kind == PMinusKind::All) {
    rep.tag = rep.y_dim > 0 ? SplitTag::Hbar20PlusGammaUH2 : SplitTag::Hbar20;
  } else {
    rep.tag = rep.y_dim > 0 ? SplitTag::ZbarConjKPlusGammaUH2 : SplitTag::ZbarConjK;
  }
  return rep;
}

ProperContainmentReport proper_containment_example(Complex lambda, int n) {
  if (std::abs(lambda) <= 1e-8) {
    throw ZeroAtOriginError("proper_containment_example: lambda too close to 0");
  }
  if (std::abs(lambda) > 1.0 - 1e-6) {
    throw DescriptorError("proper_containment_example: lambda outside the open disc");
  }
  const BlaschkeProduct alpha = BlaschkeProduct::moebius(lambda);
  const AmbientBasis basis(alpha, n);

  ProperContainmentReport rep;
  rep.inner_space = pullback_V_inv(
      basis, PullbackSymbol::quotient(alpha, BlaschkeProduct::power_of_z(1)), n);
  rep.outer_space = direct_sum(subspace_zbar_conj_K(alpha, basis), uchain_span(basis));
  rep.inner_dim = rep.inner_space.dimension();
  rep.outer_dim = rep.outer_space.dimension();
  rep.containment_residual =
      max_projection_residual(rep.outer_space.columns, rep.inner_space.columns);

  // z - lambda = u * (1 - conj(lambda) z): an exact two-term chain vector.
  CVector witness = CVector::Zero(2 * n);
  witness(basis.index_uchain(0)) = 1.0;
  witness(basis.index_uchain(1)) = -std::conj(lambda);
  rep.witness_distance = column_residual(rep.inner_space.columns, witness);
  return rep;
}

CyclicModelReport cyclic_shift_pair_example(double a, int n, int n_random, uint64_t seed) {
  if (!(std::abs(a) > 0.0 && std::abs(a) < 1.0)) {
    throw DescriptorError("cyclic_shift_pair_example: a must lie in the open disc");
  }
  const OperatorMatrix t = s_plus_sstar_matrix(n);
  CVector start = CVector::Zero(2 * n);
  for (int k = 0; k < n; ++k) {
    const double ak = std::pow(a, k);
    start(k) = ak;
    start(n + k) = ak;
  }
  CyclicModelReport rep;
  rep.cyclic = cyclic_subspace(t, start, 4 * n, 1e-12);

  Rng rng(seed);
  const int deg = 20;
  rep.samples = n_random;
  for (int trial = 0; trial < n_random; ++trial) {
    std::vector<Complex> coeffs(static_cast<size_t>(deg + 1));
    for (auto& c : coeffs) c = rng.complex_box();
    // Horner evaluation of f at the (real) point a.
    Complex fa(0.0, 0.0);
    for (int k = deg; k >= 0; --k) fa = fa * a + coeffs[static_cast<size_t>(k)];
    CVector v = CVector::Zero(2 * n);
    for (int k = 0; k <= deg; ++k) v(k) = coeffs[static_cast<size_t>(k)];
    const Complex tail_scale = fa * (1.0 - a * a);
    for (int k = 0; k < n; ++k) v(n + k) = tail_scale * std::pow(a, k);
    const double r = column_residual(rep.cyclic.columns, v) / v.norm();
    rep.max_membership_residual = std::max(rep.max_membership_residual, r);
  }

  CVector witness = CVector::Zero(2 * n);
  witness(0) = 1.0;
  for (int k = 0; k < n; ++k) witness(n + k) = std::pow(a, k);
  rep.witness_distance = column_residual(rep.cyclic.columns, witness);
  return rep;
}

}  // namespace modelspace
