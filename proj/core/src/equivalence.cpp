#include "modelspace/equivalence.hpp"

#include <cmath>

namespace modelspace {

namespace {

std::vector<int> iota_cols(int size) {
  std::vector<int> out(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) out[static_cast<size_t>(i)] = i;
  return out;
}

}  // namespace

bool origin_value_nonzero(const BlaschkeProduct& u) {
  const double m = std::abs(u.value_at_zero());
  if (m >= 1e-8) return true;
  if (m <= 1e-10) return false;
  throw IllConditionedError("origin value modulus " + std::to_string(m) +
                            " sits between the zero and nonzero thresholds");
}

double intertwine_residual(const CMatrix& a, const OperatorMatrix& t_src,
                           const OperatorMatrix& t_tgt) {
  const CMatrix lhs = a * t_src.entries;
  const CMatrix rhs = t_tgt.entries * a;
  std::vector<bool> tgt_interior(static_cast<size_t>(t_tgt.entries.cols()), false);
  for (int c : t_tgt.interior_cols) tgt_interior[static_cast<size_t>(c)] = true;

  double worst = 0.0;
  for (int c : t_src.interior_cols) {
    bool clean = true;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (a(r, c) != Complex(0, 0) && !tgt_interior[static_cast<size_t>(r)]) {
        clean = false;
        break;
      }
    }
    if (!clean) continue;
    worst = std::max(worst, (lhs.col(c) - rhs.col(c)).norm());
  }
  return worst;
}

OperatorMatrix build_U(const AmbientBasis& basis) {
  const int n = basis.n();
  OperatorMatrix out;
  out.name = "U";
  out.entries = CMatrix::Identity(2 * n, 2 * n);
  for (int j = n; j >= 1; --j) out.domain.push_back("zbar^" + std::to_string(j));
  for (int k = 0; k < n; ++k) out.domain.push_back("z^" + std::to_string(k));
  out.codomain = basis.labels();
  out.interior_cols = iota_cols(2 * n);
  return out;
}

BlockForm conjugated_block_form(const AmbientBasis& basis) {
  const int n = basis.n();
  const OperatorMatrix u_mat = build_U(basis);
  const OperatorMatrix d = build_D(basis);

  BlockForm out;
  out.on_monomials.name = "UstarDU";
  out.on_monomials.domain = u_mat.domain;
  out.on_monomials.codomain = u_mat.domain;
  out.on_monomials.entries = u_mat.entries.adjoint() * d.entries * u_mat.entries;
  out.on_monomials.interior_cols = d.interior_cols;

  const CMatrix& t = out.on_monomials.entries;
  out.q_block = t.topLeftCorner(n, n);
  out.lower_left = t.topRightCorner(n, n);
  out.coupling_block = t.bottomLeftCorner(n, n);
  out.shift_block = t.bottomRightCorner(n, n);
  out.coupling_entry = out.coupling_block(0, n - 1);  // row z^0, column zbar^1

  const OperatorMatrix s = unilateral_shift_matrix(n);
  double worst = 0.0;
  for (int c : s.interior_cols) {
    worst = std::max(worst, (out.shift_block.col(c) - s.entries.col(c)).norm());
  }
  out.resid_shift = worst;

  // Rank-one section oracle: the symbol u zbar sampled through the
  // expansion, entries conj(symbol(-j-k)).
  const FourierVector symbol = multiply(basis.u_hat().coeffs, FourierVector::monomial(-1));
  const OperatorMatrix oracle = build_hankel_star(symbol, n);
  out.resid_coupling = (out.coupling_block - oracle.entries).cwiseAbs().maxCoeff();

  out.lower_left_max = out.lower_left.cwiseAbs().maxCoeff();
  out.resid_q = (out.q_block - q_matrix(n).entries).cwiseAbs().maxCoeff();
  return out;
}

OperatorMatrix build_flip_L(int n) {
  OperatorMatrix out;
  out.name = "L";
  out.entries = CMatrix::Zero(2 * n, 2 * n);
  for (int j = n; j >= 1; --j) out.domain.push_back("zbar^" + std::to_string(j));
  for (int k = 0; k < n; ++k) out.domain.push_back("z^" + std::to_string(k));
  for (int k = 0; k < n; ++k) out.codomain.push_back("L:z^" + std::to_string(k));
  for (int k = 0; k < n; ++k) out.codomain.push_back("R:z^" + std::to_string(k));
  // z^k (domain slot n+k) -> L:z^k (slot k); zbar^j (domain slot n-j) ->
  // R:z^{j-1} (slot n + j - 1).
  for (int k = 0; k < n; ++k) out.entries(k, n + k) = 1.0;
  for (int j = 1; j <= n; ++j) out.entries(n + j - 1, n - j) = 1.0;
  out.interior_cols = iota_cols(2 * n);
  return out;
}

IntertwinerCertificate build_V(const AmbientBasis& basis) {
  if (!origin_value_nonzero(basis.u())) {
    throw ZeroAtOriginError("build_V: u(0) = 0 admits no similarity onto the two-sided shift");
  }
  const int n = basis.n();
  const Complex u0 = basis.u().value_at_zero();
  const Complex scale = Complex(1, 0) / std::conj(u0);

  IntertwinerCertificate cert;
  cert.matrix.name = "V";
  cert.matrix.domain = basis.labels();
  for (int j = n; j >= 1; --j) cert.matrix.codomain.push_back("zbar^" + std::to_string(j));
  for (int k = 0; k < n; ++k) cert.matrix.codomain.push_back("z^" + std::to_string(k));
  cert.matrix.entries = CMatrix::Identity(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) cert.matrix.entries(n + k, n + k) = scale;
  cert.matrix.interior_cols = iota_cols(2 * n);

  cert.inverse.name = "Vinv";
  cert.inverse.domain = cert.matrix.codomain;
  cert.inverse.codomain = cert.matrix.domain;
  cert.inverse.entries = CMatrix::Identity(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) cert.inverse.entries(n + k, n + k) = std::conj(u0);
  cert.inverse.interior_cols = iota_cols(2 * n);

  cert.residual_intertwine =
      intertwine_residual(cert.matrix.entries, build_D(basis), bilateral_shift_matrix(n));
  cert.residual_unitarity =
      operator_norm(cert.matrix.entries.adjoint() * cert.matrix.entries -
                    CMatrix::Identity(2 * n, 2 * n));
  cert.kind = std::abs(std::abs(u0) - 1.0) <= 1e-10 ? CertificateKind::Unitary
                                                    : CertificateKind::Similarity;
  return cert;
}

IntertwinerCertificate build_W_uv(const AmbientBasis& bu, const AmbientBasis& bv) {
  if (bu.n() != bv.n()) throw Error("build_W_uv: frames of different chain length");
  if (!origin_value_nonzero(bu.u()) || !origin_value_nonzero(bv.u())) {
    throw ZeroAtOriginError("build_W_uv: both origin values must be nonzero");
  }
  const int n = bu.n();
  const Complex u0 = bu.u().value_at_zero();
  const Complex v0 = bv.u().value_at_zero();
  const Complex scale = std::conj(v0) / std::conj(u0);

  IntertwinerCertificate cert;
  cert.matrix.name = "W";
  cert.matrix.domain = bu.labels();
  cert.matrix.codomain = bv.labels();
  cert.matrix.entries = CMatrix::Identity(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) cert.matrix.entries(n + k, n + k) = scale;
  cert.matrix.interior_cols = iota_cols(2 * n);

  cert.inverse.name = "Winv";
  cert.inverse.domain = bv.labels();
  cert.inverse.codomain = bu.labels();
  cert.inverse.entries = CMatrix::Identity(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) cert.inverse.entries(n + k, n + k) = Complex(1, 0) / scale;
  cert.inverse.interior_cols = iota_cols(2 * n);

  cert.residual_intertwine =
      intertwine_residual(cert.matrix.entries, build_D(bu), build_D(bv));
  cert.residual_unitarity =
      operator_norm(cert.matrix.entries.adjoint() * cert.matrix.entries -
                    CMatrix::Identity(2 * n, 2 * n));
  cert.kind = std::abs(std::abs(u0) - std::abs(v0)) <= 1e-10 ? CertificateKind::Unitary
                                                             : CertificateKind::Similarity;
  return cert;
}

IntertwinerCertificate composite_flip_certificate(const AmbientBasis& bu,
                                                  const AmbientBasis& bv) {
  if (bu.n() != bv.n()) throw Error("composite_flip_certificate: frames of different chain length");
  if (origin_value_nonzero(bu.u()) || origin_value_nonzero(bv.u())) {
    throw Error("composite_flip_certificate: requires u(0) = v(0) = 0");
  }
  const int n = bu.n();
  const OperatorMatrix uu = build_U(bu);
  const OperatorMatrix uv = build_U(bv);
  const OperatorMatrix l = build_flip_L(n);  // same permutation for both frames

  IntertwinerCertificate cert;
  cert.matrix.name = "Z";
  cert.matrix.domain = bu.labels();
  cert.matrix.codomain = bv.labels();
  cert.matrix.entries =
      uv.entries * l.entries.adjoint() * l.entries * uu.entries.adjoint();
  cert.matrix.interior_cols = iota_cols(2 * n);

  cert.inverse.name = "Zinv";
  cert.inverse.domain = bv.labels();
  cert.inverse.codomain = bu.labels();
  cert.inverse.entries = cert.matrix.entries.adjoint();
  cert.inverse.interior_cols = iota_cols(2 * n);

  cert.residual_intertwine =
      intertwine_residual(cert.matrix.entries, build_D(bu), build_D(bv));
  cert.residual_unitarity =
      operator_norm(cert.matrix.entries.adjoint() * cert.matrix.entries -
                    CMatrix::Identity(2 * n, 2 * n));
  cert.kind = CertificateKind::Unitary;
  return cert;
}

EquivalenceDecision decide_unitary_equivalence(const BlaschkeProduct& u,
                                               const BlaschkeProduct& v, int n) {
  EquivalenceDecision out;
  out.mod_u0 = std::abs(u.value_at_zero());
  out.mod_v0 = std::abs(v.value_at_zero());
  const bool nu = origin_value_nonzero(u);
  const bool nv = origin_value_nonzero(v);
  if (nu != nv) {
    return out;  // neither similar nor unitarily equivalent
  }
  const AmbientBasis bu(u, n);
  const AmbientBasis bv(v, n);
  out.similar = true;
  if (!nu) {
    out.certificate = composite_flip_certificate(bu, bv);
    out.unitarily_equivalent = true;
    return out;
  }
  out.certificate = build_W_uv(bu, bv);
  out.unitarily_equivalent =
      out.certificate->kind == CertificateKind::Unitary;
  return out;
}

}  // namespace modelspace
