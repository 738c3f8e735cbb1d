#include "modelspace/linalg.hpp"

#include <Eigen/SVD>

namespace modelspace {

CMatrix to_matrix(const std::vector<FourierVector>& cols, FrequencyBand band) {
  CMatrix out = CMatrix::Zero(band.width(), static_cast<Eigen::Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) {
    for (int j = band.n_min; j <= band.n_max; ++j) {
      out(j - band.n_min, static_cast<Eigen::Index>(c)) = cols[c].at(j);
    }
  }
  return out;
}

double operator_norm(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

int numerical_rank(const CMatrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > tol) ++rank;
  }
  return rank;
}

CMatrix mgs_orthonormalize(const CMatrix& cols, double rank_tol, std::vector<int>* kept) {
  if (kept) kept->clear();
  CMatrix q(cols.rows(), cols.cols());
  Eigen::Index n = 0;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    CVector v = cols.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < n; ++i) v -= q.col(i).dot(v) * q.col(i);
    }
    const double nv = v.norm();
    if (nv <= rank_tol) continue;
    q.col(n) = v / nv;
    if (kept) kept->push_back(static_cast<int>(c));
    ++n;
  }
  return q.leftCols(n);
}

double max_projection_residual(const CMatrix& q, const CMatrix& a) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const CVector v = a.col(c);
    const double r = (v - q * (q.adjoint() * v)).norm();
    if (r > worst) worst = r;
  }
  return worst;
}

double mutual_span_residual(const CMatrix& a, const CMatrix& b, double rank_tol) {
  const CMatrix qa = mgs_orthonormalize(a, rank_tol);
  const CMatrix qb = mgs_orthonormalize(b, rank_tol);
  const double ra = max_projection_residual(qb, a);
  const double rb = max_projection_residual(qa, b);
  return ra > rb ? ra : rb;
}

}  // namespace modelspace
