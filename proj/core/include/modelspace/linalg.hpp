#pragma once

#include <Eigen/Dense>
#include <vector>

#include "modelspace/fourier.hpp"

namespace modelspace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Stack vectors as matrix columns over a common frequency window; row i
// holds frequency band.n_min + i.
CMatrix to_matrix(const std::vector<FourierVector>& cols, FrequencyBand band);

// Largest singular value (0 for an empty matrix).
double operator_norm(const CMatrix& m);

// Number of singular values above tol.
int numerical_rank(const CMatrix& m, double tol = 1e-10);

// Modified Gram-Schmidt with one reorthogonalization pass.  Columns whose
// remainder falls below rank_tol are dropped; `kept`, when non-null,
// receives the surviving input column indices in order.
CMatrix mgs_orthonormalize(const CMatrix& cols, double rank_tol = 1e-10,
                           std::vector<int>* kept = nullptr);

// max over columns a of ||a - q q^* a||; q must have orthonormal columns.
double max_projection_residual(const CMatrix& q, const CMatrix& a);

// Span equality measure: the larger of the two one-sided residuals after
// orthonormalizing each side.
double mutual_span_residual(const CMatrix& a, const CMatrix& b, double rank_tol = 1e-10);

}  // namespace modelspace
