#pragma once

#include <vector>

#include "modelspace/blaschke.hpp"
#include "modelspace/fourier.hpp"

namespace modelspace {

// Orthonormal analytic basis of H2 - u H2, coefficients on [0, band_max].
struct ModelBasis {
  std::vector<FourierVector> vectors;
  int band_max = 0;
  double tail_bound = 0.0;  // worst certified tail over the vectors

  int dimension() const { return static_cast<int>(vectors.size()); }
};

// Reproducing kernel at lambda: (1 - conj(u(lambda)) u(z)) / (1 - conj(lambda) z).
struct KernelVector {
  Complex lambda;
  Complex u_at_lambda;
  FourierVector coeffs;
};

enum class ProjectionMethod { Formula, Basis };

// One inner function with its expansion and orthonormal basis, pinned to a
// fixed coefficient band.  All the projection-style operations live here so
// the expansion is computed once.
class ModelSpace {
 public:
  ModelSpace(BlaschkeProduct u, int band_max);

  // Chooses the band from the certified tail.
  static ModelSpace with_tail(BlaschkeProduct u, double tail_tol);

  const BlaschkeProduct& u() const { return u_; }
  const FourierExpansion& u_hat() const { return u_hat_; }
  const ModelBasis& basis() const { return basis_; }
  int band_max() const { return band_max_; }

  // Orthogonal projection onto H2 - u H2.
  //   Formula: P+ f - u P+(conj(u) f), all in coefficients.
  //   Basis:   sum <f, e_k> e_k over the orthonormal basis.
  FourierVector project(const FourierVector& f, ProjectionMethod method) const;

  // C_u f = u * conj(z f); a conjugate-linear involution.
  FourierVector conjugate(const FourierVector& f) const;

  KernelVector kernel(Complex lambda) const;

 private:
  BlaschkeProduct u_;
  int band_max_;
  FourierExpansion u_hat_;
  FourierVector u_bar_;  // conj_reflect of the expansion, cached
  ModelBasis basis_;
};

// Takagi-style orthonormal basis: vector k is the normalized Cauchy factor
// of zero k times the Blaschke factors of the zeros before it.
ModelBasis tm_basis(const BlaschkeProduct& u, int band_max);

FourierVector project_model(const BlaschkeProduct& u, const FourierVector& f,
                            ProjectionMethod method, int band_max);

FourierVector conjugation(const BlaschkeProduct& u, const FourierVector& f, int band_max);

KernelVector kernel(const BlaschkeProduct& u, Complex lambda, int band_max);

}  // namespace modelspace
