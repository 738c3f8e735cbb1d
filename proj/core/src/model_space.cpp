#include "modelspace/model_space.hpp"

#include <cmath>

namespace modelspace {

ModelBasis tm_basis(const BlaschkeProduct& u, int band_max) {
  ModelBasis out;
  out.band_max = band_max;
  const double r = u.decay_rate();
  const std::vector<Complex>& zeros = u.zeros();
  for (size_t k = 0; k < zeros.size(); ++k) {
    const Complex lam = zeros[k];
    const double scale = std::sqrt(1.0 - std::norm(lam));
    auto sampler = [&zeros, k, lam, scale](Complex z) {
      Complex v = scale / (Complex(1, 0) - std::conj(lam) * z);
      for (size_t i = 0; i < k; ++i) {
        v *= (z - zeros[i]) / (Complex(1, 0) - std::conj(zeros[i]) * z);
      }
      return v;
    };
    if (r == 0.0) {
      // All zeros at the origin: vector k is exactly z^k.
      out.vectors.push_back(FourierVector::monomial(static_cast<int>(k))
                                .truncated(FrequencyBand::analytic(band_max)));
      continue;
    }
    FourierExpansion e = expand_analytic(sampler, band_max, r);
    out.tail_bound = std::max(out.tail_bound, e.tail_bound);
    out.vectors.push_back(std::move(e.coeffs));
  }
  return out;
}

ModelSpace::ModelSpace(BlaschkeProduct u, int band_max)
    : u_(std::move(u)), band_max_(band_max) {
  u_hat_ = fourier_coeffs(u_, band_max_);
  u_bar_ = conj_reflect(u_hat_.coeffs);
  basis_ = tm_basis(u_, band_max_);
}

ModelSpace ModelSpace::with_tail(BlaschkeProduct u, double tail_tol) {
  const int band = band_for_tail(u, tail_tol);
  return ModelSpace(std::move(u), band);
}

FourierVector ModelSpace::project(const FourierVector& f, ProjectionMethod method) const {
  if (method == ProjectionMethod::Formula) {
    const FourierVector inner = project_plus(multiply(u_bar_, f));
    return project_plus(f) - multiply(u_hat_.coeffs, inner);
  }
  FourierVector acc;
  for (const FourierVector& e : basis_.vectors) {
    acc = acc + inner_product(f, e) * e;
  }
  return acc;
}

FourierVector ModelSpace::conjugate(const FourierVector& f) const {
  return multiply(u_hat_.coeffs, conj_reflect(shift(f)));
}

KernelVector ModelSpace::kernel(Complex lambda) const {
  if (std::abs(lambda) > 1.0 - 1e-6) {
    throw DescriptorError("kernel: point outside the allowed disc radius");
  }
  KernelVector out;
  out.lambda = lambda;
  out.u_at_lambda = u_.eval(lambda);
  const double rate = std::max(u_.decay_rate(), std::abs(lambda));
  if (rate == 0.0) {
    // u = c z^d and lambda = 0: kernel is 1 - conj(c) u = 1 exactly minus
    // the top coefficient; keep the expansion route's band.
    FourierVector k = FourierVector::monomial(0).truncated(FrequencyBand::analytic(band_max_));
    const FourierExpansion& uh = u_hat_;
    for (int j = 0; j <= band_max_; ++j) {
      k.set(j, k.at(j) - std::conj(out.u_at_lambda) * uh.coeffs.at(j));
    }
    out.coeffs = k;
    return out;
  }
  const Complex ubar = std::conj(out.u_at_lambda);
  const BlaschkeProduct& u = u_;
  FourierExpansion e = expand_analytic(
      [&u, lambda, ubar](Complex z) {
        return (Complex(1, 0) - ubar * u.eval(z)) / (Complex(1, 0) - std::conj(lambda) * z);
      },
      band_max_, rate);
  out.coeffs = std::move(e.coeffs);
  return out;
}

FourierVector project_model(const BlaschkeProduct& u, const FourierVector& f,
                            ProjectionMethod method, int band_max) {
  return ModelSpace(u, band_max).project(f, method);
}

FourierVector conjugation(const BlaschkeProduct& u, const FourierVector& f, int band_max) {
  return ModelSpace(u, band_max).conjugate(f);
}

KernelVector kernel(const BlaschkeProduct& u, Complex lambda, int band_max) {
  return ModelSpace(u, band_max).kernel(lambda);
}

}  // namespace modelspace
