#include "modelspace/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace modelspace {

namespace {
constexpr double kDiscMargin = 1e-6;
constexpr double kPoleTol = 1e-9;
constexpr int kBandCap = 4096;
}  // namespace

BlaschkeProduct::BlaschkeProduct(Complex constant, std::vector<Complex> zeros)
    : constant_(constant), zeros_(std::move(zeros)) {
  if (std::abs(std::abs(constant_) - 1.0) > 1e-12) {
    throw DescriptorError("BlaschkeProduct: |constant| must be 1");
  }
  for (const Complex& z : zeros_) {
    if (std::abs(z) > 1.0 - kDiscMargin) {
      throw DescriptorError("BlaschkeProduct: zero modulus " + std::to_string(std::abs(z)) +
                            " outside the allowed disc radius " + std::to_string(1.0 - kDiscMargin));
    }
  }
}

BlaschkeProduct BlaschkeProduct::power_of_z(int power) {
  if (power < 0) throw DescriptorError("power_of_z: negative power");
  return BlaschkeProduct(Complex(1, 0), std::vector<Complex>(static_cast<size_t>(power), Complex(0, 0)));
}

BlaschkeProduct BlaschkeProduct::moebius(Complex zero) {
  return BlaschkeProduct(Complex(1, 0), {zero});
}

Complex BlaschkeProduct::eval(Complex z) const {
  Complex out = constant_;
  for (const Complex& lam : zeros_) {
    const Complex den = Complex(1, 0) - std::conj(lam) * z;
    if (std::abs(den) < kPoleTol) {
      throw PoleProximityError("BlaschkeProduct::eval: z within 1e-9 of pole 1/conj(zero)");
    }
    out *= (z - lam) / den;
  }
  return out;
}

Complex BlaschkeProduct::value_at_zero() const {
  Complex out = constant_;
  for (const Complex& lam : zeros_) out *= -lam;
  return out;
}

double BlaschkeProduct::decay_rate() const {
  double r = 0;
  for (const Complex& lam : zeros_) r = std::max(r, std::abs(lam));
  return r;
}

BlaschkeProduct product(const BlaschkeProduct& u, const BlaschkeProduct& v) {
  std::vector<Complex> zeros = u.zeros();
  zeros.insert(zeros.end(), v.zeros().begin(), v.zeros().end());
  return BlaschkeProduct(u.constant() * v.constant(), std::move(zeros));
}

bool is_coprime(const BlaschkeProduct& u, const BlaschkeProduct& v, double tol) {
  for (const Complex& a : u.zeros()) {
    for (const Complex& b : v.zeros()) {
      if (std::abs(a - b) < tol) return false;
    }
  }
  return true;
}

FourierExpansion expand_analytic(const std::function<Complex(Complex)>& sampler,
                                 int band_max, double decay_rate) {
  const int grid = default_grid(band_max + 1);
  std::vector<Complex> samples(static_cast<size_t>(grid));
  constexpr double kPi = 3.14159265358979323846;
  for (int m = 0; m < grid; ++m) {
    const double theta = 2.0 * kPi * m / grid;
    samples[static_cast<size_t>(m)] = sampler(Complex(std::cos(theta), std::sin(theta)));
  }
  FourierExpansion out;
  out.coeffs = samples_to_coeffs(samples, FrequencyBand::analytic(band_max));

  const double r = decay_rate;
  if (r <= 0) {
    out.tail_bound = 0.0;
    return out;
  }
  // |c(j)| <= C r^j; estimate log C from the computed window, in log domain
  // so small rates do not underflow, then bound the tail by twice the
  // geometric sum beyond band_max.
  const double logr = std::log(r);
  double log_c = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= band_max; ++j) {
    const double a = std::abs(out.coeffs.at(j));
    if (a > 0) log_c = std::max(log_c, std::log(a) - j * logr);
  }
  if (std::isinf(log_c)) {
    out.tail_bound = 0.0;
    return out;
  }
  const double log_tail = std::log(2.0) + log_c + (band_max + 1) * logr - std::log1p(-r);
  out.tail_bound = std::exp(log_tail);
  return out;
}

FourierExpansion fourier_coeffs(const BlaschkeProduct& u, int band_max) {
  if (band_max < 0) throw Error("fourier_coeffs: negative band");
  const double r = u.decay_rate();
  if (r == 0.0) {
    // c * z^degree exactly.
    if (band_max < u.degree()) {
      throw TailTooLargeError("fourier_coeffs: band " + std::to_string(band_max) +
                              " cannot hold z^" + std::to_string(u.degree()));
    }
    FourierExpansion out;
    out.coeffs = FourierVector(FrequencyBand::analytic(band_max));
    out.coeffs.set(u.degree(), u.constant());
    out.tail_bound = 0.0;
    return out;
  }
  return expand_analytic([&u](Complex z) { return u.eval(z); }, band_max, r);
}

int band_for_tail(const BlaschkeProduct& u, double tail_tol) {
  if (tail_tol <= 0) throw Error("band_for_tail: tolerance must be positive");
  const double r = u.decay_rate();
  if (r == 0.0) return u.degree();
  // Analytic first guess from C <= degree-ish margin, then grow until the
  // certified bound from the actual expansion clears the tolerance.
  int band = std::max(u.degree() + 2,
                      static_cast<int>(std::ceil(std::log(tail_tol * (1 - r) / 4.0) / std::log(r))));
  while (band <= kBandCap) {
    const FourierExpansion e = fourier_coeffs(u, band);
    if (e.tail_bound <= tail_tol) return band;
    band = std::max(band + 8, band * 3 / 2);
  }
  throw TailTooLargeError("band_for_tail: no band up to " + std::to_string(kBandCap) +
                          " certifies tail " + std::to_string(tail_tol));
}

}  // namespace modelspace
