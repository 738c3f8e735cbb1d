#include "modelspace/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace modelspace {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double FourierVector::norm_sq() const {
  double s = 0;
  for (const Complex& c : coeffs_) s += std::norm(c);
  return s;
}

double FourierVector::norm() const { return std::sqrt(norm_sq()); }

bool FourierVector::is_zero(double tol) const {
  for (const Complex& c : coeffs_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

FourierVector FourierVector::truncated(FrequencyBand to) const {
  FourierVector out(to);
  const int lo = std::max(n_min_, to.n_min);
  const int hi = std::min(n_max(), to.n_max);
  for (int j = lo; j <= hi; ++j) out.set(j, at(j));
  return out;
}

FourierVector FourierVector::trimmed(double tol) const {
  int lo = n_min_;
  int hi = n_max();
  while (lo < hi && std::abs(at(lo)) <= tol && lo != 0) ++lo;
  while (hi > lo && std::abs(at(hi)) <= tol && hi != 0) --hi;
  // An all-zero vector collapses onto {0} rather than keeping an arbitrary
  // far-out frequency slot.
  if (lo == hi && std::abs(at(lo)) <= tol) return FourierVector();
  FourierVector out(FrequencyBand{lo, hi});
  for (int j = lo; j <= hi; ++j) out.set(j, at(j));
  return out;
}

FourierVector operator+(const FourierVector& f, const FourierVector& g) {
  FourierVector out(FrequencyBand::hull(f.band(), g.band()));
  for (int j = out.n_min(); j <= out.n_max(); ++j) out.set(j, f.at(j) + g.at(j));
  return out;
}

FourierVector operator-(const FourierVector& f, const FourierVector& g) {
  FourierVector out(FrequencyBand::hull(f.band(), g.band()));
  for (int j = out.n_min(); j <= out.n_max(); ++j) out.set(j, f.at(j) - g.at(j));
  return out;
}

FourierVector operator*(Complex a, const FourierVector& f) {
  FourierVector out(f.band());
  for (int j = f.n_min(); j <= f.n_max(); ++j) out.set(j, a * f.at(j));
  return out;
}

Complex inner_product(const FourierVector& f, const FourierVector& g) {
  const int lo = std::max(f.n_min(), g.n_min());
  const int hi = std::min(f.n_max(), g.n_max());
  Complex s(0, 0);
  for (int j = lo; j <= hi; ++j) s += f.at(j) * std::conj(g.at(j));
  return s;
}

FourierVector multiply(const FourierVector& f, const FourierVector& g) {
  FourierVector out(FrequencyBand{f.n_min() + g.n_min(), f.n_max() + g.n_max()});
  for (int a = f.n_min(); a <= f.n_max(); ++a) {
    const Complex fa = f.at(a);
    if (fa == Complex(0, 0)) continue;
    for (int b = g.n_min(); b <= g.n_max(); ++b) {
      const int j = a + b;
      out.set(j, out.at(j) + fa * g.at(b));
    }
  }
  return out;
}

FourierVector multiply(const FourierVector& f, const FourierVector& g,
                       FrequencyBand limit, OverflowPolicy policy) {
  FourierVector exact = multiply(f, g);
  if (exact.n_min() >= limit.n_min && exact.n_max() <= limit.n_max) return exact;
  if (policy == OverflowPolicy::Error) {
    double outside = 0;
    for (int j = exact.n_min(); j <= exact.n_max(); ++j) {
      if (!limit.contains(j)) outside += std::norm(exact.at(j));
    }
    if (outside > 0) {
      throw BandOverflowError("multiply: product band [" +
                              std::to_string(exact.n_min()) + "," +
                              std::to_string(exact.n_max()) +
                              "] exceeds limit with escaping mass");
    }
  }
  return exact.truncated(limit);
}

FourierVector project_plus(const FourierVector& f) {
  if (f.n_max() < 0) return FourierVector();
  FourierVector out(FrequencyBand::analytic(f.n_max()));
  for (int j = std::max(0, f.n_min()); j <= f.n_max(); ++j) out.set(j, f.at(j));
  return out;
}

FourierVector project_minus(const FourierVector& f) {
  if (f.n_min() > -1) return FourierVector();
  FourierVector out(FrequencyBand::anti_analytic(f.n_min()));
  for (int j = f.n_min(); j <= std::min(-1, f.n_max()); ++j) out.set(j, f.at(j));
  return out;
}

FourierVector shift(const FourierVector& f) {
  FourierVector out(FrequencyBand{f.n_min() + 1, f.n_max() + 1});
  for (int j = f.n_min(); j <= f.n_max(); ++j) out.set(j + 1, f.at(j));
  return out;
}

FourierVector shift(const FourierVector& f, int n_max_limit, OverflowPolicy policy) {
  FourierVector exact = shift(f);
  if (exact.n_max() <= n_max_limit) return exact;
  if (policy == OverflowPolicy::Error && std::abs(exact.at(exact.n_max())) > 0) {
    throw BandOverflowError("shift: top frequency " + std::to_string(exact.n_max()) +
                            " exceeds limit " + std::to_string(n_max_limit));
  }
  return exact.truncated(FrequencyBand{exact.n_min(), n_max_limit});
}

FourierVector backshift_analytic(const FourierVector& f) {
  if (f.n_min() < 0) throw Error("backshift_analytic: vector has negative frequencies");
  if (f.n_max() == 0) return FourierVector();
  FourierVector out(FrequencyBand::analytic(f.n_max() - 1));
  for (int j = 1; j <= f.n_max(); ++j) out.set(j - 1, f.at(j));
  return out;
}

FourierVector conj_reflect(const FourierVector& f) {
  FourierVector out(FrequencyBand{-f.n_max(), -f.n_min()});
  for (int j = f.n_min(); j <= f.n_max(); ++j) out.set(-j, std::conj(f.at(j)));
  return out;
}

FourierVector phi_of(const FourierVector& f) {
  // phi_f(k) = conj(c(-k-1)) for k >= 0; only negative frequencies of f enter.
  if (f.n_min() > -1) return FourierVector();
  const int top = -f.n_min() - 1;
  FourierVector out(FrequencyBand::analytic(top));
  for (int k = 0; k <= top; ++k) out.set(k, std::conj(f.at(-k - 1)));
  return out;
}

Complex phi_at_zero(const FourierVector& f) { return std::conj(f.at(-1)); }

Complex evaluate_at(const FourierVector& f, Complex z) {
  if (f.n_min() < 0 && std::abs(z) < 1e-14) {
    throw Error("evaluate_at: z = 0 with negative frequencies present");
  }
  // Horner on the analytic part, Horner in 1/z on the anti-analytic part.
  Complex plus(0, 0);
  for (int j = f.n_max(); j >= std::max(0, f.n_min()); --j) plus = plus * z + f.at(j);
  Complex minus(0, 0);
  if (f.n_min() < 0) {
    const Complex w = Complex(1, 0) / z;
    for (int j = f.n_min(); j <= -1; ++j) minus = minus * w + f.at(j);
    minus *= w;  // lowest power contributes w^{-n_min}, ending at w^1 overall
  }
  return plus + minus;
}

std::vector<Complex> evaluate_on_circle(const FourierVector& f, int grid) {
  if (grid < 1) throw GridTooSmallError("evaluate_on_circle: grid < 1");
  std::vector<Complex> out(static_cast<size_t>(grid));
  for (int m = 0; m < grid; ++m) {
    const double theta = 2.0 * kPi * m / grid;
    out[static_cast<size_t>(m)] = evaluate_at(f, Complex(std::cos(theta), std::sin(theta)));
  }
  return out;
}

FourierVector samples_to_coeffs(const std::vector<Complex>& samples, FrequencyBand band) {
  const int grid = static_cast<int>(samples.size());
  if (grid < band.width()) {
    throw GridTooSmallError("samples_to_coeffs: grid " + std::to_string(grid) +
                            " < band width " + std::to_string(band.width()));
  }
  FourierVector out(band);
  for (int j = band.n_min; j <= band.n_max; ++j) {
    Complex s(0, 0);
    for (int m = 0; m < grid; ++m) {
      const double theta = -2.0 * kPi * j * m / grid;
      s += samples[static_cast<size_t>(m)] * Complex(std::cos(theta), std::sin(theta));
    }
    out.set(j, s / static_cast<double>(grid));
  }
  return out;
}

int default_grid(int band_width) {
  int g = 1;
  while (g < 4 * band_width) g *= 2;
  return g;
}

}  // namespace modelspace
