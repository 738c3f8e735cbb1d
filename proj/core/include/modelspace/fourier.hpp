#pragma once

#include <complex>
#include <vector>

#include "modelspace/errors.hpp"

namespace modelspace {

using Complex = std::complex<double>;

// Inclusive frequency window [n_min, n_max].
struct FrequencyBand {
  int n_min = 0;
  int n_max = 0;

  int width() const { return n_max - n_min + 1; }
  bool contains(int j) const { return j >= n_min && j <= n_max; }

  static FrequencyBand analytic(int n_max) { return {0, n_max}; }
  // Strictly negative frequencies [n_min, -1].
  static FrequencyBand anti_analytic(int n_min) { return {n_min, -1}; }
  static FrequencyBand hull(const FrequencyBand& a, const FrequencyBand& b) {
    return {a.n_min < b.n_min ? a.n_min : b.n_min,
            a.n_max > b.n_max ? a.n_max : b.n_max};
  }
};

enum class OverflowPolicy { Error, Truncate };

// A circle function known through finitely many Fourier coefficients
// c(n_min), ..., c(n_max).  Value type: every operation returns a new
// vector and never mutates its inputs.
class FourierVector {
 public:
  // Zero function on the band {0}.
  FourierVector() : n_min_(0), coeffs_(1, Complex(0, 0)) {}

  explicit FourierVector(FrequencyBand band)
      : n_min_(band.n_min), coeffs_(band.width(), Complex(0, 0)) {
    if (band.width() <= 0) throw Error("FourierVector: empty band");
  }

  FourierVector(int n_min, std::vector<Complex> coeffs)
      : n_min_(n_min), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error("FourierVector: empty coefficient list");
  }

  static FourierVector monomial(int j, Complex scale = Complex(1, 0)) {
    return FourierVector(j, {scale});
  }

  FrequencyBand band() const { return {n_min_, n_max()}; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_min_ + static_cast<int>(coeffs_.size()) - 1; }

  // Coefficient at frequency j; zero outside the stored band.
  Complex at(int j) const {
    if (j < n_min_ || j > n_max()) return Complex(0, 0);
    return coeffs_[static_cast<size_t>(j - n_min_)];
  }

  // j must lie inside the stored band.
  void set(int j, Complex v) {
    if (j < n_min_ || j > n_max()) throw Error("FourierVector::set: frequency outside band");
    coeffs_[static_cast<size_t>(j - n_min_)] = v;
  }

  const std::vector<Complex>& coeffs() const { return coeffs_; }

  double norm_sq() const;
  double norm() const;
  bool is_zero(double tol = 0.0) const;

  // Hard crop to `to`; coefficients outside are dropped.
  FourierVector truncated(FrequencyBand to) const;

  // Drop leading/trailing coefficients of magnitude <= tol.  The result
  // keeps at least the frequency 0 slot so the band is never empty.
  FourierVector trimmed(double tol = 0.0) const;

 private:
  int n_min_;
  std::vector<Complex> coeffs_;
};

FourierVector operator+(const FourierVector& f, const FourierVector& g);
FourierVector operator-(const FourierVector& f, const FourierVector& g);
FourierVector operator*(Complex a, const FourierVector& f);
inline FourierVector operator*(const FourierVector& f, Complex a) { return a * f; }

// <f, g> = sum_j f(j) * conj(g(j)).
Complex inner_product(const FourierVector& f, const FourierVector& g);

// Pointwise product on the circle = coefficient convolution, exact band.
FourierVector multiply(const FourierVector& f, const FourierVector& g);
// Same, but the result band must fit inside `limit`: coefficients falling
// outside either raise BandOverflowError or are dropped, per `policy`.
FourierVector multiply(const FourierVector& f, const FourierVector& g,
                       FrequencyBand limit, OverflowPolicy policy);

// Keep frequencies j >= 0.
FourierVector project_plus(const FourierVector& f);
// Keep frequencies j <= -1.
FourierVector project_minus(const FourierVector& f);

// Multiplication by z: shifts every frequency up by one.
FourierVector shift(const FourierVector& f);
FourierVector shift(const FourierVector& f, int n_max_limit, OverflowPolicy policy);

// (f - f(0)) / z for analytic f; requires n_min >= 0.
FourierVector backshift_analytic(const FourierVector& f);

// Complex conjugate of the function: coefficients conj(c(-j)).
FourierVector conj_reflect(const FourierVector& f);

// phi_f = zbar * conj(f_-), an analytic vector: phi_f(k) = conj(c(-k-1)).
FourierVector phi_of(const FourierVector& f);
// phi_f evaluated at the origin: conj(c(-1)).
Complex phi_at_zero(const FourierVector& f);

// sum_j c(j) z^j; z = 0 is rejected when the band holds negative frequencies.
Complex evaluate_at(const FourierVector& f, Complex z);

// Samples at the grid points exp(2*pi*i*m/grid), m = 0..grid-1.
std::vector<Complex> evaluate_on_circle(const FourierVector& f, int grid);

// Recover a band of coefficients from grid samples.  Exact (up to rounding)
// when the samples come from a function supported on a band of width <=
// grid; raises GridTooSmallError when grid < band.width().
FourierVector samples_to_coeffs(const std::vector<Complex>& samples, FrequencyBand band);

// Smallest power of two >= 4 * band_width; the sampling default.
int default_grid(int band_width);

}  // namespace modelspace
