#pragma once

#include <random>

#include "modelspace/fourier.hpp"
#include "modelspace/linalg.hpp"

namespace modelspace {

// Deterministic generator for the property checks; everything downstream of
// a fixed seed is reproducible across runs.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(gen_);
  }

  Complex complex_box() { return Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0)); }

  // Uniform over the closed disc of the given radius.
  Complex complex_disc(double radius) {
    while (true) {
      Complex z = complex_box();
      if (std::abs(z) <= 1.0) return radius * z;
    }
  }

 private:
  std::mt19937_64 gen_;
};

inline FourierVector random_fourier(Rng& rng, FrequencyBand band) {
  FourierVector f(band);
  for (int j = band.n_min; j <= band.n_max; ++j) f.set(j, rng.complex_box());
  return f;
}

inline CVector random_cvector(Rng& rng, int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_box();
  return v;
}

}  // namespace modelspace
