#pragma once

#include <functional>
#include <vector>

#include "modelspace/fourier.hpp"

namespace modelspace {

// Analytic coefficients of a bounded circle function together with a
// certified bound on the l2 mass of the discarded tail.
struct FourierExpansion {
  FourierVector coeffs;
  double tail_bound = 0.0;
};

// Finite product  c * prod_i (z - zero_i) / (1 - conj(zero_i) z)  with
// |c| = 1 and every zero strictly inside the disc (margin 1e-6).
class BlaschkeProduct {
 public:
  // Constant function 1.
  BlaschkeProduct() : constant_(1, 0) {}

  BlaschkeProduct(Complex constant, std::vector<Complex> zeros);

  // u(z) = z^power.
  static BlaschkeProduct power_of_z(int power);
  // Single factor with the given zero.
  static BlaschkeProduct moebius(Complex zero);

  int degree() const { return static_cast<int>(zeros_.size()); }
  Complex constant() const { return constant_; }
  const std::vector<Complex>& zeros() const { return zeros_; }

  // Rejects z within 1e-9 of a reflected pole 1/conj(zero).
  Complex eval(Complex z) const;

  // Exact product formula c * prod(-zero_i); no cancellation.
  Complex value_at_zero() const;

  // max |zero_i|; the geometric decay rate of the analytic coefficients.
  double decay_rate() const;

 private:
  Complex constant_;
  std::vector<Complex> zeros_;
};

// Concatenate zero lists and multiply constants.
BlaschkeProduct product(const BlaschkeProduct& u, const BlaschkeProduct& v);

// True when no zero of u lies within tol of a zero of v.
bool is_coprime(const BlaschkeProduct& u, const BlaschkeProduct& v, double tol = 1e-8);

// Analytic coefficients of u on [0, band_max] with a certified tail bound
// T = 2 C r^{band_max+1} / (1 - r), C estimated from the computed
// coefficients in log domain.  Exact (tail 0) when every zero is 0.
FourierExpansion fourier_coeffs(const BlaschkeProduct& u, int band_max);

// Smallest band whose certified tail is <= tail_tol; TailTooLargeError when
// no band up to the internal cap achieves it.
int band_for_tail(const BlaschkeProduct& u, double tail_tol);

// Shared expansion helper: sample an analytic function on the default grid
// for [0, band_max], recover coefficients, certify the geometric tail at
// the given decay rate.  Used for Blaschke products, kernels and
// orthonormal model bases, which all decay at the rate of the zeros.
FourierExpansion expand_analytic(const std::function<Complex(Complex)>& sampler,
                                 int band_max, double decay_rate);

}  // namespace modelspace
