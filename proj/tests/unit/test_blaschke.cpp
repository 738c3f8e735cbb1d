#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "modelspace/blaschke.hpp"
#include "modelspace/errors.hpp"
#include "modelspace/fourier.hpp"

using namespace modelspace;

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(BlaschkeProduct(Complex(2, 0), {}), DescriptorError);
  CHECK_THROWS_AS(BlaschkeProduct(Complex(1, 0), {Complex(1.0 - 1e-7, 0)}),
                  DescriptorError);
  CHECK_THROWS_AS(BlaschkeProduct::power_of_z(-1), DescriptorError);
  CHECK_NOTHROW(BlaschkeProduct(Complex(0, 1), {Complex(0.9, 0)}));
}

TEST_CASE("degree and origin value are exact") {
  const BlaschkeProduct u(Complex(1, 0), {Complex(0.5, 0), Complex(-0.5, 0)});
  CHECK(u.degree() == 2);
  // exact product formula: (-0.5) * (0.5)
  CHECK(u.value_at_zero().real() == -0.25);
  CHECK(u.value_at_zero().imag() == 0.0);
  CHECK(u.decay_rate() == 0.5);

  CHECK(BlaschkeProduct::power_of_z(3).value_at_zero() == Complex(0, 0));
  CHECK(BlaschkeProduct::moebius(Complex(0.5, 0)).value_at_zero() == Complex(-0.5, 0));
}

TEST_CASE("evaluation sits on the unit circle boundary") {
  const BlaschkeProduct u(Complex(1, 0), {Complex(0.5, 0), Complex(0, 0.3)});
  const double angles[3] = {0.3, 1.7, 4.0};
  for (double t : angles) {
    const Complex z(std::cos(t), std::sin(t));
    CHECK(std::abs(u.eval(z)) == doctest::Approx(1.0).epsilon(1e-13));
  }
  // inside the disc the modulus drops below one
  CHECK(std::abs(u.eval(Complex(0.2, 0.1))) < 1.0);
}

TEST_CASE("evaluation refuses points at reflected poles") {
  const BlaschkeProduct u = BlaschkeProduct::moebius(Complex(0.5, 0));
  CHECK_THROWS_AS(u.eval(Complex(2.0, 0)), PoleProximityError);
}

TEST_CASE("analytic coefficients of a single factor") {
  // u(z) = (z - 1/2)/(1 - z/2) expands to -1/2 + (3/4) z + (3/8) z^2 + ...
  const BlaschkeProduct u = BlaschkeProduct::moebius(Complex(0.5, 0));
  const FourierExpansion e = fourier_coeffs(u, 40);
  CHECK(e.coeffs.at(0).real() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(e.coeffs.at(1).real() == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(e.coeffs.at(2).real() == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(e.coeffs.at(3).real() == doctest::Approx(0.1875).epsilon(1e-13));
  // geometric ratio 1/2 from index 1 on
  for (int k = 1; k < 12; ++k) {
    CHECK(e.coeffs.at(k + 1).real() / e.coeffs.at(k).real() ==
          doctest::Approx(0.5).epsilon(1e-11));
  }
  CHECK(e.tail_bound < 1e-9);
}

TEST_CASE("power of z expands exactly") {
  const FourierExpansion e = fourier_coeffs(BlaschkeProduct::power_of_z(2), 8);
  CHECK(e.tail_bound == 0.0);
  CHECK(std::abs(e.coeffs.at(2) - Complex(1, 0)) < 1e-15);
  double off = 0.0;
  for (int k = 0; k <= 8; ++k) {
    if (k != 2) off = std::max(off, std::abs(e.coeffs.at(k)));
  }
  CHECK(off < 1e-15);
}

TEST_CASE("expansion matches pointwise evaluation") {
  const BlaschkeProduct u(Complex(1, 0), {Complex(0.4, 0.2), Complex(-0.3, 0.1)});
  const int band = band_for_tail(u, 1e-12);
  const FourierExpansion e = fourier_coeffs(u, band);
  const Complex z(0.35, -0.2);
  CHECK(std::abs(evaluate_at(e.coeffs, z) - u.eval(z)) < 1e-11);
}

TEST_CASE("band selection meets the requested tail") {
  const BlaschkeProduct u = BlaschkeProduct::moebius(Complex(0.5, 0));
  const int band = band_for_tail(u, 1e-12);
  CHECK(fourier_coeffs(u, band).tail_bound <= 1e-12);
  // tighter tolerance cannot shrink the band
  CHECK(band_for_tail(u, 1e-14) >= band);
}

TEST_CASE("products concatenate zero lists") {
  const BlaschkeProduct p = product(BlaschkeProduct::moebius(Complex(0.5, 0)),
                                    BlaschkeProduct::moebius(Complex(-0.5, 0)));
  CHECK(p.degree() == 2);
  CHECK(p.value_at_zero().real() == doctest::Approx(-0.25));
  const Complex z(0.6, 0.6);
  CHECK(std::abs(p.eval(z) - BlaschkeProduct::moebius(Complex(0.5, 0)).eval(z) *
                                 BlaschkeProduct::moebius(Complex(-0.5, 0)).eval(z)) <
        1e-14);
}

TEST_CASE("coprimality is a zero-set property") {
  const BlaschkeProduct a = BlaschkeProduct::moebius(Complex(0.5, 0));
  const BlaschkeProduct b = BlaschkeProduct::moebius(Complex(-0.5, 0));
  CHECK(is_coprime(a, b));
  CHECK_FALSE(is_coprime(a, a));
  CHECK(is_coprime(BlaschkeProduct(), a));  // constant has no zeros
}
