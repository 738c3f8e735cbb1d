#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "modelspace/errors.hpp"
#include "modelspace/fourier.hpp"

using namespace modelspace;

namespace {
bool close(Complex a, Complex b, double tol = 1e-14) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("band bookkeeping and coefficient access") {
  FourierVector f(FrequencyBand{-2, 3});
  CHECK(f.band().n_min == -2);
  CHECK(f.band().n_max == 3);
  f.set(-2, Complex(1, 1));
  f.set(3, Complex(0, -2));
  CHECK(close(f.at(-2), Complex(1, 1)));
  CHECK(close(f.at(3), Complex(0, -2)));
  // reads outside the band are zero, writes outside throw
  CHECK(close(f.at(7), Complex(0, 0)));
  CHECK_THROWS_AS(f.set(4, Complex(1, 0)), Error);

  const FourierVector m = FourierVector::monomial(-3, Complex(2, 0));
  CHECK(m.band().n_min == -3);
  CHECK(m.band().n_max == -3);
  CHECK(close(m.at(-3), Complex(2, 0)));
}

TEST_CASE("product of Laurent polynomials") {
  // (1 + 2z)(3 + zbar) = zbar + 5 + 6z
  FourierVector f(FrequencyBand{0, 1});
  f.set(0, Complex(1, 0));
  f.set(1, Complex(2, 0));
  FourierVector g(FrequencyBand{-1, 0});
  g.set(-1, Complex(1, 0));
  g.set(0, Complex(3, 0));
  const FourierVector p = multiply(f, g);
  CHECK(close(p.at(-1), Complex(1, 0)));
  CHECK(close(p.at(0), Complex(5, 0)));
  CHECK(close(p.at(1), Complex(6, 0)));
  CHECK(p.band().n_min == -1);
  CHECK(p.band().n_max == 1);
}

TEST_CASE("multiply with band limit honors the policy") {
  FourierVector f(FrequencyBand{0, 2});
  f.set(0, Complex(1, 0));
  f.set(2, Complex(1, 0));
  const FourierVector g = FourierVector::monomial(2);
  CHECK_THROWS_AS(multiply(f, g, FrequencyBand{0, 3}, OverflowPolicy::Error),
                  BandOverflowError);
  const FourierVector t = multiply(f, g, FrequencyBand{0, 3}, OverflowPolicy::Truncate);
  CHECK(close(t.at(2), Complex(1, 0)));
  CHECK(t.band().n_max <= 3);
}

TEST_CASE("inner product conjugates the second factor") {
  FourierVector f(FrequencyBand{0, 1});
  f.set(0, Complex(1, 0));
  f.set(1, Complex(2, 0));
  FourierVector g(FrequencyBand{0, 1});
  g.set(0, Complex(3, 0));
  g.set(1, Complex(0, 1));
  // <f, g> = 1*conj(3) + 2*conj(i) = 3 - 2i
  CHECK(close(inner_product(f, g), Complex(3, -2)));
  CHECK(f.norm() == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("analytic and anti-analytic parts partition the vector") {
  FourierVector f(FrequencyBand{-2, 2});
  for (int j = -2; j <= 2; ++j) f.set(j, Complex(j, 1));
  const FourierVector fp = project_plus(f);
  const FourierVector fm = project_minus(f);
  CHECK(close(fp.at(0), Complex(0, 1)));
  CHECK(close(fp.at(-1), Complex(0, 0)));
  CHECK(close(fm.at(-2), Complex(-2, 1)));
  CHECK(close(fm.at(0), Complex(0, 0)));
  CHECK((fp + fm - f).norm() == doctest::Approx(0.0));
}

TEST_CASE("shift and analytic backshift") {
  const FourierVector one = shift(FourierVector::monomial(-1));
  CHECK(close(one.at(0), Complex(1, 0)));

  FourierVector f(FrequencyBand{0, 2});
  f.set(0, Complex(1, 0));
  f.set(1, Complex(2, 0));
  f.set(2, Complex(3, 0));
  const FourierVector b = backshift_analytic(f);
  CHECK(close(b.at(0), Complex(2, 0)));
  CHECK(close(b.at(1), Complex(3, 0)));
  CHECK(close(b.at(2), Complex(0, 0)));
}

TEST_CASE("conjugate reflection") {
  FourierVector f(FrequencyBand{0, 1});
  f.set(0, Complex(0, 1));
  f.set(1, Complex(2, 0));
  const FourierVector c = conj_reflect(f);
  CHECK(close(c.at(0), Complex(0, -1)));
  CHECK(close(c.at(-1), Complex(2, 0)));
}

TEST_CASE("anti-analytic profile") {
  // f = 4 zbar^2 + (1+i) zbar
  FourierVector f(FrequencyBand{-2, -1});
  f.set(-2, Complex(4, 0));
  f.set(-1, Complex(1, 1));
  const FourierVector phi = phi_of(f);
  CHECK(close(phi.at(0), Complex(1, -1)));
  CHECK(close(phi.at(1), Complex(4, 0)));
  CHECK(close(phi_at_zero(f), Complex(1, -1)));
}

TEST_CASE("profile identities on a concrete vector") {
  // f = 2 zbar^2 + 3 zbar + 1 + 4z
  FourierVector f(FrequencyBand{-2, 1});
  f.set(-2, Complex(2, 0));
  f.set(-1, Complex(3, 0));
  f.set(0, Complex(1, 0));
  f.set(1, Complex(4, 0));
  const FourierVector fm = project_minus(f);
  const FourierVector fp = project_plus(f);

  // P+(z * f-) is the constant conj(phi(0)) = 3
  const FourierVector lhs4 = project_plus(shift(fm));
  CHECK((lhs4 - FourierVector::monomial(0, Complex(3, 0))).norm() ==
        doctest::Approx(0.0));

  // P-(zbar * f+) = f+(0) zbar = zbar
  const FourierVector lhs2 = project_minus(multiply(FourierVector::monomial(-1), fp));
  CHECK((lhs2 - FourierVector::monomial(-1, Complex(1, 0))).norm() ==
        doctest::Approx(0.0));

  // P+(zbar * f+) = backshift of f+
  const FourierVector lhs3 = project_plus(multiply(FourierVector::monomial(-1), fp));
  CHECK((lhs3 - backshift_analytic(fp)).norm() == doctest::Approx(0.0));

  // P-(z * f-) = conj-reflect(phi) minus its constant term
  const FourierVector lhs1 = project_minus(shift(fm));
  const FourierVector rhs1 =
      conj_reflect(phi_of(f)) - FourierVector::monomial(0, std::conj(phi_at_zero(f)));
  CHECK((lhs1 - rhs1).norm() == doctest::Approx(0.0));
}

TEST_CASE("point evaluation of a Laurent polynomial") {
  FourierVector f(FrequencyBand{-1, 1});
  f.set(-1, Complex(1, 0));
  f.set(0, Complex(1, 0));
  f.set(1, Complex(2, 0));
  // at z = i: 1/i + 1 + 2i = 1 + i
  CHECK(close(evaluate_at(f, Complex(0, 1)), Complex(1, 1)));
}

TEST_CASE("circle samples round trip the coefficients") {
  FourierVector f(FrequencyBand{-2, 2});
  f.set(-2, Complex(0.5, -1));
  f.set(-1, Complex(2, 0));
  f.set(0, Complex(-1, 1));
  f.set(1, Complex(0, 3));
  f.set(2, Complex(1, 0));
  const auto samples = evaluate_on_circle(f, 16);
  const FourierVector back = samples_to_coeffs(samples, FrequencyBand{-2, 2});
  CHECK((back - f).norm() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(samples_to_coeffs(evaluate_on_circle(f, 4), FrequencyBand{-2, 2}),
                  GridTooSmallError);
}

TEST_CASE("trimmed drops numerically empty margins") {
  FourierVector f(FrequencyBand{-3, 3});
  f.set(0, Complex(1, 0));
  f.set(1, Complex(1e-20, 0));
  const FourierVector t = f.trimmed(1e-15);
  CHECK(t.band().n_min == 0);
  CHECK(t.band().n_max == 0);
}
