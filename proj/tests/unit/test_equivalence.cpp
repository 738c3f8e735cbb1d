#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "modelspace/dual_operator.hpp"
#include "modelspace/equivalence.hpp"
#include "modelspace/errors.hpp"

using namespace modelspace;

TEST_CASE("origin value classification") {
  CHECK(origin_value_nonzero(BlaschkeProduct::moebius(Complex(0.5, 0))));
  CHECK_FALSE(origin_value_nonzero(BlaschkeProduct::power_of_z(1)));
  CHECK_FALSE(origin_value_nonzero(BlaschkeProduct::power_of_z(3)));
  // 1e-9 sits between the certified branches
  CHECK_THROWS_AS(origin_value_nonzero(BlaschkeProduct::moebius(Complex(1e-9, 0))),
                  IllConditionedError);
}

TEST_CASE("frame identification matrix is the identity permutation") {
  const AmbientBasis basis(BlaschkeProduct::moebius(Complex(0.5, 0)), 5);
  const OperatorMatrix u = build_U(basis);
  CHECK((u.entries - CMatrix::Identity(10, 10)).norm() == 0.0);
  CHECK(u.domain[0] == "zbar^5");
  CHECK(u.domain[5] == "z^0");
  CHECK(u.codomain[5] == "u*z^0");
}

TEST_CASE("block form of a degree two product") {
  const BlaschkeProduct u(Complex(1, 0), {Complex(0.5, 0), Complex(-0.5, 0)});
  const int n = 6;
  const BlockForm bf = conjugated_block_form(AmbientBasis(u, n));

  CHECK(bf.lower_left_max == 0.0);
  CHECK(std::abs(bf.coupling_entry - Complex(-0.25, 0)) < 1e-12);
  CHECK(bf.resid_q < 1e-12);
  CHECK(bf.resid_shift < 1e-12);
  CHECK(bf.resid_coupling < 1e-10);
  // the coupling block carries the single corner entry
  double off = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      off = std::max(off, std::abs(bf.coupling_block(i, j)));
    }
  }
  CHECK(off < 1e-12);
}

TEST_CASE("flip permutation wiring") {
  const OperatorMatrix l = build_flip_L(3);
  // analytic half keeps its slots
  CHECK(l.entries(0, 3).real() == 1.0);
  CHECK(l.entries(1, 4).real() == 1.0);
  CHECK(l.entries(2, 5).real() == 1.0);
  // zbar^j lands on the right copy at degree j-1
  CHECK(l.entries(3, 2).real() == 1.0);
  CHECK(l.entries(4, 1).real() == 1.0);
  CHECK(l.entries(5, 0).real() == 1.0);
  CHECK((l.entries.adjoint() * l.entries - CMatrix::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("flip conjugates the vanishing origin compression onto shift plus backshift") {
  const int n = 10;
  const AmbientBasis basis(BlaschkeProduct::power_of_z(2), n);
  const CMatrix a = build_flip_L(n).entries * build_U(basis).entries.adjoint();
  CHECK(intertwine_residual(a, build_D(basis), s_plus_sstar_matrix(n)) < 1e-12);
  CHECK(operator_norm(a.adjoint() * a - CMatrix::Identity(2 * n, 2 * n)) < 1e-12);
}

TEST_CASE("diagonal similarity onto the two sided shift") {
  const int n = 6;
  const AmbientBasis basis(BlaschkeProduct::moebius(Complex(0.5, 0)), n);
  const IntertwinerCertificate cert = build_V(basis);
  CHECK(cert.kind == CertificateKind::Similarity);
  CHECK(cert.residual_intertwine < 1e-12);
  // scale on the chain half is 1/conj(u(0)) = -2
  CHECK(std::abs(cert.matrix.entries(n, n) - Complex(-2, 0)) < 1e-13);
  CHECK(std::abs(cert.matrix.entries(0, 0) - Complex(1, 0)) < 1e-13);
  CHECK(std::abs(cert.inverse.entries(n, n) - Complex(-0.5, 0)) < 1e-13);
  CHECK(operator_norm(cert.matrix.entries * cert.inverse.entries -
                      CMatrix::Identity(2 * n, 2 * n)) < 1e-13);
  // unitarity defect is exactly 1/|u(0)|^2 - 1 = 3
  CHECK(cert.residual_unitarity == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("similarity construction needs a nonvanishing origin value") {
  CHECK_THROWS_AS(build_V(AmbientBasis(BlaschkeProduct::power_of_z(1), 4)),
                  ZeroAtOriginError);
}

TEST_CASE("cross frame map between equal origin moduli is unitary") {
  const int n = 5;
  const AmbientBasis bu(BlaschkeProduct::moebius(Complex(0.5, 0)), n);
  const AmbientBasis bv(BlaschkeProduct::moebius(Complex(0, 0.5)), n);
  const IntertwinerCertificate w = build_W_uv(bu, bv);
  CHECK(w.kind == CertificateKind::Unitary);
  CHECK(w.residual_unitarity < 1e-12);
  CHECK(w.residual_intertwine < 1e-12);
  // scale = conj(v(0))/conj(u(0)) = (i/2)/(-1/2) = -i
  CHECK(std::abs(w.matrix.entries(n, n) - Complex(0, -1)) < 1e-13);
}

TEST_CASE("vanishing origin compressions share one matrix through the flip") {
  const int n = 7;
  const AmbientBasis bu(BlaschkeProduct::power_of_z(1), n);
  const AmbientBasis bv(BlaschkeProduct::power_of_z(2), n);
  const IntertwinerCertificate cert = composite_flip_certificate(bu, bv);
  CHECK(cert.kind == CertificateKind::Unitary);
  CHECK((cert.matrix.entries - CMatrix::Identity(2 * n, 2 * n)).norm() == 0.0);
  CHECK(cert.residual_intertwine < 1e-12);
}

TEST_CASE("equivalence decisions across origin classes") {
  const int n = 12;
  const BlaschkeProduct z1 = BlaschkeProduct::power_of_z(1);
  const BlaschkeProduct z2 = BlaschkeProduct::power_of_z(2);
  const BlaschkeProduct half = BlaschkeProduct::moebius(Complex(0.5, 0));
  const BlaschkeProduct ihalf = BlaschkeProduct::moebius(Complex(0, 0.5));
  const BlaschkeProduct prod(Complex(1, 0), {Complex(0.5, 0), Complex(-0.5, 0)});

  const EquivalenceDecision both_zero = decide_unitary_equivalence(z1, z2, n);
  CHECK(both_zero.similar);
  CHECK(both_zero.unitarily_equivalent);
  REQUIRE(both_zero.certificate.has_value());
  CHECK(both_zero.certificate->kind == CertificateKind::Unitary);

  const EquivalenceDecision same_mod = decide_unitary_equivalence(half, ihalf, n);
  CHECK(same_mod.similar);
  CHECK(same_mod.unitarily_equivalent);
  CHECK(same_mod.mod_u0 == doctest::Approx(0.5));
  CHECK(same_mod.mod_v0 == doctest::Approx(0.5));

  const EquivalenceDecision similar_only = decide_unitary_equivalence(half, prod, n);
  CHECK(similar_only.similar);
  CHECK_FALSE(similar_only.unitarily_equivalent);
  REQUIRE(similar_only.certificate.has_value());
  // |W^H W - I| = |(1/4)^2 / (1/2)^2 - 1| = 3/4
  CHECK(similar_only.certificate->residual_unitarity == doctest::Approx(0.75).epsilon(1e-12));

  const EquivalenceDecision mixed = decide_unitary_equivalence(z1, half, n);
  CHECK_FALSE(mixed.similar);
  CHECK_FALSE(mixed.unitarily_equivalent);
  CHECK_FALSE(mixed.certificate.has_value());
}

TEST_CASE("intertwine residual scores columns whose images stay interior") {
  const int n = 5;
  const OperatorMatrix s = unilateral_shift_matrix(n);
  // the identity intertwines S with itself exactly
  CHECK(intertwine_residual(CMatrix::Identity(n, n), s, s) == 0.0);
  // a diagonal scale breaks it by the scale gap
  CMatrix a = CMatrix::Identity(n, n);
  a(1, 1) = 2.0;
  CHECK(intertwine_residual(a, s, s) > 0.5);
}
