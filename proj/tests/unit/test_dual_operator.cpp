#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "modelspace/dual_operator.hpp"
#include "modelspace/errors.hpp"
#include "modelspace/model_space.hpp"

using namespace modelspace;

namespace {
const BlaschkeProduct kHalf = BlaschkeProduct::moebius(Complex(0.5, 0));
}

TEST_CASE("ambient frame layout") {
  const AmbientBasis basis(kHalf, 4);
  CHECK(basis.size() == 8);
  CHECK(basis.labels()[0] == "zbar^4");
  CHECK(basis.labels()[3] == "zbar^1");
  CHECK(basis.labels()[4] == "u*z^0");
  CHECK(basis.labels()[7] == "u*z^3");
  CHECK(basis.index_zbar(1) == 3);
  CHECK(basis.index_zbar(4) == 0);
  CHECK(basis.index_uchain(0) == 4);

  // frame is orthonormal to the certified tails
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Complex g = inner_product(basis.element(i), basis.element(j));
      CHECK(std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-11);
    }
  }
}

TEST_CASE("frame coordinates invert the frame expansion") {
  const AmbientBasis basis(kHalf, 4);
  FourierVector f = basis.element(2) + Complex(0, 2) * basis.element(5);
  const CVector c = basis.coordinates(f);
  CHECK(std::abs(c(2) - Complex(1, 0)) < 1e-11);
  CHECK(std::abs(c(5) - Complex(0, 2)) < 1e-11);
  CHECK(basis.escape_mass(f) < 1e-9);
}

TEST_CASE("compression matrix has the exact two-chain structure") {
  const int n = 8;
  const AmbientBasis basis(kHalf, n);
  const OperatorMatrix d = build_D(basis);

  // zbar^j flows down to zbar^{j-1} for j >= 2
  for (int j = 2; j <= n; ++j) {
    CHECK(std::abs(d.entries(basis.index_zbar(j - 1), basis.index_zbar(j)) -
                   Complex(1, 0)) < 1e-13);
  }
  // the bottom of the anti-analytic chain couples into the u-chain with
  // weight conj(u(0)) = -1/2
  CHECK(std::abs(d.entries(basis.index_uchain(0), basis.index_zbar(1)) -
                 Complex(-0.5, 0)) < 1e-13);
  // u z^k steps up the chain
  for (int k = 0; k + 1 < n; ++k) {
    CHECK(std::abs(d.entries(basis.index_uchain(k + 1), basis.index_uchain(k)) -
                   Complex(1, 0)) < 1e-13);
  }
  // top chain column leaks outside the frame and is flagged
  CHECK_FALSE(d.is_interior(basis.index_uchain(n - 1)));
  CHECK(d.is_interior(basis.index_zbar(1)));

  CHECK(std::abs(operator_norm(d.entries) - 1.0) < 1e-12);
}

TEST_CASE("adjoint matrix reverses both chains") {
  const int n = 8;
  const AmbientBasis basis(kHalf, n);
  const OperatorMatrix ds = build_D_star(basis);

  // u z^0 goes back to zbar^1 with weight u(0)
  CHECK(std::abs(ds.entries(basis.index_zbar(1), basis.index_uchain(0)) -
                 Complex(-0.5, 0)) < 1e-13);
  for (int j = 1; j < n; ++j) {
    CHECK(std::abs(ds.entries(basis.index_zbar(j + 1), basis.index_zbar(j)) -
                   Complex(1, 0)) < 1e-13);
  }
  CHECK_FALSE(ds.is_interior(basis.index_zbar(n)));
}

TEST_CASE("defect identities at the origin value 1/2") {
  const int n = 8;
  const AmbientBasis basis(kHalf, n);
  const OperatorMatrix d = build_D(basis);
  const OperatorMatrix ds = build_D_star(basis);
  const CMatrix p = d.entries * ds.entries;

  // (D D*)(u z^0, u z^0) = |u(0)|^2 = 1/4
  CHECK(std::abs(p(basis.index_uchain(0), basis.index_uchain(0)) - Complex(0.25, 0)) <
        1e-13);
  // identity elsewhere on the trusted block
  for (int i : ds.interior_cols) {
    for (int j : ds.interior_cols) {
      if (i == basis.index_uchain(0) && j == basis.index_uchain(0)) continue;
      const Complex expect = i == j ? Complex(1, 0) : Complex(0, 0);
      CHECK(std::abs(p(i, j) - expect) < 1e-13);
    }
  }
}

TEST_CASE("compressed shift on the two dimensional model space of z^2") {
  const ModelSpace model(BlaschkeProduct::power_of_z(2), 16);
  REQUIRE(model.basis().dimension() == 2);
  const OperatorMatrix su = build_S_u(model);
  CHECK(std::abs(su.entries(1, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(su.entries(0, 0)) < 1e-12);
  CHECK(std::abs(su.entries(0, 1)) < 1e-12);
  CHECK(std::abs(su.entries(1, 1)) < 1e-12);
  CHECK(su.domain[0] == "K:e0");
}

TEST_CASE("real symbol compresses to a Hermitian matrix") {
  const ModelSpace model(BlaschkeProduct::power_of_z(2), 16);
  FourierVector sym(FrequencyBand{-1, 1});
  sym.set(-1, Complex(1, 0));
  sym.set(1, Complex(1, 0));
  const OperatorMatrix a = build_truncated_toeplitz(model, sym);
  CHECK(std::abs(a.entries(0, 1) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(a.entries(1, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(a.entries(0, 0)) < 1e-12);
  CHECK(std::abs(a.entries(1, 1)) < 1e-12);
}

TEST_CASE("dual compression with symbol z matches the structural matrix") {
  const int n = 6;
  const AmbientBasis basis(kHalf, n);
  const OperatorMatrix d = build_D(basis);
  const OperatorMatrix dz = build_dual_tt(basis, FourierVector::monomial(1));
  for (int j : dz.interior_cols) {
    if (!d.is_interior(j)) continue;
    CHECK((dz.entries.col(j) - d.entries.col(j)).norm() < 1e-10);
  }
}

TEST_CASE("conjugate Hankel section of zbar^2") {
  const OperatorMatrix h = build_hankel_star(FourierVector::monomial(-2), 4);
  CHECK(h.domain[3] == "zbar^1");
  CHECK(h.codomain[1] == "z^1");
  double off = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if ((i == 1 && j == 3) || (i == 0 && j == 2)) {
        CHECK(std::abs(h.entries(i, j) - Complex(1, 0)) < 1e-15);
      } else {
        off = std::max(off, std::abs(h.entries(i, j)));
      }
    }
  }
  CHECK(off < 1e-15);
}

TEST_CASE("reference shift matrices") {
  const OperatorMatrix s = unilateral_shift_matrix(3);
  CHECK(s.entries(1, 0).real() == 1.0);
  CHECK(s.entries(2, 1).real() == 1.0);
  CHECK_FALSE(s.is_interior(2));

  const OperatorMatrix m = bilateral_shift_matrix(3);
  CHECK(m.domain[0] == "zbar^3");
  CHECK(m.domain[3] == "z^0");
  // zbar^1 -> z^0 across the middle
  CHECK(m.entries(3, 2).real() == 1.0);

  const OperatorMatrix t = s_plus_sstar_matrix(3);
  CHECK(t.entries(1, 0).real() == 1.0);      // left copy shifts up
  CHECK(t.entries(3, 4).real() == 1.0);      // right copy shifts down
  CHECK_FALSE(t.is_interior(2));             // top of the left copy
  CHECK(t.is_interior(5));
}

TEST_CASE("escape mass flags images leaving the frame") {
  const int n = 5;
  const AmbientBasis basis(kHalf, n);
  const FourierVector top = basis.element(basis.index_uchain(n - 1));
  CHECK(basis.escape_mass(shift(top)) == doctest::Approx(1.0).epsilon(1e-10));
}
