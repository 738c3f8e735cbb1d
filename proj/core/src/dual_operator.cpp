#include "modelspace/dual_operator.hpp"

#include <algorithm>
#include <cmath>

namespace modelspace {

namespace {

std::vector<int> all_cols_except(int size, int excluded) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) {
    if (i != excluded) out.push_back(i);
  }
  return out;
}

std::vector<int> all_cols(int size) { return all_cols_except(size, -1); }

}  // namespace

AmbientBasis::AmbientBasis(BlaschkeProduct u, int n, int margin, double tail_tol)
    : u_(std::move(u)), n_(n), margin_(margin < 0 ? u_.degree() + 2 : margin) {
  if (n_ < u_.degree() + margin_) {
    throw Error("AmbientBasis: chain length " + std::to_string(n_) +
                " below degree + margin");
  }
  // Floor the expansion band so the frame's frequency window always reaches
  // n + degree + 8 even for exactly representable inner functions.
  const int band = std::max(band_for_tail(u_, tail_tol), u_.degree() + 9);
  u_hat_ = fourier_coeffs(u_, band);

  elements_.reserve(static_cast<size_t>(2 * n_));
  labels_.reserve(static_cast<size_t>(2 * n_));
  for (int j = n_; j >= 1; --j) {
    elements_.push_back(FourierVector::monomial(-j));
    labels_.push_back("zbar^" + std::to_string(j));
  }
  for (int k = 0; k < n_; ++k) {
    FourierVector e = u_hat_.coeffs;
    for (int s = 0; s < k; ++s) e = shift(e);
    elements_.push_back(std::move(e));
    labels_.push_back("u*z^" + std::to_string(k));
  }
}

CVector AmbientBasis::coordinates(const FourierVector& f) const {
  CVector out(size());
  for (int i = 0; i < size(); ++i) out(i) = inner_product(f, elements_[static_cast<size_t>(i)]);
  return out;
}

FourierVector AmbientBasis::to_function(const CVector& coords) const {
  FourierVector acc;
  for (int i = 0; i < size(); ++i) {
    if (coords(i) != Complex(0, 0)) acc = acc + coords(i) * elements_[static_cast<size_t>(i)];
  }
  return acc;
}

double AmbientBasis::escape_mass(const FourierVector& f) const {
  // Explicit residual vector; the squared-norm difference cancels near
  // machine precision and would floor the result around sqrt(eps).
  const CVector c = coordinates(f);
  FourierVector r = f;
  for (int i = 0; i < size(); ++i) {
    r = r - c(i) * elements_[static_cast<size_t>(i)];
  }
  return r.norm();
}

CMatrix AmbientBasis::gram() const {
  CMatrix g(size(), size());
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      g(i, j) = inner_product(elements_[static_cast<size_t>(i)], elements_[static_cast<size_t>(j)]);
    }
  }
  return g;
}

OperatorMatrix build_D(const AmbientBasis& basis) {
  const int n = basis.n();
  OperatorMatrix out;
  out.name = "D";
  out.domain = basis.labels();
  out.codomain = basis.labels();
  out.entries = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 2; j <= n; ++j) {
    out.entries(basis.index_zbar(j - 1), basis.index_zbar(j)) = 1.0;
  }
  out.entries(basis.index_uchain(0), basis.index_zbar(1)) =
      std::conj(basis.u().value_at_zero());
  for (int k = 0; k + 1 < n; ++k) {
    out.entries(basis.index_uchain(k + 1), basis.index_uchain(k)) = 1.0;
  }
  out.interior_cols = all_cols_except(2 * n, basis.index_uchain(n - 1));
  return out;
}

OperatorMatrix build_D_star(const AmbientBasis& basis) {
  const int n = basis.n();
  OperatorMatrix out;
  out.name = "Dstar";
  out.domain = basis.labels();
  out.codomain = basis.labels();
  out.entries = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 1; j < n; ++j) {
    out.entries(basis.index_zbar(j + 1), basis.index_zbar(j)) = 1.0;
  }
  out.entries(basis.index_zbar(1), basis.index_uchain(0)) = basis.u().value_at_zero();
  for (int k = 1; k < n; ++k) {
    out.entries(basis.index_uchain(k - 1), basis.index_uchain(k)) = 1.0;
  }
  out.interior_cols = all_cols_except(2 * n, basis.index_zbar(n));
  return out;
}

OperatorMatrix build_S_u(const ModelSpace& model) {
  const int d = model.basis().dimension();
  OperatorMatrix out;
  out.name = "Su";
  out.entries = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    out.domain.push_back("K:e" + std::to_string(j));
    out.codomain.push_back("K:e" + std::to_string(j));
  }
  for (int j = 0; j < d; ++j) {
    const FourierVector img =
        model.project(shift(model.basis().vectors[static_cast<size_t>(j)]),
                      ProjectionMethod::Formula);
    for (int i = 0; i < d; ++i) {
      out.entries(i, j) = inner_product(img, model.basis().vectors[static_cast<size_t>(i)]);
    }
  }
  out.interior_cols = all_cols(d);
  return out;
}

OperatorMatrix build_truncated_toeplitz(const ModelSpace& model, const FourierVector& symbol) {
  const int d = model.basis().dimension();
  OperatorMatrix out;
  out.name = "A_phi";
  out.entries = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    out.domain.push_back("K:e" + std::to_string(j));
    out.codomain.push_back("K:e" + std::to_string(j));
  }
  for (int j = 0; j < d; ++j) {
    const FourierVector img =
        model.project(multiply(symbol, model.basis().vectors[static_cast<size_t>(j)]),
                      ProjectionMethod::Formula);
    for (int i = 0; i < d; ++i) {
      out.entries(i, j) = inner_product(img, model.basis().vectors[static_cast<size_t>(i)]);
    }
  }
  out.interior_cols = all_cols(d);
  return out;
}

OperatorMatrix build_dual_tt(const AmbientBasis& basis, const FourierVector& symbol) {
  const int size = basis.size();
  // The projection needs u's expansion wide enough to cover the products.
  const int need = std::max(basis.u_hat().coeffs.n_max(),
                            basis.n() + symbol.n_max() + basis.u().degree() + 4);
  const ModelSpace model(basis.u(), need);
  OperatorMatrix out;
  out.name = "D_phi";
  out.domain = basis.labels();
  out.codomain = basis.labels();
  out.entries = CMatrix::Zero(size, size);
  const double symbol_norm = symbol.norm();
  for (int j = 0; j < size; ++j) {
    const FourierVector g = multiply(symbol, basis.element(j));
    const FourierVector h = g - model.project(g, ProjectionMethod::Formula);
    const CVector coords = basis.coordinates(h);
    out.entries.col(j) = coords;
    if (basis.escape_mass(h) <= 1e-8 * (1.0 + symbol_norm)) {
      out.interior_cols.push_back(j);
    }
  }
  return out;
}

OperatorMatrix build_hankel(const FourierVector& symbol, int n) {
  OperatorMatrix out;
  out.name = "Hankel";
  out.entries = CMatrix::Zero(n, n);
  for (int j = n; j >= 1; --j) out.codomain.push_back("zbar^" + std::to_string(j));
  for (int k = 0; k < n; ++k) out.domain.push_back("z^" + std::to_string(k));
  for (int j = 1; j <= n; ++j) {
    for (int k = 0; k < n; ++k) {
      out.entries(n - j, k) = symbol.at(-j - k);
    }
  }
  out.interior_cols = all_cols(n);
  return out;
}

OperatorMatrix build_hankel_star(const FourierVector& symbol, int n) {
  OperatorMatrix out;
  out.name = "HankelStar";
  out.entries = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) out.codomain.push_back("z^" + std::to_string(k));
  for (int j = n; j >= 1; --j) out.domain.push_back("zbar^" + std::to_string(j));
  for (int k = 0; k < n; ++k) {
    for (int j = 1; j <= n; ++j) {
      out.entries(k, n - j) = std::conj(symbol.at(-j - k));
    }
  }
  out.interior_cols = all_cols(n);
  return out;
}

OperatorMatrix bilateral_shift_matrix(int n) {
  OperatorMatrix out;
  out.name = "M";
  out.entries = CMatrix::Zero(2 * n, 2 * n);
  for (int j = n; j >= 1; --j) out.domain.push_back("zbar^" + std::to_string(j));
  for (int k = 0; k < n; ++k) out.domain.push_back("z^" + std::to_string(k));
  out.codomain = out.domain;
  for (int i = 0; i + 1 < 2 * n; ++i) out.entries(i + 1, i) = 1.0;
  out.interior_cols = all_cols_except(2 * n, 2 * n - 1);
  return out;
}

OperatorMatrix unilateral_shift_matrix(int n) {
  OperatorMatrix out;
  out.name = "S";
  out.entries = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) out.domain.push_back("z^" + std::to_string(k));
  out.codomain = out.domain;
  for (int i = 0; i + 1 < n; ++i) out.entries(i + 1, i) = 1.0;
  out.interior_cols = all_cols_except(n, n - 1);
  return out;
}

OperatorMatrix backshift_matrix(int n) {
  OperatorMatrix out;
  out.name = "Sstar";
  out.entries = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) out.domain.push_back("z^" + std::to_string(k));
  out.codomain = out.domain;
  for (int i = 0; i + 1 < n; ++i) out.entries(i, i + 1) = 1.0;
  out.interior_cols = all_cols(n);
  return out;
}

OperatorMatrix q_matrix(int n) {
  OperatorMatrix out;
  out.name = "Q";
  out.entries = CMatrix::Zero(n, n);
  for (int j = n; j >= 1; --j) out.domain.push_back("zbar^" + std::to_string(j));
  out.codomain = out.domain;
  // Ascending rows are zbar^n .. zbar^1, so the shift toward zbar^{j-1} is
  // the subdiagonal; the zbar^1 column maps to 0 exactly.
  for (int i = 0; i + 1 < n; ++i) out.entries(i + 1, i) = 1.0;
  out.interior_cols = all_cols(n);
  return out;
}

OperatorMatrix s_plus_sstar_matrix(int n) {
  OperatorMatrix out;
  out.name = "SplusSstar";
  out.entries = CMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) out.domain.push_back("L:z^" + std::to_string(k));
  for (int k = 0; k < n; ++k) out.domain.push_back("R:z^" + std::to_string(k));
  out.codomain = out.domain;
  for (int i = 0; i + 1 < n; ++i) {
    out.entries(i + 1, i) = 1.0;          // shift on the left copy
    out.entries(n + i, n + i + 1) = 1.0;  // backshift on the right copy
  }
  out.interior_cols = all_cols_except(2 * n, n - 1);
  return out;
}

}  // namespace modelspace
