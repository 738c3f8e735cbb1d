#pragma once

#include <string>
#include <vector>

#include "modelspace/blaschke.hpp"
#include "modelspace/linalg.hpp"
#include "modelspace/model_space.hpp"

namespace modelspace {

// Dense matrix of an operator between two labelled coordinate frames.
// entries(i, j) is the coefficient of codomain label i in the image of
// domain label j.  interior_cols lists the columns on which the matrix is
// structurally reliable: images of the other columns leak outside the
// truncated frame and must not be scored.
struct OperatorMatrix {
  std::string name;
  CMatrix entries;
  std::vector<std::string> domain;
  std::vector<std::string> codomain;
  std::vector<int> interior_cols;

  bool is_interior(int col) const {
    for (int c : interior_cols) {
      if (c == col) return true;
    }
    return false;
  }
};

// Orthonormal frame of the truncated orthogonal complement of the model
// space: [zbar^n, ..., zbar^1, u z^0, ..., u z^{n-1}], rows in that order.
// The two chains are exactly orthogonal; the u-chain is orthonormal up to
// the certified tail of u's expansion.
class AmbientBasis {
 public:
  // margin < 0 selects the default degree(u) + 2.
  AmbientBasis(BlaschkeProduct u, int n, int margin = -1, double tail_tol = 1e-12);

  const BlaschkeProduct& u() const { return u_; }
  const FourierExpansion& u_hat() const { return u_hat_; }
  int n() const { return n_; }
  int margin() const { return margin_; }
  int size() const { return 2 * n_; }

  // Slot of zbar^j, 1 <= j <= n.
  int index_zbar(int j) const { return n_ - j; }
  // Slot of u z^k, 0 <= k <= n-1.
  int index_uchain(int k) const { return n_ + k; }

  const std::vector<std::string>& labels() const { return labels_; }
  const FourierVector& element(int slot) const { return elements_[static_cast<size_t>(slot)]; }

  // Frame coordinates: conjugate coefficients against each element.
  CVector coordinates(const FourierVector& f) const;
  FourierVector to_function(const CVector& coords) const;

  // l2 mass of f not captured by the frame coordinates; meaningful for f in
  // the orthogonal complement of the model space.
  double escape_mass(const FourierVector& f) const;

  CMatrix gram() const;

 private:
  BlaschkeProduct u_;
  int n_;
  int margin_;
  FourierExpansion u_hat_;
  std::vector<FourierVector> elements_;
  std::vector<std::string> labels_;
};

// Compression of multiplication by z to the complement frame.  Exact on
// every column except the top of the u-chain: zbar^j -> zbar^{j-1} for
// j >= 2, zbar^1 -> conj(u(0)) u z^0, u z^k -> u z^{k+1}.
OperatorMatrix build_D(const AmbientBasis& basis);

// Adjoint: zbar^j -> zbar^{j+1} (top escapes), u z^0 -> u(0) zbar^1,
// u z^k -> u z^{k-1}.
OperatorMatrix build_D_star(const AmbientBasis& basis);

// Compression of multiplication by z to the model space, in the
// orthonormal basis, entries computed through the projection.
OperatorMatrix build_S_u(const ModelSpace& model);

// Compression of multiplication by `symbol` to the model space.
OperatorMatrix build_truncated_toeplitz(const ModelSpace& model, const FourierVector& symbol);

// Compression of multiplication by `symbol` to the complement frame.
// Columns whose image leaks more than escape mass 1e-8 outside the frame
// are excluded from interior_cols.
OperatorMatrix build_dual_tt(const AmbientBasis& basis, const FourierVector& symbol);

// Hankel section: rows zbar^n..zbar^1, columns z^0..z^{n-1}, entry at
// (zbar^j, z^k) given by symbol(-j-k).
OperatorMatrix build_hankel(const FourierVector& symbol, int n);

// Adjoint section: rows z^0..z^{n-1}, columns zbar^n..zbar^1, entries
// conj(symbol(-j-k)).
OperatorMatrix build_hankel_star(const FourierVector& symbol, int n);

// Two-sided shift on [zbar^n..zbar^1, z^0..z^{n-1}]: one subdiagonal, top
// column escapes.
OperatorMatrix bilateral_shift_matrix(int n);
// One-sided shift on [z^0..z^{n-1}], top column escapes.
OperatorMatrix unilateral_shift_matrix(int n);
// Backshift on [z^0..z^{n-1}]; exact on every column.
OperatorMatrix backshift_matrix(int n);
// Compression of the shift to [zbar^n..zbar^1]: zbar^1 -> 0; exact.
OperatorMatrix q_matrix(int n);
// Block diagonal shift + backshift on [L:z^0.., R:z^0..].
OperatorMatrix s_plus_sstar_matrix(int n);

}  // namespace modelspace
