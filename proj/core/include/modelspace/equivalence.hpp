#pragma once

#include <optional>

#include "modelspace/dual_operator.hpp"

namespace modelspace {

enum class CertificateKind { Unitary, Similarity };

// Invertible map A between two operator frames together with the measured
// quality of A T_src = T_tgt A and of A's unitarity.
struct IntertwinerCertificate {
  CertificateKind kind = CertificateKind::Similarity;
  OperatorMatrix matrix;
  OperatorMatrix inverse;
  double residual_intertwine = 0.0;
  double residual_unitarity = 0.0;
};

// max column norm of (A T_src - T_tgt A) over columns interior for T_src
// whose image under A touches only interior columns of T_tgt.
double intertwine_residual(const CMatrix& a, const OperatorMatrix& t_src,
                           const OperatorMatrix& t_tgt);

// The compression read through the frame identification z^k <-> u z^k.
// In the monomial labels the operator splits into four named blocks.
struct BlockForm {
  OperatorMatrix on_monomials;
  CMatrix shift_block;     // rows/cols z^k
  CMatrix coupling_block;  // rows z^k, cols zbar^j
  CMatrix lower_left;      // rows zbar^j, cols z^k
  CMatrix q_block;         // rows/cols zbar^j
  double resid_shift = 0.0;     // vs the one-sided shift, interior columns
  double resid_coupling = 0.0;  // vs the sampled rank-one section
  double lower_left_max = 0.0;  // exact-zero claim
  double resid_q = 0.0;         // vs the compressed shift
  Complex coupling_entry;       // entry at (z^0, zbar^1)
};

// Identification of the monomial frame [zbar^n..zbar^1, z^0..z^{n-1}] with
// the complement frame: z^k goes to the u z^k slot.  The matrix is the
// identity; unitarity rests on the frame being orthonormal.
OperatorMatrix build_U(const AmbientBasis& basis);

BlockForm conjugated_block_form(const AmbientBasis& basis);

// [zbar^n..zbar^1, z^0..z^{n-1}] -> [L:z^0.., R:z^0..]: identity on the
// analytic half, zbar^j -> R:z^{j-1} on the other.  A permutation.
OperatorMatrix build_flip_L(int n);

// Diagonal similarity onto the two-sided shift frame; blows up as u(0)
// approaches 0.  ZeroAtOriginError / IllConditionedError per the origin
// classification below.
IntertwinerCertificate build_V(const AmbientBasis& basis);

// Diagonal map ambient(u) -> ambient(v), scale conj(v(0))/conj(u(0)) on the
// chain half; unitary exactly when |u(0)| = |v(0)|.
IntertwinerCertificate build_W_uv(const AmbientBasis& bu, const AmbientBasis& bv);

// For u(0) = v(0) = 0: the composition through the flipped block forms,
// an exact frame identification intertwining the two compressions.
IntertwinerCertificate composite_flip_certificate(const AmbientBasis& bu,
                                                  const AmbientBasis& bv);

struct EquivalenceDecision {
  bool unitarily_equivalent = false;
  bool similar = false;
  double mod_u0 = 0.0;
  double mod_v0 = 0.0;
  std::optional<IntertwinerCertificate> certificate;  // present when similar
};

// |u(0)| = |v(0)| (tolerance 1e-10) decides unitary equivalence; zero /
// nonzero agreement of the origin values decides similarity.
EquivalenceDecision decide_unitary_equivalence(const BlaschkeProduct& u,
                                               const BlaschkeProduct& v, int n);

// true when |u(0)| >= 1e-8, false when <= 1e-10; IllConditionedError in the
// gap where neither branch can be certified.
bool origin_value_nonzero(const BlaschkeProduct& u);

}  // namespace modelspace
