// Coherence metrics for channels: how much interferometric visibility a
// channel (pair) can show, over all Kraus decompositions, and how close a
// channel is to a unitary.
//
// The decomposition-dependent quantities (coherent_fidelity, self_visibility)
// read the first Kraus operator as given. The maxima (max_self_coherence,
// max_coherent_fidelity) and the Raginsky fidelity depend only on the Choi
// state and are invariant under remixing.
#pragma once

#include <cmath>
#include <string>

#include "fringe/channel.hpp"
#include "fringe/error.hpp"
#include "fringe/linalg.hpp"

namespace fringe {

struct CoherenceReport {
  double fidelity = 0.0;   // |tr[u0^dag v0]| / d, in [0, 1]
  double phase = 0.0;      // arg tr[u0^dag v0], in (-pi, pi]; 0 when degenerate
  bool degenerate = false; // set when fidelity < 1e-12 (phase unidentifiable)
};

inline CoherenceReport coherent_fidelity(const KrausChannel& ch_u, const KrausChannel& ch_v) {
  if (ch_u.dim != ch_v.dim)
    raise(Errc::dimension_mismatch, "coherent_fidelity: dims " + std::to_string(ch_u.dim) +
                                        " and " + std::to_string(ch_v.dim) + " differ");
  Complex t = hs_inner(ch_u.ops[0], ch_v.ops[0]);
  CoherenceReport out;
  out.fidelity = std::abs(t) / static_cast<double>(ch_u.dim);
  if (out.fidelity < 1e-12) {
    out.degenerate = true;
    return out;
  }
  out.phase = std::arg(t);
  if (out.phase <= -kPi) out.phase += kTwoPi;
  return out;
}

// Self-coherence of the decomposition as given: v = tr[k0^dag k0] / d.
// Equals 1 exactly when the channel is a single unitary operator.
inline double self_visibility(const KrausChannel& ch) {
  return ch.ops[0].squaredNorm() / static_cast<double>(ch.dim);
}

struct MaxSelfCoherence {
  double v_max = 0.0;      // largest Gram eigenvalue / d
  KrausChannel realizing;  // orthogonal decomposition with the maximizer at index 0
};

// The supremum of self_visibility over all remixes is attained by the
// orthogonal decomposition, whose first (largest-weight) operator carries the
// largest Gram eigenvalue.
inline MaxSelfCoherence max_self_coherence(const KrausChannel& ch) {
  MaxSelfCoherence out;
  out.realizing = orthogonalize(ch).channel;
  out.v_max = self_visibility(out.realizing);
  return out;
}

struct ClosestUnitaryReport {
  ComplexMatrix unitary;   // arm unitary maximizing |tr[k0^dag U]|
  double visibility = 0.0; // v = sum_j sqrt(r_j) / d, r_j eigenvalues of k0^dag k0
  bool degenerate = false; // set when k0 is rank-deficient (maximizer not unique)
};

// Best unitary approximation to the channel's first Kraus operator, via the
// polar decomposition k0 = W S X^dag: the maximizer of |tr[k0^dag U]| is the
// polar unitary W X^dag and the achieved visibility is tr sqrt(k0^dag k0) / d.
// A zero operator is legal (flag channels) and yields visibility 0 with the
// identity as the representative maximizer.
inline ClosestUnitaryReport closest_unitary(const KrausChannel& ch) {
  const ComplexMatrix& k0 = ch.ops[0];
  ClosestUnitaryReport out;
  if (k0.norm() < 1e-12) {
    out.unitary = ComplexMatrix::Identity(ch.dim, ch.dim);
    out.degenerate = true;
    return out;
  }
  SvdResult s = svd(k0);
  out.unitary = s.left * s.right.adjoint();
  out.visibility = s.singulars.sum() / static_cast<double>(ch.dim);
  out.degenerate = s.singulars.minCoeff() < 1e-12;
  return out;
}

struct MaxFidelityReport {
  double max_fidelity = 0.0;    // sigma_max(A) / d
  ComplexVector g0;             // unit vector on the u side: |g0^dag A h0| / d = max_fidelity
  ComplexVector h0;             // unit vector on the v side
  ComplexMatrix overlap_matrix; // A_ij = tr[u_i^dag v_j] over the orthogonal sets
  bool degenerate = false;      // sigma_max < 1e-12: maximizing pair unidentifiable
};

// Maximum of |tr[u0'^dag v0']| / d over remixes of both channels. Working in
// the orthogonal decompositions, a candidate first-operator pair is a unit
// coefficient vector per side and the objective is |g^dag A h|, so the
// maximum is the operator norm of A with (g0, h0) the top singular pair.
inline MaxFidelityReport max_coherent_fidelity(const KrausChannel& ch_u,
                                               const KrausChannel& ch_v) {
  if (ch_u.dim != ch_v.dim)
    raise(Errc::dimension_mismatch, "max_coherent_fidelity: dims " +
                                        std::to_string(ch_u.dim) + " and " +
                                        std::to_string(ch_v.dim) + " differ");
  KrausChannel orth_u = orthogonalize(ch_u).channel;
  KrausChannel orth_v = orthogonalize(ch_v).channel;
  const Index ku = static_cast<Index>(orth_u.ops.size());
  const Index kv = static_cast<Index>(orth_v.ops.size());
  MaxFidelityReport out;
  out.overlap_matrix.resize(ku, kv);
  for (Index i = 0; i < ku; ++i)
    for (Index j = 0; j < kv; ++j)
      out.overlap_matrix(i, j) = hs_inner(orth_u.ops[i], orth_v.ops[j]);
  SvdResult s = svd(out.overlap_matrix);
  out.max_fidelity = s.singulars[0] / static_cast<double>(ch_u.dim);
  out.g0 = s.left.col(0);
  if (s.singulars[0] < 1e-12) {
    out.degenerate = true;
    out.h0 = ComplexVector::Zero(kv);
    out.h0[0] = 1.0;
    return out;
  }
  out.h0 = s.right.col(0);
  return out;
}

// Uhlmann fidelity tr sqrt(sqrt(rho_u) rho_v sqrt(rho_u)) between the two
// Choi states; symmetric, remix-invariant, and 1 exactly when the channels
// are equal as maps.
inline double raginsky_fidelity(const KrausChannel& ch_u, const KrausChannel& ch_v) {
  if (ch_u.dim != ch_v.dim)
    raise(Errc::dimension_mismatch, "raginsky_fidelity: dims " + std::to_string(ch_u.dim) +
                                        " and " + std::to_string(ch_v.dim) + " differ");
  ComplexMatrix root_u = psd_sqrt(kraus_to_choi(ch_u).matrix);
  ComplexMatrix inner = root_u * kraus_to_choi(ch_v).matrix * root_u;
  return psd_sqrt(inner).trace().real();
}

}  // namespace fringe
