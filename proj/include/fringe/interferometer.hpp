// Mach-Zehnder interferometer with a channel in each arm.
//
// Two simulation routes produce the same fringe: a closed form built from the
// first Kraus operators, and a brute-force evolution of the full
// path (x) ancillas (x) system density matrix through dilation unitaries. The
// second exists to check the first.
//
// Conventions: the upper arm holds the u-channel and picks up the phase
// e^{i phi}; beamsplitters are Hadamards. The detector-0 probability is then
// P0(phi) = 1/2 (1 + Re{e^{-i phi} z}) = 1/2 (1 + v cos(phi - alpha)) with
// z = tr[u0^dag v0 rho] = v e^{i alpha}.
#pragma once

#include <cmath>
#include <vector>

#include "fringe/channel.hpp"
#include "fringe/error.hpp"
#include "fringe/linalg.hpp"

namespace fringe {

struct InterferencePattern {
  std::vector<double> phases;        // uniform grid phi_k = phi_0 + 2 pi k / n
  std::vector<double> probabilities; // P0(phi_k)
};

struct VisibilityEstimate {
  double v = 0.0;      // fringe visibility in [0, 1]
  double alpha = 0.0;  // fringe shift in (-pi, pi]; 0 when degenerate
  bool degenerate = false; // set when v < 1e-12 (alpha unidentifiable)
};

// z = tr[u0^dag v0 rho] where u0, v0 are the first Kraus operators. Reduces
// to tr[rho U^dag V] for single-operator unitary channels.
inline Complex complex_visibility(const KrausChannel& ch_u, const KrausChannel& ch_v,
                                  const DensityMatrix& rho) {
  if (ch_u.dim != ch_v.dim || ch_u.dim != rho.dim)
    raise(Errc::dimension_mismatch,
          "complex_visibility: dims " + std::to_string(ch_u.dim) + ", " +
              std::to_string(ch_v.dim) + ", " + std::to_string(rho.dim) + " differ");
  return (ch_u.ops[0].adjoint() * ch_v.ops[0] * rho.matrix).trace();
}

namespace detail {

inline void require_samples(Index n) {
  if (n < 3)
    raise(Errc::bad_sample_count,
          "simulate: need at least 3 samples, got " + std::to_string(n));
}

}  // namespace detail

// Closed-form fringe on the uniform grid phi_k = 2 pi k / n.
inline InterferencePattern simulate_pattern(const KrausChannel& ch_u, const KrausChannel& ch_v,
                                            const DensityMatrix& rho, Index n_samples) {
  detail::require_samples(n_samples);
  Complex z = complex_visibility(ch_u, ch_v, rho);
  InterferencePattern p;
  p.phases.reserve(static_cast<std::size_t>(n_samples));
  p.probabilities.reserve(static_cast<std::size_t>(n_samples));
  for (Index k = 0; k < n_samples; ++k) {
    double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(n_samples);
    p.phases.push_back(phi);
    p.probabilities.push_back(0.5 * (1.0 + (std::exp(Complex(0.0, -phi)) * z).real()));
  }
  return p;
}

// Brute-force oracle: evolves the full density matrix on
// path (x) E (x) F (x) system, where E and F are the ancillas of the two
// dilations. The network is beamsplitter, controlled dilation unitaries
// (u-channel on the upper path, v-channel on the lower), phase e^{i phi} on
// the upper path, beamsplitter, then a path-0 measurement.
inline InterferencePattern simulate_pattern_dilated(const StinespringDilation& dil_u,
                                                    const StinespringDilation& dil_v,
                                                    const DensityMatrix& rho, Index n_samples) {
  if (dil_u.dim != dil_v.dim || dil_u.dim != rho.dim)
    raise(Errc::dimension_mismatch,
          "simulate_pattern_dilated: dims " + std::to_string(dil_u.dim) + ", " +
              std::to_string(dil_v.dim) + ", " + std::to_string(rho.dim) + " differ");
  detail::require_samples(n_samples);
  const Index d = dil_u.dim;
  const Index ke = dil_u.anc_dim;
  const Index kf = dil_v.anc_dim;

  // Any unitary completion works: the ancillas start in basis state 0 and the
  // appended columns are never applied to the initial subspace.
  ComplexMatrix u_full = complete_to_unitary(dil_u.isometry); // acts on E (x) system
  ComplexMatrix v_full = complete_to_unitary(dil_v.isometry); // acts on F (x) system

  // Embed into the arm space E (x) F (x) system, composite index e*kf*d + f*d + s.
  const Index n_arm = ke * kf * d;
  ComplexMatrix u_arm = ComplexMatrix::Zero(n_arm, n_arm);
  for (Index e = 0; e < ke; ++e)
    for (Index ep = 0; ep < ke; ++ep)
      for (Index f = 0; f < kf; ++f)
        for (Index s = 0; s < d; ++s)
          for (Index sp = 0; sp < d; ++sp)
            u_arm((e * kf + f) * d + s, (ep * kf + f) * d + sp) = u_full(e * d + s, ep * d + sp);
  ComplexMatrix v_arm = ComplexMatrix::Zero(n_arm, n_arm);
  for (Index f = 0; f < kf; ++f)
    for (Index fp = 0; fp < kf; ++fp)
      for (Index e = 0; e < ke; ++e)
        for (Index s = 0; s < d; ++s)
          for (Index sp = 0; sp < d; ++sp)
            v_arm((e * kf + f) * d + s, (e * kf + fp) * d + sp) = v_full(f * d + s, fp * d + sp);

  // Controlled extensions on path (x) arm: u on path 1, v on path 0.
  const Index n_tot = 2 * n_arm;
  ComplexMatrix ctrl_u = ComplexMatrix::Identity(n_tot, n_tot);
  ctrl_u.block(n_arm, n_arm, n_arm, n_arm) = u_arm;
  ComplexMatrix ctrl_v = ComplexMatrix::Identity(n_tot, n_tot);
  ctrl_v.block(0, 0, n_arm, n_arm) = v_arm;

  ComplexMatrix hadamard(2, 2);
  hadamard << 1, 1, 1, -1;
  hadamard /= std::sqrt(2.0);
  ComplexMatrix bs = kron(hadamard, ComplexMatrix::Identity(n_arm, n_arm));

  // Initial state |0>_path (x) |0>_E (x) |0>_F (x) rho.
  ComplexMatrix rho_tot = ComplexMatrix::Zero(n_tot, n_tot);
  rho_tot.block(0, 0, d, d) = rho.matrix;

  // Everything except the phase is phi-independent: with
  // M(phi) = BS P(phi) CU CV BS, precompute rho1 = (CU CV BS) rho (CU CV BS)^dag
  // and fold the final beamsplitter and projector into Q = BS^dag Pi0 BS, so
  // P0(phi) = tr[Q P(phi) rho1 P(phi)^dag].
  ComplexMatrix pre = ctrl_u * ctrl_v * bs;
  ComplexMatrix rho1 = pre * rho_tot * pre.adjoint();
  ComplexMatrix proj0 = ComplexMatrix::Zero(n_tot, n_tot);
  proj0.block(0, 0, n_arm, n_arm) = ComplexMatrix::Identity(n_arm, n_arm);
  ComplexMatrix q = bs.adjoint() * proj0 * bs;

  InterferencePattern p;
  p.phases.reserve(static_cast<std::size_t>(n_samples));
  p.probabilities.reserve(static_cast<std::size_t>(n_samples));
  ComplexVector phase_vec = ComplexVector::Ones(n_tot);
  for (Index k = 0; k < n_samples; ++k) {
    double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(n_samples);
    Complex upper = std::exp(Complex(0.0, phi));
    for (Index a = n_arm; a < n_tot; ++a) phase_vec[a] = upper;
    ComplexMatrix rho2 = rho1.cwiseProduct(phase_vec * phase_vec.adjoint());
    p.phases.push_back(phi);
    // tr[Q rho2] without forming the product.
    p.probabilities.push_back(q.transpose().cwiseProduct(rho2).sum().real());
  }
  return p;
}

// Polar form of a complex visibility: v = |z| clamped to [0, 1], alpha =
// arg z in (-pi, pi], with the same degeneracy rule as extract_visibility.
inline VisibilityEstimate visibility_from_z(Complex z) {
  VisibilityEstimate est;
  est.v = std::min(1.0, std::abs(z));
  if (est.v < 1e-12) {
    est.v = std::max(0.0, est.v);
    est.alpha = 0.0;
    est.degenerate = true;
    return est;
  }
  est.alpha = std::arg(z);
  if (est.alpha <= -kPi) est.alpha += kTwoPi;
  return est;
}

// Recovers (v, alpha) by projecting 2 P0 - 1 onto the grid's fundamental
// harmonic: F = (1/n) sum_k (2 p_k - 1) e^{-i phi_k} equals (v/2) e^{-i alpha}
// exactly for any uniform full-period grid with n >= 3, so the inversion is
// exact on noiseless cosine input.
inline VisibilityEstimate extract_visibility(const InterferencePattern& p) {
  const Index n = static_cast<Index>(p.phases.size());
  if (n != static_cast<Index>(p.probabilities.size()))
    raise(Errc::dimension_mismatch, "extract_visibility: phase/probability count mismatch");
  if (n < 3)
    raise(Errc::too_few_samples,
          "extract_visibility: need at least 3 samples, got " + std::to_string(n));
  for (Index k = 0; k < n; ++k)
    if (!std::isfinite(p.phases[static_cast<std::size_t>(k)]) ||
        !std::isfinite(p.probabilities[static_cast<std::size_t>(k)]))
      raise(Errc::non_finite, "extract_visibility: non-finite sample");
  const double step = kTwoPi / static_cast<double>(n);
  const double phi0 = p.phases[0];
  for (Index k = 0; k < n; ++k) {
    double expected = phi0 + step * static_cast<double>(k);
    if (std::abs(p.phases[static_cast<std::size_t>(k)] - expected) > 1e-12)
      raise(Errc::non_uniform_grid,
            "extract_visibility: sample " + std::to_string(k) + " off the uniform grid");
  }
  Complex f(0.0, 0.0);
  for (Index k = 0; k < n; ++k)
    f += (2.0 * p.probabilities[static_cast<std::size_t>(k)] - 1.0) *
         std::exp(Complex(0.0, -p.phases[static_cast<std::size_t>(k)]));
  f /= static_cast<double>(n);
  VisibilityEstimate est;
  est.v = std::min(1.0, 2.0 * std::abs(f));
  if (est.v < 1e-12) {
    est.v = std::max(0.0, est.v);
    est.alpha = 0.0;
    est.degenerate = true;
    return est;
  }
  est.alpha = -std::arg(f);
  if (est.alpha <= -kPi) est.alpha += kTwoPi;
  return est;
}

// Squared Hilbert-Schmidt distance D^2 = ||U - V||^2 = 2 (d - Re tr[U^dag V]).
inline double unitary_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_finite(u, "unitary_distance");
  require_finite(v, "unitary_distance");
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    raise(Errc::dimension_mismatch, "unitary_distance: shapes differ or not square");
  if (!is_unitary(u)) raise(Errc::not_unitary, "unitary_distance: first argument not unitary");
  if (!is_unitary(v)) raise(Errc::not_unitary, "unitary_distance: second argument not unitary");
  double d2 = 2.0 * (static_cast<double>(u.rows()) - (u.adjoint() * v).trace().real());
  return std::max(0.0, d2);
}

}  // namespace fringe
