// Quantum-channel representations and conversions: Kraus sets, Choi states,
// Stinespring dilations, density matrices.
//
// A channel is stored as an ordered list of Kraus operators; the operator at
// index 0 is the one the interferometer distinguishes, so ordering is
// preserved verbatim by every operation except the ones whose purpose is to
// re-order (orthogonalize, choi_to_kraus). Zero operators are legal entries:
// the zero-visibility flag construction {0, U} needs them.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fringe/error.hpp"
#include "fringe/linalg.hpp"

namespace fringe {

// ---------------------------------------------------------------------------
// Density matrices

struct DensityMatrix {
  Index dim = 0;
  ComplexMatrix matrix;
};

// Validates Hermiticity (1e-10), positivity (eigenvalues >= -1e-10) and unit
// trace (1e-10).
inline DensityMatrix make_density(const ComplexMatrix& m) {
  require_finite(m, "make_density");
  require_square(m, "make_density");
  if (m.rows() < 1) raise(Errc::dimension_mismatch, "make_density: empty matrix");
  if ((m - m.adjoint()).norm() > 1e-10 * norm_scale(m))
    raise(Errc::validation_error, "make_density: matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
    raise(Errc::validation_error,
          "make_density: trace is " + std::to_string(m.trace().real()) + ", expected 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) raise(Errc::numeric_failure, "make_density: eigensolver failed");
  if (solver.eigenvalues().minCoeff() < -1e-10)
    raise(Errc::validation_error, "make_density: negative eigenvalue " +
                                      std::to_string(solver.eigenvalues().minCoeff()));
  return DensityMatrix{m.rows(), m};
}

inline DensityMatrix maximally_mixed(Index dim) {
  if (dim < 1) raise(Errc::dimension_mismatch, "maximally_mixed: dim must be >= 1");
  return DensityMatrix{dim, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim)};
}

// Accepts any vector within 1e-9 of unit norm and normalizes it exactly.
inline DensityMatrix pure_state(const ComplexVector& psi) {
  if (psi.size() < 1) raise(Errc::dimension_mismatch, "pure_state: empty vector");
  if (!psi.allFinite()) raise(Errc::non_finite, "pure_state: vector has NaN/Inf entries");
  double nrm = psi.norm();
  if (std::abs(nrm - 1.0) > 1e-9)
    raise(Errc::validation_error, "pure_state: vector norm is " + std::to_string(nrm) +
                                      ", expected 1 within 1e-9");
  ComplexVector unit = psi / nrm;
  return DensityMatrix{psi.size(), unit * unit.adjoint()};
}

// ---------------------------------------------------------------------------
// Kraus channels

struct KrausChannel {
  Index dim = 0;
  std::vector<ComplexMatrix> ops;
};

// Checks shapes, finiteness, operator count (at most dim^2) and completeness
// ||sum lambda_i^dag lambda_i - I|| <= 1e-9. Ordering is preserved exactly.
inline KrausChannel validate(std::vector<ComplexMatrix> ops, Index dim) {
  if (dim < 1) raise(Errc::dimension_mismatch, "validate: dim must be >= 1");
  if (ops.empty()) raise(Errc::bad_arity, "validate: channel needs at least one Kraus operator");
  if (static_cast<Index>(ops.size()) > dim * dim)
    raise(Errc::too_many_operators, "validate: " + std::to_string(ops.size()) +
                                        " Kraus operators exceed dim^2 = " +
                                        std::to_string(dim * dim));
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != dim || ops[i].cols() != dim)
      raise(Errc::dimension_mismatch, "validate: operator " + std::to_string(i) + " is " +
                                          std::to_string(ops[i].rows()) + "x" +
                                          std::to_string(ops[i].cols()) + ", expected " +
                                          std::to_string(dim) + "x" + std::to_string(dim));
    require_finite(ops[i], "validate");
    sum += ops[i].adjoint() * ops[i];
  }
  double residual = (sum - ComplexMatrix::Identity(dim, dim)).norm();
  if (residual > 1e-9)
    raise(Errc::not_trace_preserving,
          "validate: ||sum k^dag k - I|| = " + std::to_string(residual));
  return KrausChannel{dim, std::move(ops)};
}

inline KrausChannel identity_channel(Index dim) {
  return validate({ComplexMatrix::Identity(dim, dim)}, dim);
}

// Gram matrix G_ij = tr[k_i^dag k_j]; Hermitian PSD with trace = dim.
inline ComplexMatrix gram_matrix(const KrausChannel& ch) {
  const Index k = static_cast<Index>(ch.ops.size());
  ComplexMatrix g(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) g(i, j) = hs_inner(ch.ops[i], ch.ops[j]);
  return g;
}

// ---------------------------------------------------------------------------
// Choi states

struct ChoiState {
  Index dim = 0;
  ComplexMatrix matrix; // dim^2 x dim^2, basis |input> (x) |output>
};

// Hermiticity, positivity, and the trace-preservation image: tracing out the
// output factor must give I/dim.
inline void validate_choi(const ChoiState& c) {
  const Index d = c.dim;
  if (d < 1 || c.matrix.rows() != d * d || c.matrix.cols() != d * d)
    raise(Errc::dimension_mismatch, "validate_choi: matrix is not dim^2 x dim^2");
  require_finite(c.matrix, "validate_choi");
  if ((c.matrix - c.matrix.adjoint()).norm() > 1e-9 * norm_scale(c.matrix))
    raise(Errc::not_hermitian, "validate_choi: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(c.matrix);
  if (solver.info() != Eigen::Success) raise(Errc::numeric_failure, "validate_choi: eigensolver failed");
  if (solver.eigenvalues().minCoeff() < -1e-10)
    raise(Errc::not_psd, "validate_choi: negative eigenvalue " +
                             std::to_string(solver.eigenvalues().minCoeff()));
  ComplexMatrix reduced = partial_trace(c.matrix, Subsystem::second, d, d);
  double residual =
      (reduced - ComplexMatrix::Identity(d, d) / static_cast<double>(d)).norm();
  if (residual > 1e-9)
    raise(Errc::not_trace_preserving_image,
          "validate_choi: ||tr_out - I/d|| = " + std::to_string(residual));
}

// Jamiolkowski image (1/d) sum_ij |i><j| (x) ch(|i><j|), assembled as
// (1/d) sum_k vec(k) vec(k)^dag with column-major vec, so row index (i,m)
// maps to i*d + m (input i, output m).
inline ChoiState kraus_to_choi(const KrausChannel& ch) {
  const Index d = ch.dim;
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (const ComplexMatrix& op : ch.ops) {
    Eigen::Map<const ComplexVector> v(op.data(), d * d);
    choi.noalias() += v * v.adjoint();
  }
  choi /= static_cast<double>(d);
  return ChoiState{d, std::move(choi)};
}

// Canonical (spectral) Kraus set: k_i = sqrt(d mu_i) unvec(v_i) with the Choi
// eigenvalues mu_i descending; the resulting operators are orthogonal with
// tr[k_i^dag k_i] = d mu_i. Eigenvalues below 1e-12 are dropped so near-zero
// operators never enter the set.
inline KrausChannel choi_to_kraus(const ChoiState& c) {
  validate_choi(c);
  const Index d = c.dim;
  HermitianEig eig = hermitian_eig(c.matrix);
  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double mu = eig.eigenvalues[i];
    if (mu < 1e-12) break;
    ComplexVector col = eig.eigenvectors.col(i);
    Eigen::Map<const ComplexMatrix> unvec(col.data(), d, d);
    ops.push_back(std::sqrt(static_cast<double>(d) * mu) * unvec);
  }
  return validate(std::move(ops), d);
}

inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim != ch.dim || rho.matrix.rows() != ch.dim || rho.matrix.cols() != ch.dim)
    raise(Errc::dimension_mismatch, "apply: state dim " + std::to_string(rho.dim) +
                                        " != channel dim " + std::to_string(ch.dim));
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim, ch.dim);
  for (const ComplexMatrix& op : ch.ops) out.noalias() += op * rho.matrix * op.adjoint();
  return DensityMatrix{ch.dim, std::move(out)};
}

// New Kraus set k'_i = sum_j u_ij k_j for an isometry u (columns orthonormal,
// one column per existing operator). The Choi state is unchanged; the output
// operator count is u's row count.
inline KrausChannel remix(const KrausChannel& ch, const ComplexMatrix& u) {
  const Index n = static_cast<Index>(ch.ops.size());
  if (u.cols() != n)
    raise(Errc::dimension_mismatch, "remix: isometry has " + std::to_string(u.cols()) +
                                        " columns, channel has " + std::to_string(n) +
                                        " operators");
  require_finite(u, "remix");
  double residual = (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm();
  if (residual > 1e-9)
    raise(Errc::not_isometry, "remix: ||u^dag u - I|| = " + std::to_string(residual));
  std::vector<ComplexMatrix> ops(static_cast<std::size_t>(u.rows()));
  for (Index i = 0; i < u.rows(); ++i) {
    ComplexMatrix acc = ComplexMatrix::Zero(ch.dim, ch.dim);
    for (Index j = 0; j < n; ++j) acc.noalias() += u(i, j) * ch.ops[static_cast<std::size_t>(j)];
    ops[static_cast<std::size_t>(i)] = std::move(acc);
  }
  return validate(std::move(ops), ch.dim);
}

struct OrthogonalizeResult {
  KrausChannel channel;  // tr[k_i^dag k_j] diagonal, weights descending
  ComplexMatrix mixing;  // unitary with remix(input, mixing) == channel
};

// Diagonalizes the Gram matrix: with G = W D W^dag (D descending), the mixing
// u = W^T yields a remixed set whose Gram matrix is exactly D, since under
// k'_i = sum_j u_ij k_j the Gram transforms as G' = u^* G u^T = W^dag G W.
inline OrthogonalizeResult orthogonalize(const KrausChannel& ch) {
  HermitianEig eig = hermitian_eig(gram_matrix(ch));
  ComplexMatrix mixing = eig.eigenvectors.transpose();
  OrthogonalizeResult out;
  out.channel = remix(ch, mixing);
  out.mixing = std::move(mixing);
  return out;
}

// ---------------------------------------------------------------------------
// Stinespring dilations

struct StinespringDilation {
  Index dim = 0;
  Index anc_dim = 0;
  ComplexMatrix isometry; // (anc_dim*dim) x dim, row index = anc*dim + sys
};

inline StinespringDilation make_dilation(const ComplexMatrix& isometry, Index dim) {
  if (dim < 1 || isometry.cols() != dim || isometry.rows() % dim != 0 || isometry.rows() < dim)
    raise(Errc::dimension_mismatch, "make_dilation: isometry is " +
                                        std::to_string(isometry.rows()) + "x" +
                                        std::to_string(isometry.cols()) + " for dim " +
                                        std::to_string(dim));
  require_finite(isometry, "make_dilation");
  double residual =
      (isometry.adjoint() * isometry - ComplexMatrix::Identity(dim, dim)).norm();
  if (residual > 1e-9)
    raise(Errc::not_isometry, "make_dilation: ||V^dag V - I|| = " + std::to_string(residual));
  return StinespringDilation{dim, isometry.rows() / dim, isometry};
}

// Stacks the Kraus operators on the ancilla index: block i of the isometry is
// k_i, so <i|_anc V = k_i exactly and the ancilla starts in basis state 0.
inline StinespringDilation dilate(const KrausChannel& ch) {
  const Index d = ch.dim;
  const Index k = static_cast<Index>(ch.ops.size());
  ComplexMatrix v(k * d, d);
  for (Index i = 0; i < k; ++i) v.block(i * d, 0, d, d) = ch.ops[static_cast<std::size_t>(i)];
  return StinespringDilation{d, k, std::move(v)};
}

// Exact block reads; inverse of dilate.
inline KrausChannel extract_kraus(const StinespringDilation& dil) {
  if (dil.dim < 1 || dil.isometry.rows() != dil.anc_dim * dil.dim ||
      dil.isometry.cols() != dil.dim)
    raise(Errc::dimension_mismatch, "extract_kraus: inconsistent dilation shape");
  double residual = (dil.isometry.adjoint() * dil.isometry -
                     ComplexMatrix::Identity(dil.dim, dil.dim))
                        .norm();
  if (residual > 1e-9)
    raise(Errc::not_isometry, "extract_kraus: ||V^dag V - I|| = " + std::to_string(residual));
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(dil.anc_dim));
  for (Index i = 0; i < dil.anc_dim; ++i)
    ops.push_back(dil.isometry.block(i * dil.dim, 0, dil.dim, dil.dim));
  return validate(std::move(ops), dil.dim);
}

// ---------------------------------------------------------------------------
// Random channels

// Deterministic in (dim, n_kraus, seed): orthonormalizes the columns of a
// seeded (dim*n_kraus) x dim Gaussian matrix and block-extracts the operators.
inline KrausChannel random_channel(Index dim, Index n_kraus, std::uint64_t seed) {
  if (dim < 1) raise(Errc::dimension_mismatch, "random_channel: dim must be >= 1");
  if (n_kraus < 1 || n_kraus > dim * dim)
    raise(Errc::bad_arity, "random_channel: n_kraus " + std::to_string(n_kraus) +
                               " outside [1, dim^2] = [1, " + std::to_string(dim * dim) + "]");
  Rng rng(seed);
  ComplexMatrix q = orthonormalize_columns(rng.gaussian_matrix(dim * n_kraus, dim));
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(n_kraus));
  for (Index i = 0; i < n_kraus; ++i) ops.push_back(q.block(i * dim, 0, dim, dim));
  return validate(std::move(ops), dim);
}

}  // namespace fringe
