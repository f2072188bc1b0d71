// Dense complex linear algebra: canonical decompositions and small helpers.
//
// Everything operates on dynamically sized complex matrices at desk scale
// (dimensions up to a few dozen). Decompositions are canonicalised so that
// repeated runs on the same input produce identical output: eigen/singular
// values are sorted descending and each vector's phase is fixed by making its
// largest-magnitude entry real and nonnegative (ties broken by lowest row
// index). Residual norms are Frobenius norms scaled by max(1, ||A||).
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fringe/error.hpp"

namespace fringe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double norm_scale(const ComplexMatrix& a) { return std::max(1.0, a.norm()); }

inline void require_finite(const ComplexMatrix& a, const char* where) {
  if (!a.allFinite()) raise(Errc::non_finite, std::string(where) + ": matrix has NaN/Inf entries");
}

inline void require_square(const ComplexMatrix& a, const char* where) {
  if (a.rows() != a.cols())
    raise(Errc::not_square, std::string(where) + ": matrix is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = 1e-9) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * norm_scale(a);
}

inline bool is_unitary(const ComplexMatrix& a, double tol = 1e-9) {
  if (a.rows() != a.cols()) return false;
  ComplexMatrix residual = a.adjoint() * a - ComplexMatrix::Identity(a.cols(), a.cols());
  return residual.norm() <= tol * norm_scale(a);
}

// Hilbert-Schmidt inner product tr[a^dag b].
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.conjugate().cwiseProduct(b).sum();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Multiplies each column by a unit phase so its largest-magnitude entry
// becomes real and >= 0. Ties go to the lowest row index.
inline void fix_column_phases(ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    Index imax = 0;
    double best = std::abs(m(0, j));
    for (Index i = 1; i < m.rows(); ++i) {
      double mag = std::abs(m(i, j));
      if (mag > best) {
        best = mag;
        imax = i;
      }
    }
    if (best > 0.0) m.col(j) *= std::conj(m(imax, j)) / best;
  }
}

struct HermitianEig {
  RealVector eigenvalues;     // descending
  ComplexMatrix eigenvectors; // columns, orthonormal, phase-fixed
};

inline HermitianEig hermitian_eig(const ComplexMatrix& a) {
  require_finite(a, "hermitian_eig");
  require_square(a, "hermitian_eig");
  double herm_residual = (a - a.adjoint()).norm();
  if (herm_residual > 1e-9 * norm_scale(a))
    raise(Errc::not_hermitian,
          "hermitian_eig: ||A - A^dag|| = " + std::to_string(herm_residual));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) raise(Errc::numeric_failure, "hermitian_eig: solver failed");
  HermitianEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  fix_column_phases(out.eigenvectors);
  return out;
}

struct SvdResult {
  ComplexMatrix left;   // columns = left singular vectors
  RealVector singulars; // descending, nonnegative
  ComplexMatrix right;  // columns = right singular vectors
};

// Thin SVD, a = left * diag(singulars) * right^dag. Left columns carry the
// canonical phase; right columns absorb the compensating factor so the
// product is preserved.
inline SvdResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out;
  out.left = solver.matrixU();
  out.singulars = solver.singularValues();
  out.right = solver.matrixV();
  for (Index j = 0; j < out.left.cols(); ++j) {
    Index imax = 0;
    double best = std::abs(out.left(0, j));
    for (Index i = 1; i < out.left.rows(); ++i) {
      double mag = std::abs(out.left(i, j));
      if (mag > best) {
        best = mag;
        imax = i;
      }
    }
    if (best > 0.0) {
      Complex phase = std::conj(out.left(imax, j)) / best;
      out.left.col(j) *= phase;
      out.right.col(j) *= phase;
    }
  }
  return out;
}

struct PolarResult {
  ComplexMatrix stretch; // sqrt(a a^dag), Hermitian PSD
  ComplexMatrix unitary;
  bool degenerate = false; // set when a singular value < 1e-12 (unitary factor not unique)
};

// Left polar decomposition a = stretch * unitary via the SVD a = W S X^dag:
// stretch = W S W^dag, unitary = W X^dag.
inline PolarResult polar_unitary(const ComplexMatrix& a) {
  require_finite(a, "polar_unitary");
  require_square(a, "polar_unitary");
  SvdResult s = svd(a);
  PolarResult out;
  out.stretch = s.left * s.singulars.asDiagonal() * s.left.adjoint();
  out.unitary = s.left * s.right.adjoint();
  out.degenerate = s.singulars.size() == 0 || s.singulars.minCoeff() < 1e-12;
  return out;
}

// Hermitian PSD square root. Eigenvalues with |lambda| < 1e-10 (scaled) are
// treated as exact zeros; anything more negative is rejected. Flushing the
// tiny positive band matters because sqrt amplifies rounding noise: an
// eigenvalue that should be 0 but computes as 1e-17 would otherwise inject
// ~3e-9 of spurious mass into the root.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  HermitianEig eig = [&] {
    try {
      return hermitian_eig(a);
    } catch (const Error& e) {
      if (e.code() == Errc::not_hermitian)
        raise(Errc::not_hermitian, std::string("psd_sqrt: ") + e.what());
      throw;
    }
  }();
  const double tol = 1e-10 * norm_scale(a);
  RealVector roots(eig.eigenvalues.size());
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues[i];
    if (lambda < -tol)
      raise(Errc::not_psd, "psd_sqrt: eigenvalue " + std::to_string(lambda) + " below tolerance");
    roots[i] = lambda > tol ? std::sqrt(lambda) : 0.0;
  }
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

enum class Subsystem { first, second };

// Partial trace over one factor of a bipartite operator on C^{d1} (x) C^{d2},
// first factor major. `traced` names the factor that is traced out.
inline ComplexMatrix partial_trace(const ComplexMatrix& a, Subsystem traced, Index dim_first,
                                   Index dim_second) {
  if (dim_first < 1 || dim_second < 1 || a.rows() != a.cols() ||
      a.rows() != dim_first * dim_second)
    raise(Errc::dimension_mismatch,
          "partial_trace: matrix size " + std::to_string(a.rows()) + "x" +
              std::to_string(a.cols()) + " does not factor as " + std::to_string(dim_first) + "*" +
              std::to_string(dim_second));
  require_finite(a, "partial_trace");
  if (traced == Subsystem::second) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
    for (Index i = 0; i < dim_first; ++i)
      for (Index ip = 0; ip < dim_first; ++ip)
        for (Index j = 0; j < dim_second; ++j)
          out(i, ip) += a(i * dim_second + j, ip * dim_second + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_second, dim_second);
  for (Index j = 0; j < dim_second; ++j)
    for (Index jp = 0; jp < dim_second; ++jp)
      for (Index i = 0; i < dim_first; ++i)
        out(j, jp) += a(i * dim_second + j, i * dim_second + jp);
  return out;
}

// Modified Gram-Schmidt with one re-orthogonalisation pass. Rejects
// rank-deficient input.
inline ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  require_finite(m, "orthonormalize_columns");
  if (m.cols() > m.rows())
    raise(Errc::dimension_mismatch, "orthonormalize_columns: more columns than rows");
  ComplexMatrix q = m;
  for (Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    double nrm = q.col(j).norm();
    if (nrm < 1e-12)
      raise(Errc::numeric_failure, "orthonormalize_columns: column " + std::to_string(j) +
                                       " is linearly dependent");
    q.col(j) /= nrm;
  }
  return q;
}

// Extends an isometry (orthonormal columns) to a full unitary by appending
// standard basis vectors, dropping those already in the span.
inline ComplexMatrix complete_to_unitary(const ComplexMatrix& isometry) {
  require_finite(isometry, "complete_to_unitary");
  const Index n = isometry.rows();
  if (isometry.cols() > n)
    raise(Errc::dimension_mismatch, "complete_to_unitary: more columns than rows");
  ComplexMatrix u(n, n);
  u.leftCols(isometry.cols()) = isometry;
  Index have = isometry.cols();
  for (Index cand = 0; cand < n && have < n; ++cand) {
    ComplexVector v = ComplexVector::Zero(n);
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < have; ++i) v -= u.col(i).dot(v) * u.col(i);
    double nrm = v.norm();
    if (nrm > 1e-6) u.col(have++) = v / nrm;
  }
  if (have < n) raise(Errc::numeric_failure, "complete_to_unitary: could not complete basis");
  return u;
}

// Deterministic unitary whose first row equals the given unit vector.
inline ComplexMatrix unitary_with_first_row(const ComplexVector& row) {
  if (row.size() < 1) raise(Errc::dimension_mismatch, "unitary_with_first_row: empty vector");
  if (std::abs(row.norm() - 1.0) > 1e-9)
    raise(Errc::validation_error, "unitary_with_first_row: vector is not unit norm");
  ComplexMatrix col = row.conjugate();
  col.resize(row.size(), 1);
  return complete_to_unitary(col).adjoint();
}

// Seeded random source with a fixed bit-to-double mapping, so a given seed
// reproduces the same stream in every run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in (0, 1].
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * (1.0 / 9007199254740992.0);
  }

  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  // Standard complex normal (real and imaginary parts ~ N(0, 1/2)).
  Complex complex_gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-std::log(u1));
    return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
  }

  // Row-major fill.
  ComplexMatrix gaussian_matrix(Index rows, Index cols) {
    ComplexMatrix out(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) out(i, j) = complex_gaussian();
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fringe
