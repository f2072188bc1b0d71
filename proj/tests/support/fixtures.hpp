// Shared fixture channels, states, and random objects for the test suites.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fringe/channel.hpp"
#include "fringe/linalg.hpp"

namespace fixtures {

using namespace fringe;

// Error code raised by a callable, if any; lets tests assert on specific
// failure modes without repeating try/catch blocks.
template <typename F>
inline Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected the callable to raise");
}

inline double diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Phase flip {sqrt(1-p) I, sqrt(p) Z} on a qubit.
inline KrausChannel phase_flip(double p) {
  return validate({std::sqrt(1.0 - p) * ComplexMatrix::Identity(2, 2),
                   std::sqrt(p) * pauli_z()},
                  2);
}

// Completely depolarizing qubit channel {I/2, X/2, Y/2, Z/2}.
inline KrausChannel depolarizing2() {
  return validate({0.5 * ComplexMatrix::Identity(2, 2), 0.5 * pauli_x(), 0.5 * pauli_y(),
                   0.5 * pauli_z()},
                  2);
}

// Completely depolarizing channel in dimension d from the d^2 shift/clock
// (Weyl) unitaries X^a Z^b, each scaled by 1/d.
inline KrausChannel weyl_depolarizing(Index d) {
  ComplexMatrix shift = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) shift((j + 1) % d, j) = 1.0;
  ComplexMatrix clock = ComplexMatrix::Zero(d, d);
  for (Index j = 0; j < d; ++j)
    clock(j, j) = std::exp(Complex(0.0, kTwoPi * static_cast<double>(j) / static_cast<double>(d)));
  std::vector<ComplexMatrix> ops;
  ComplexMatrix xa = ComplexMatrix::Identity(d, d);
  for (Index a = 0; a < d; ++a) {
    ComplexMatrix w = xa;
    for (Index b = 0; b < d; ++b) {
      ops.push_back(w / static_cast<double>(d));
      w = w * clock;
    }
    xa = shift * xa;
  }
  return validate(std::move(ops), d);
}

// Zero-visibility flag channel {0, U}: valid, but its first Kraus operator
// vanishes.
inline KrausChannel flag_channel(const ComplexMatrix& u) {
  return validate({ComplexMatrix::Zero(u.rows(), u.cols()), u}, u.rows());
}

inline ComplexMatrix random_unitary(Index d, std::uint64_t seed) {
  return random_channel(d, 1, seed).ops[0];
}

inline DensityMatrix random_density(Index d, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g = rng.gaussian_matrix(d, d);
  ComplexMatrix m = g * g.adjoint();
  return DensityMatrix{d, m / m.trace()};
}

inline DensityMatrix random_pure(Index d, std::uint64_t seed) {
  Rng rng(seed);
  ComplexVector psi = rng.gaussian_matrix(d, 1).col(0);
  return pure_state(psi / psi.norm());
}

inline ComplexMatrix random_isometry(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  return orthonormalize_columns(rng.gaussian_matrix(rows, cols));
}

// Projector onto the maximally entangled state (1/sqrt d) sum_i |i>|i>.
inline ComplexMatrix max_entangled_projector(Index d) {
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  return psi * psi.adjoint();
}

}  // namespace fixtures
