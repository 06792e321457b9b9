// Copyright 2026 The qndphase authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qndphase/complex_matrix.hpp"
#include "qndphase/config.hpp"
#include "qndphase/register_ops.hpp"

// Nondemolition measurement criteria, checked numerically on a
// (system x meter) joint space:
//
//   1. the measured observable commutes with the free Hamiltonian,
//   2. the measured observable commutes with the coupling (back-action
//      evasion),
//   3. the meter observable does NOT commute with the coupling, otherwise
//      the readout carries no information.
//
// All three are evaluated as Frobenius norms of commutators; 1 and 2 pass
// when the norm is at most the tolerance, 3 passes when it exceeds it.

namespace qndphase {

/// A measurement configuration. Subsystem observables are lifted to the
/// joint space by tensoring with identity before they are stored here, so
/// every commutator is well defined. `excluded` optionally masks joint basis
/// indices (rows and columns) out of the norms; Fock-truncated mode
/// operators use it to keep boundary artifacts from polluting the verdict.
struct QndTriple {
  ComplexMatrix h_free;
  ComplexMatrix h_int;
  ComplexMatrix qnd_var;
  ComplexMatrix meter_var;
  double tolerance = config::kDefaultTolerance;
  std::vector<bool> excluded;
};

struct QndReport {
  double qnd1_norm = 0.0;
  double qnd2_norm = 0.0;
  double qnd3_norm = 0.0;
  double tolerance = config::kDefaultTolerance;
  std::array<bool, 3> passed{false, false, false};

  bool all_passed() const { return passed[0] && passed[1] && passed[2]; }
};

/// Frobenius norm over the rows/columns that are not masked out.
inline double masked_frobenius_norm(const ComplexMatrix& a,
                                    const std::vector<bool>& excluded) {
  if (excluded.empty()) return frobenius_norm(a);
  if (excluded.size() != a.rows()) {
    throw std::invalid_argument("masked_frobenius_norm: mask size " +
                                std::to_string(excluded.size()) +
                                " does not match dimension " +
                                std::to_string(a.rows()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (excluded[i]) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (excluded[j]) continue;
      s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

inline QndReport check(const QndTriple& triple) {
  const std::size_t dim = triple.h_free.rows();
  const auto validate = [dim, &triple](const ComplexMatrix& m, const char* name) {
    if (!m.is_square() || m.rows() != dim) {
      throw std::invalid_argument(std::string("check: ") + name +
                                  " must be square with dimension " +
                                  std::to_string(dim));
    }
    if (!is_hermitian(m, std::max(triple.tolerance, 1e-12))) {
      throw std::invalid_argument(std::string("check: ") + name +
                                  " is not Hermitian");
    }
  };
  validate(triple.h_free, "h_free");
  validate(triple.h_int, "h_int");
  validate(triple.qnd_var, "qnd_var");
  validate(triple.meter_var, "meter_var");

  QndReport report;
  report.tolerance = triple.tolerance;
  report.qnd1_norm =
      masked_frobenius_norm(commutator(triple.h_free, triple.qnd_var),
                            triple.excluded);
  report.qnd2_norm =
      masked_frobenius_norm(commutator(triple.h_int, triple.qnd_var),
                            triple.excluded);
  report.qnd3_norm =
      masked_frobenius_norm(commutator(triple.h_int, triple.meter_var),
                            triple.excluded);
  report.passed[0] = report.qnd1_norm <= triple.tolerance;
  report.passed[1] = report.qnd2_norm <= triple.tolerance;
  report.passed[2] = report.qnd3_norm > triple.tolerance;
  return report;
}

/// Measurement configuration realized by a phase-estimation run whose
/// unitary has Hermitian generator h_u: the generator (lifted to the joint
/// space) is measured, the Fourier-basis label operator is read out, and the
/// coupling is their product. Qubits undergo no free evolution.
inline QndTriple qpe_triple(const ComplexMatrix& h_u, std::size_t m,
                            double tolerance = config::kDefaultTolerance) {
  if (!is_hermitian(h_u, 1e-8)) {
    throw std::invalid_argument(
        "qpe_triple: generator is not Hermitian (deviation " +
        std::to_string(frobenius_distance(h_u, h_u.adjoint())) + ")");
  }
  const std::size_t d = h_u.rows();
  const std::size_t index_dim = std::size_t{1} << m;
  QndTriple triple;
  triple.tolerance = tolerance;
  triple.h_free = ComplexMatrix::zero(index_dim * d, index_dim * d);
  triple.h_int = kron(lambda_operator(m), h_u);
  triple.qnd_var = kron(ComplexMatrix::identity(index_dim), h_u);
  triple.meter_var = kron(gamma_operator(m), ComplexMatrix::identity(d));
  return triple;
}

// ---- Fock-truncated mode operators -----------------------------------

/// Lowering operator on the first `levels` number states.
inline ComplexMatrix annihilation_operator(std::size_t levels) {
  if (levels < 2) {
    throw std::invalid_argument("annihilation_operator: truncation needs at "
                                "least 2 levels");
  }
  ComplexMatrix a(levels, levels);
  for (std::size_t i = 1; i < levels; ++i) {
    a(i - 1, i) = std::sqrt(static_cast<double>(i));
  }
  return a;
}

/// Amplitude quadrature (a + a^dagger)/sqrt(2); vacuum variance 1/2.
inline ComplexMatrix position_operator(std::size_t levels) {
  const ComplexMatrix a = annihilation_operator(levels);
  return (1.0 / std::numbers::sqrt2) * (a + a.adjoint());
}

/// Phase quadrature i(a^dagger - a)/sqrt(2), conjugate to the above.
inline ComplexMatrix momentum_operator(std::size_t levels) {
  const ComplexMatrix a = annihilation_operator(levels);
  return Complex{0.0, 1.0 / std::numbers::sqrt2} * (a.adjoint() - a);
}

/// Mask excluding the top two Fock levels of either mode of a two-mode
/// space; the truncated quadratures cannot satisfy the canonical
/// commutation relation on those boundary rows.
inline std::vector<bool> two_mode_edge_mask(std::size_t levels) {
  std::vector<bool> excluded(levels * levels, false);
  for (std::size_t ia = 0; ia < levels; ++ia) {
    for (std::size_t ib = 0; ib < levels; ++ib) {
      excluded[ia * levels + ib] = (ia + 2 >= levels) || (ib + 2 >= levels);
    }
  }
  return excluded;
}

/// Two degenerate modes coupled amplitude-to-phase: measuring the signal
/// amplitude through the meter amplitude. Free evolution vanishes in the
/// rotating frame. chi = 0 builds the degenerate (uncoupled) configuration,
/// which criterion 3 then rejects.
inline QndTriple quadrature_triple(double chi, std::size_t fock_levels = 20,
                                   double tolerance = 1e-9) {
  if (fock_levels < 2) {
    throw std::invalid_argument(
        "quadrature_triple: truncation dimension must be at least 2");
  }
  const ComplexMatrix x = position_operator(fock_levels);
  const ComplexMatrix y = momentum_operator(fock_levels);
  const ComplexMatrix eye = ComplexMatrix::identity(fock_levels);
  QndTriple triple;
  triple.tolerance = tolerance;
  triple.h_free = ComplexMatrix::zero(fock_levels * fock_levels,
                                      fock_levels * fock_levels);
  triple.h_int = chi * kron(x, y);
  triple.qnd_var = kron(x, eye);
  triple.meter_var = kron(eye, x);
  triple.excluded = two_mode_edge_mask(fock_levels);
  return triple;
}

/// Continuous-variable phase estimation as a measurement configuration:
/// index position couples to the target amplitude with strength g, the
/// target amplitude is measured, and the index momentum is read out.
/// Mode order is (index, target).
inline QndTriple cv_phase_estimation_triple(double g,
                                            std::size_t fock_levels = 20,
                                            double tolerance = 1e-9) {
  if (fock_levels < 2) {
    throw std::invalid_argument(
        "cv_phase_estimation_triple: truncation dimension must be at least 2");
  }
  const ComplexMatrix x = position_operator(fock_levels);
  const ComplexMatrix y = momentum_operator(fock_levels);
  const ComplexMatrix eye = ComplexMatrix::identity(fock_levels);
  QndTriple triple;
  triple.tolerance = tolerance;
  triple.h_free = ComplexMatrix::zero(fock_levels * fock_levels,
                                      fock_levels * fock_levels);
  triple.h_int = g * kron(x, x);
  triple.qnd_var = kron(eye, x);
  triple.meter_var = kron(y, eye);
  triple.excluded = two_mode_edge_mask(fock_levels);
  return triple;
}

}  // namespace qndphase
