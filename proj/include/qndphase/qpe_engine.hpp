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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qndphase/circuit_ir.hpp"
#include "qndphase/complex_matrix.hpp"
#include "qndphase/config.hpp"
#include "qndphase/random.hpp"
#include "qndphase/register_ops.hpp"

// Discrete phase estimation on a full state vector.
//
// Layout convention: the index register is the high-order tensor factor, so
// the joint amplitude of index value j and target basis state tau lives at
// j * dim_target + tau. That makes the entangling stage block diagonal with
// the j-th block acting on the target as the j-th power of the unitary.

namespace qndphase {

/// Joint index+target register state.
struct QuantumState {
  std::size_t num_qubits = 0;
  ComplexVector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Output of one estimation run: the exact index-register distribution plus
/// seeded samples drawn from it. phase_estimates[i] = 2*pi*samples[i]/M.
struct QpeResult {
  std::vector<double> distribution;
  std::vector<std::uint64_t> samples;
  std::vector<double> phase_estimates;
};

namespace qpe_detail {

inline std::size_t log2_dimension(std::size_t dim, const char* op) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument(std::string(op) +
                                ": dimension must be a power of two (at "
                                "least 2), got " +
                                std::to_string(dim));
  }
  std::size_t t = 0;
  while ((std::size_t{1} << t) < dim) ++t;
  return t;
}

inline std::size_t target_dimension(const QuantumState& state, std::size_t m,
                                    const char* op) {
  const std::size_t joint = state.amplitudes.dim();
  const std::size_t index_dim = std::size_t{1} << m;
  if (joint == 0 || joint % index_dim != 0) {
    throw std::invalid_argument(std::string(op) +
                                ": state does not contain an index register "
                                "of " +
                                std::to_string(m) + " qubits");
  }
  return joint / index_dim;
}

}  // namespace qpe_detail

/// Uniform index register tensored with the normalized target state.
inline QuantumState initialize(std::size_t m, const ComplexVector& target) {
  detail::require_register_width(m, "initialize");
  const std::size_t d = target.dim();
  const std::size_t t = qpe_detail::log2_dimension(d, "initialize");
  if (m + t > config::max_qubits()) {
    throw std::length_error("initialize: " + std::to_string(m + t) +
                            " qubits exceed the cap of " +
                            std::to_string(config::max_qubits()) +
                            " (QNDPHASE_MAX_QUBITS)");
  }
  const double norm = target.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw std::invalid_argument(
        "initialize: target state is not normalized (norm " +
        std::to_string(norm) + " deviates by more than 1e-6)");
  }
  const std::size_t index_dim = std::size_t{1} << m;
  const double amp_scale = 1.0 / (norm * std::sqrt(static_cast<double>(index_dim)));
  QuantumState state;
  state.num_qubits = m + t;
  state.amplitudes = ComplexVector(index_dim * d);
  for (std::size_t j = 0; j < index_dim; ++j) {
    for (std::size_t tau = 0; tau < d; ++tau) {
      state.amplitudes[j * d + tau] = target[tau] * amp_scale;
    }
  }
  return state;
}

/// Entangling stage: for each index qubit k applies the target unitary
/// raised to the 2^k-th power (computed by repeated squaring), conditioned
/// on that qubit. The net effect raises the unitary to the index value.
inline QuantumState controlled_power_cascade(const QuantumState& state,
                                             const ComplexMatrix& u,
                                             std::size_t m) {
  if (!u.is_square()) {
    throw std::invalid_argument("controlled_power_cascade: unitary not square");
  }
  const std::size_t d = u.rows();
  qpe_detail::log2_dimension(d, "controlled_power_cascade");
  if (qpe_detail::target_dimension(state, m, "controlled_power_cascade") != d) {
    throw std::invalid_argument(
        "controlled_power_cascade: target register dimension does not match "
        "the unitary");
  }
  if (!is_unitary(u, 1e-8)) {
    throw std::invalid_argument(
        "controlled_power_cascade: operator is not unitary (deviation " +
        std::to_string(frobenius_distance(u * u.adjoint(),
                                          ComplexMatrix::identity(d))) +
        ")");
  }

  const std::size_t index_dim = std::size_t{1} << m;
  QuantumState out = state;
  ComplexMatrix power = u;  // u^(2^k) for the current k
  std::vector<Complex> block(d);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < index_dim; ++j) {
      if (((j >> k) & 1u) == 0) continue;
      Complex* amp = &out.amplitudes.entries()[j * d];
      for (std::size_t row = 0; row < d; ++row) {
        Complex s{0.0, 0.0};
        for (std::size_t col = 0; col < d; ++col) s += power(row, col) * amp[col];
        block[row] = s;
      }
      for (std::size_t row = 0; row < d; ++row) amp[row] = block[row];
    }
    if (k + 1 < m) power = power * power;
  }
  return out;
}

/// Full joint operator realized by the cascade, column by column through the
/// same gate sequence the state path uses.
inline ComplexMatrix cascade_operator(const ComplexMatrix& u, std::size_t m) {
  const std::size_t d = u.rows();
  const std::size_t joint = (std::size_t{1} << m) * d;
  ComplexMatrix op(joint, joint);
  for (std::size_t x = 0; x < joint; ++x) {
    QuantumState basis;
    basis.num_qubits = m + qpe_detail::log2_dimension(d, "cascade_operator");
    basis.amplitudes = ComplexVector(joint);
    basis.amplitudes[x] = 1.0;
    const QuantumState mapped = controlled_power_cascade(basis, u, m);
    for (std::size_t row = 0; row < joint; ++row) {
      op(row, x) = mapped.amplitudes[row];
    }
  }
  return op;
}

/// Measurement stage, first half: rotate the index register out of the
/// Fourier basis (inverse transform), leaving the target register alone.
inline QuantumState fourier_decode(const QuantumState& state, std::size_t m) {
  const std::size_t d = qpe_detail::target_dimension(state, m, "fourier_decode");
  const std::size_t index_dim = std::size_t{1} << m;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(index_dim));
  QuantumState out = state;
  for (std::size_t tau = 0; tau < d; ++tau) {
    for (std::size_t k = 0; k < index_dim; ++k) {
      Complex s{0.0, 0.0};
      for (std::size_t j = 0; j < index_dim; ++j) {
        const std::size_t phase_index = (j * k) % index_dim;
        const double angle = -2.0 * std::numbers::pi *
                             static_cast<double>(phase_index) /
                             static_cast<double>(index_dim);
        s += std::polar(inv_sqrt, angle) * state.amplitudes[j * d + tau];
      }
      out.amplitudes[k * d + tau] = s;
    }
  }
  return out;
}

/// Index-register marginal of a decoded state.
inline std::vector<double> index_distribution(const QuantumState& state,
                                              std::size_t m) {
  const std::size_t d = qpe_detail::target_dimension(state, m, "index_distribution");
  const std::size_t index_dim = std::size_t{1} << m;
  std::vector<double> dist(index_dim, 0.0);
  for (std::size_t k = 0; k < index_dim; ++k) {
    double p = 0.0;
    for (std::size_t tau = 0; tau < d; ++tau) {
      p += std::norm(state.amplitudes[k * d + tau]);
    }
    dist[k] = p;
  }
  return dist;
}

/// Reduced density matrix of the target register (index traced out).
inline ComplexMatrix reduced_target_density(const QuantumState& state,
                                            std::size_t m) {
  const std::size_t d = qpe_detail::target_dimension(state, m, "reduced_target_density");
  const std::size_t index_dim = std::size_t{1} << m;
  ComplexMatrix rho(d, d);
  for (std::size_t j = 0; j < index_dim; ++j) {
    for (std::size_t a = 0; a < d; ++a) {
      const Complex amp_a = state.amplitudes[j * d + a];
      if (amp_a == Complex{0.0, 0.0}) continue;
      for (std::size_t b = 0; b < d; ++b) {
        rho(a, b) += amp_a * std::conj(state.amplitudes[j * d + b]);
      }
    }
  }
  return rho;
}

/// Closed-form index distribution for an eigenstate of phase phi:
/// P(k) = sin^2(M d_k / 2) / (M^2 sin^2(d_k / 2)), d_k = phi - 2 pi k / M,
/// continuously extended to 1 where d_k vanishes.
inline std::vector<double> exact_distribution(double phi, std::size_t m) {
  detail::require_register_width(m, "exact_distribution");
  const std::size_t index_dim = std::size_t{1} << m;
  const double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  const double dim = static_cast<double>(index_dim);
  std::vector<double> dist(index_dim, 0.0);
  for (std::size_t k = 0; k < index_dim; ++k) {
    const double delta = phi - two_pi * static_cast<double>(k) / dim;
    const double half_sin = std::sin(0.5 * delta);
    if (half_sin == 0.0) {
      dist[k] = 1.0;
    } else {
      const double ratio = std::sin(0.5 * dim * delta) / (dim * half_sin);
      dist[k] = ratio * ratio;
    }
  }
  return dist;
}

/// End-to-end run on explicit inputs: initialize, entangle, decode, sample.
inline QpeResult run_qpe(const ComplexMatrix& u, const ComplexVector& target,
                         std::size_t m, std::uint64_t shots,
                         std::uint64_t seed) {
  QuantumState state = initialize(m, target);
  state = controlled_power_cascade(state, u, m);
  state = fourier_decode(state, m);

  QpeResult result;
  result.distribution = index_distribution(state, m);
  const double index_dim = static_cast<double>(std::size_t{1} << m);
  Rng rng(seed);
  result.samples.reserve(shots);
  result.phase_estimates.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t k = rng.sample_index(result.distribution);
    result.samples.push_back(k);
    result.phase_estimates.push_back(2.0 * std::numbers::pi *
                                     static_cast<double>(k) / index_dim);
  }
  return result;
}

/// Runs a parsed problem instance; shots/seed arguments override the file.
inline QpeResult run_qpe(const QpeProblem& problem, std::uint64_t shots,
                         std::uint64_t seed) {
  const auto [u, target] = resolve(problem);
  return run_qpe(u, target, problem.index_bits, shots, seed);
}

inline QpeResult run_qpe(const QpeProblem& problem) {
  return run_qpe(problem, problem.shots, problem.seed);
}

/// Same estimation driven through the interaction-generator route: the joint
/// propagator is the exponential of (integer-label operator) x (generator),
/// rather than a gate cascade. Distributions agree with run_qpe when the
/// unitary is the exponential of the same generator.
inline QpeResult run_qpe_via_hamiltonian(const ComplexMatrix& h_u,
                                         const ComplexVector& target,
                                         std::size_t m, std::uint64_t shots,
                                         std::uint64_t seed) {
  if (!is_hermitian(h_u, 1e-8)) {
    throw std::invalid_argument(
        "run_qpe_via_hamiltonian: generator is not Hermitian (deviation " +
        std::to_string(frobenius_distance(h_u, h_u.adjoint())) + ")");
  }
  QuantumState state = initialize(m, target);
  const ComplexMatrix joint_h = kron(lambda_operator(m), h_u);
  const ComplexMatrix joint_u = hermitian_expi(joint_h, 1.0, 1e-8);
  state.amplitudes = joint_u * state.amplitudes;
  state = fourier_decode(state, m);

  QpeResult result;
  result.distribution = index_distribution(state, m);
  const double index_dim = static_cast<double>(std::size_t{1} << m);
  Rng rng(seed);
  result.samples.reserve(shots);
  result.phase_estimates.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t k = rng.sample_index(result.distribution);
    result.samples.push_back(k);
    result.phase_estimates.push_back(2.0 * std::numbers::pi *
                                     static_cast<double>(k) / index_dim);
  }
  return result;
}

}  // namespace qndphase
