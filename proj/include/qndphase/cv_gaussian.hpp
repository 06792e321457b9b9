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
#include <stdexcept>
#include <string>
#include <vector>

#include "qndphase/complex_matrix.hpp"
#include "qndphase/random.hpp"

// Gaussian continuous-variable engine.
//
// Units: hbar = m = omega = 1, so the vacuum has quadrature variance 1/2 and
// every minimum-uncertainty state saturates dX * dY = 1/2. Mode quadratures
// are ordered (X1, Y1, X2, Y2, ...) in both the mean vector and the
// covariance matrix.
//
// Ideal quadrature eigenstates are not physical; finite-squeezing states
// stand in for them everywhere, with the squeezing parameter exposed to the
// caller.

namespace qndphase {

enum class Quadrature { kX, kY };

struct GaussianState {
  std::size_t n_modes = 0;
  std::vector<double> mean;  ///< length 2n
  std::vector<double> cov;   ///< (2n)^2, row-major, symmetric
};

/// A single quadrature measurement: the drawn value, the state of the
/// surviving modes conditioned on it (the measured mode is destroyed), and
/// the calling protocol's readout estimate (the raw value for a plain
/// homodyne).
struct HomodyneOutcome {
  double value = 0.0;
  GaussianState conditioned;
  double estimate = 0.0;
};

namespace cv_detail {

inline std::vector<double> rmat_mul(std::size_t n, const std::vector<double>& a,
                                    const std::vector<double>& b) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out[i * n + j] += aik * b[k * n + j];
      }
    }
  }
  return out;
}

inline std::vector<double> rmat_transpose(std::size_t n,
                                          const std::vector<double>& a) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = a[i * n + j];
  return out;
}

inline void require_mode(const GaussianState& state, std::size_t mode,
                         const char* op) {
  if (mode >= state.n_modes) {
    throw std::out_of_range(std::string(op) + ": mode " + std::to_string(mode) +
                            " out of range for " +
                            std::to_string(state.n_modes) + " modes");
  }
}

}  // namespace cv_detail

inline std::size_t quadrature_index(std::size_t mode, Quadrature q) {
  return 2 * mode + (q == Quadrature::kX ? 0 : 1);
}

/// Standard symplectic form, block diag([[0,1],[-1,0]]) per mode.
inline std::vector<double> symplectic_form(std::size_t n_modes) {
  const std::size_t n = 2 * n_modes;
  std::vector<double> omega(n * n, 0.0);
  for (std::size_t m = 0; m < n_modes; ++m) {
    omega[(2 * m) * n + (2 * m + 1)] = 1.0;
    omega[(2 * m + 1) * n + (2 * m)] = -1.0;
  }
  return omega;
}

inline GaussianState vacuum(std::size_t n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("vacuum: need at least one mode");
  }
  GaussianState state;
  state.n_modes = n_modes;
  state.mean.assign(2 * n_modes, 0.0);
  state.cov.assign(4 * n_modes * n_modes, 0.0);
  for (std::size_t i = 0; i < 2 * n_modes; ++i) {
    state.cov[i * 2 * n_modes + i] = 0.5;
  }
  return state;
}

/// Single-mode minimum-uncertainty state with the chosen quadrature variance
/// scaled by exp(-2r) and its conjugate by exp(+2r).
inline GaussianState squeezed(double r, Quadrature axis) {
  if (!std::isfinite(r)) {
    throw std::invalid_argument("squeezed: squeezing parameter must be finite");
  }
  GaussianState state = vacuum(1);
  const double down = 0.5 * std::exp(-2.0 * r);
  const double up = 0.5 * std::exp(2.0 * r);
  if (axis == Quadrature::kX) {
    state.cov[0] = down;
    state.cov[3] = up;
  } else {
    state.cov[0] = up;
    state.cov[3] = down;
  }
  return state;
}

/// Mean displacement of one mode; covariance untouched.
inline GaussianState displaced(const GaussianState& state, std::size_t mode,
                               double dx, double dy) {
  cv_detail::require_mode(state, mode, "displaced");
  GaussianState out = state;
  out.mean[2 * mode] += dx;
  out.mean[2 * mode + 1] += dy;
  return out;
}

/// Product state: modes of `b` appended after the modes of `a`.
inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  GaussianState out;
  out.n_modes = a.n_modes + b.n_modes;
  const std::size_t na = 2 * a.n_modes;
  const std::size_t nb = 2 * b.n_modes;
  const std::size_t n = na + nb;
  out.mean.assign(n, 0.0);
  out.cov.assign(n * n, 0.0);
  for (std::size_t i = 0; i < na; ++i) out.mean[i] = a.mean[i];
  for (std::size_t i = 0; i < nb; ++i) out.mean[na + i] = b.mean[i];
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) out.cov[i * n + j] = a.cov[i * na + j];
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      out.cov[(na + i) * n + (na + j)] = b.cov[i * nb + j];
  return out;
}

inline double mean_value(const GaussianState& state, std::size_t mode,
                         Quadrature q) {
  cv_detail::require_mode(state, mode, "mean_value");
  return state.mean[quadrature_index(mode, q)];
}

inline double variance(const GaussianState& state, std::size_t mode,
                       Quadrature q) {
  cv_detail::require_mode(state, mode, "variance");
  const std::size_t i = quadrature_index(mode, q);
  return state.cov[i * 2 * state.n_modes + i];
}

/// Per-mode uncertainty products dX * dY (correlations ignored).
inline std::vector<double> uncertainty_products(const GaussianState& state) {
  std::vector<double> products(state.n_modes, 0.0);
  for (std::size_t m = 0; m < state.n_modes; ++m) {
    products[m] = std::sqrt(variance(state, m, Quadrature::kX) *
                            variance(state, m, Quadrature::kY));
  }
  return products;
}

/// Physicality: symmetric covariance and cov + (i/2) Omega positive
/// semidefinite, which is the uncertainty relation in these units.
inline bool is_valid_state(const GaussianState& state, double psd_tol = 1e-9) {
  const std::size_t n = 2 * state.n_modes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(state.cov[i * n + j] - state.cov[j * n + i]) > 1e-12) {
        return false;
      }
    }
  }
  const std::vector<double> omega = symplectic_form(state.n_modes);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = Complex{state.cov[i * n + j], 0.5 * omega[i * n + j]};
    }
  }
  const Eigensystem eig = hermitian_eigensystem(h, 1e-9);
  for (const double v : eig.values) {
    if (v < -psd_tol) return false;
  }
  return true;
}

/// mean -> S mean, cov -> S cov S^T, after auditing that S preserves the
/// symplectic form to 1e-12.
inline GaussianState apply_symplectic(const GaussianState& state,
                                      const std::vector<double>& s) {
  const std::size_t n = 2 * state.n_modes;
  if (s.size() != n * n) {
    throw std::invalid_argument("apply_symplectic: map has wrong dimension");
  }
  const std::vector<double> omega = symplectic_form(state.n_modes);
  const std::vector<double> audit = cv_detail::rmat_mul(
      n, cv_detail::rmat_mul(n, s, omega), cv_detail::rmat_transpose(n, s));
  double dev = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) {
    const double d = audit[i] - omega[i];
    dev += d * d;
  }
  if (std::sqrt(dev) > 1e-12) {
    throw std::logic_error(
        "apply_symplectic: map does not preserve the symplectic form "
        "(deviation " +
        std::to_string(std::sqrt(dev)) + ")");
  }

  GaussianState out = state;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += s[i * n + j] * state.mean[j];
    out.mean[i] = acc;
  }
  out.cov = cv_detail::rmat_mul(n, cv_detail::rmat_mul(n, s, state.cov),
                                cv_detail::rmat_transpose(n, s));
  return out;
}

/// Heisenberg map of the amplitude-to-phase coupling with strength chi:
/// X_b += chi X_a and Y_a -= chi Y_b; X_a and Y_b are untouched, which is
/// exactly the back-action-evading structure.
inline std::vector<double> qnd_coupling_map(std::size_t n_modes, std::size_t a,
                                            std::size_t b, double chi) {
  const std::size_t n = 2 * n_modes;
  std::vector<double> s(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) s[i * n + i] = 1.0;
  s[(2 * b) * n + (2 * a)] = chi;        // X_b gains chi * X_a
  s[(2 * a + 1) * n + (2 * b + 1)] = -chi;  // Y_a loses chi * Y_b
  return s;
}

inline GaussianState qnd_couple(const GaussianState& state, std::size_t a,
                                std::size_t b, double chi) {
  cv_detail::require_mode(state, a, "qnd_couple");
  cv_detail::require_mode(state, b, "qnd_couple");
  if (a == b) {
    throw std::invalid_argument("qnd_couple: signal and meter must differ");
  }
  return apply_symplectic(state, qnd_coupling_map(state.n_modes, a, b, chi));
}

/// Heisenberg map of the position-position coupling with strength g:
/// Y_index -= g X_target and Y_target -= g X_index; both positions are
/// untouched.
inline std::vector<double> cv_phase_coupling_map(std::size_t n_modes,
                                                 std::size_t index,
                                                 std::size_t target, double g) {
  const std::size_t n = 2 * n_modes;
  std::vector<double> s(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) s[i * n + i] = 1.0;
  s[(2 * index + 1) * n + (2 * target)] = -g;  // Y_I loses g * X_T
  s[(2 * target + 1) * n + (2 * index)] = -g;  // Y_T loses g * X_I
  return s;
}

inline GaussianState cv_phase_couple(const GaussianState& state,
                                     std::size_t index, std::size_t target,
                                     double g) {
  cv_detail::require_mode(state, index, "cv_phase_couple");
  cv_detail::require_mode(state, target, "cv_phase_couple");
  if (index == target) {
    throw std::invalid_argument("cv_phase_couple: index and target must "
                                "differ");
  }
  return apply_symplectic(
      state, cv_phase_coupling_map(state.n_modes, index, target, g));
}

/// Measures one quadrature of one mode. The outcome is drawn from the
/// Gaussian marginal; the surviving modes are conditioned on it
/// (mean_r + S_rq (v - mu_q)/Var_q, cov_r - S_rq S_qr^T / Var_q) and the
/// measured mode is removed from the state.
inline HomodyneOutcome homodyne(const GaussianState& state, std::size_t mode,
                                Quadrature q, Rng& rng) {
  cv_detail::require_mode(state, mode, "homodyne");
  const std::size_t n = 2 * state.n_modes;
  const std::size_t qi = quadrature_index(mode, q);
  const double var_q = state.cov[qi * n + qi];
  if (!(var_q > 0.0)) {
    throw std::domain_error("homodyne: measured quadrature has non-positive "
                            "variance " +
                            std::to_string(var_q));
  }
  const double value = rng.normal(state.mean[qi], std::sqrt(var_q));

  std::vector<std::size_t> kept;
  kept.reserve(n - 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (i / 2 != mode) kept.push_back(i);
  }

  HomodyneOutcome outcome;
  outcome.value = value;
  outcome.estimate = value;
  outcome.conditioned.n_modes = state.n_modes - 1;
  outcome.conditioned.mean.resize(kept.size());
  outcome.conditioned.cov.resize(kept.size() * kept.size());
  const double shift = (value - state.mean[qi]) / var_q;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    outcome.conditioned.mean[i] =
        state.mean[kept[i]] + state.cov[kept[i] * n + qi] * shift;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      outcome.conditioned.cov[i * kept.size() + j] =
          state.cov[kept[i] * n + kept[j]] -
          state.cov[kept[i] * n + qi] * state.cov[qi * n + kept[j]] / var_q;
    }
  }
  return outcome;
}

inline HomodyneOutcome homodyne(const GaussianState& state, std::size_t mode,
                                Quadrature q, std::uint64_t seed) {
  Rng rng(seed);
  return homodyne(state, mode, q, rng);
}

/// Full measurement protocol for a one-mode signal: attach a meter mode
/// squeezed in X by r_meter (the finite-r stand-in for an amplitude
/// eigenstate at zero), couple with strength chi, then read out the meter
/// amplitude. estimate = value / chi is an unbiased estimate of the signal's
/// mean amplitude.
inline HomodyneOutcome qnd_measure(const GaussianState& signal_prep, double chi,
                                   double r_meter, std::uint64_t seed) {
  if (signal_prep.n_modes != 1) {
    throw std::invalid_argument("qnd_measure: signal preparation must be a "
                                "single mode");
  }
  if (chi == 0.0) {
    throw std::invalid_argument("qnd_measure: coupling strength must be "
                                "nonzero");
  }
  GaussianState joint = tensor(signal_prep, squeezed(r_meter, Quadrature::kX));
  joint = qnd_couple(joint, 0, 1, chi);
  Rng rng(seed);
  HomodyneOutcome outcome = homodyne(joint, 1, Quadrature::kX, rng);
  outcome.estimate = outcome.value / chi;
  return outcome;
}

/// Predicted variance of the qnd_measure estimator.
inline double qnd_estimator_variance(double signal_var_x, double chi,
                                     double r_meter) {
  return signal_var_x + 0.5 * std::exp(-2.0 * r_meter) / (chi * chi);
}

/// Continuous-variable phase estimation on a one-mode target: the index
/// mode is prepared squeezed in Y by r_index (near-zero momentum), coupled
/// position-to-position with strength g, and its momentum is read out.
/// estimate = -value / g recovers the target's mean position.
inline HomodyneOutcome cv_phase_estimate(double g,
                                         const GaussianState& target_prep,
                                         double r_index, std::uint64_t seed) {
  if (target_prep.n_modes != 1) {
    throw std::invalid_argument("cv_phase_estimate: target preparation must "
                                "be a single mode");
  }
  if (g == 0.0) {
    throw std::invalid_argument("cv_phase_estimate: coupling strength must "
                                "be nonzero");
  }
  GaussianState joint = tensor(squeezed(r_index, Quadrature::kY), target_prep);
  joint = cv_phase_couple(joint, 0, 1, g);
  Rng rng(seed);
  HomodyneOutcome outcome = homodyne(joint, 0, Quadrature::kY, rng);
  outcome.estimate = -outcome.value / g;
  return outcome;
}

/// Predicted variance of the cv_phase_estimate estimator.
inline double cv_estimator_variance(double target_var_x, double g,
                                    double r_index) {
  return target_var_x + 0.5 * std::exp(-2.0 * r_index) / (g * g);
}

}  // namespace qndphase
