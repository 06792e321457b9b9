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
#include <numbers>
#include <stdexcept>
#include <string>

#include "qndphase/complex_matrix.hpp"
#include "qndphase/config.hpp"

// Register operators for an m-qubit register of dimension M = 2^m.
//
// Bit-ordering convention, shared by every module and the problem file
// format: qubit j carries weight 2^j, and the leftmost (high-order) tensor
// factor is qubit m-1. Basis state |x> is the column e_x.

namespace qndphase {

namespace gates {

inline ComplexMatrix pauli_x() {
  return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

inline ComplexMatrix pauli_z() {
  return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
}

inline ComplexMatrix hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return ComplexMatrix::from_rows({{h, h}, {h, -h}});
}

}  // namespace gates

namespace detail {

inline void require_register_width(std::size_t m, const char* op) {
  if (m < 1) {
    throw std::out_of_range(std::string(op) + ": register needs at least one "
                            "qubit");
  }
  if (m > config::max_qubits()) {
    throw std::length_error(std::string(op) + ": register width " +
                            std::to_string(m) + " exceeds the cap of " +
                            std::to_string(config::max_qubits()) +
                            " qubits (QNDPHASE_MAX_QUBITS)");
  }
}

}  // namespace detail

/// Computational basis column e_x for an m-qubit register; bit j of x is the
/// state of qubit j.
inline ComplexVector basis_state(std::size_t m, std::uint64_t x) {
  detail::require_register_width(m, "basis_state");
  const std::uint64_t dim = std::uint64_t{1} << m;
  if (x >= dim) {
    throw std::out_of_range("basis_state: index " + std::to_string(x) +
                            " out of range for " + std::to_string(m) +
                            " qubits");
  }
  ComplexVector v(dim);
  v[x] = 1.0;
  return v;
}

/// Diagonal integer-label operator: eigenvalue of |x> is x itself. Built as
/// the sum over qubit positions j of the single-qubit factor
/// 2^(j-1) (I - Z), which contributes eigenvalues {0, 2^j}, tensored with
/// identities everywhere else.
inline ComplexMatrix lambda_operator(std::size_t m) {
  detail::require_register_width(m, "lambda_operator");
  const std::size_t dim = std::size_t{1} << m;
  ComplexMatrix sum(dim, dim);
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  for (std::size_t j = 0; j < m; ++j) {
    const ComplexMatrix term =
        std::ldexp(1.0, static_cast<int>(j) - 1) * (eye - gates::pauli_z());
    // Qubit j sits at tensor position m-1-j from the left.
    ComplexMatrix factor = ComplexMatrix::identity(1);
    for (std::size_t qubit = m; qubit-- > 0;) {
      factor = kron(factor, qubit == j ? term : eye);
    }
    sum = sum + factor;
  }
  return sum;
}

/// Fourier-transform matrix Q[y][x] = exp(+2*pi*i*x*y/M)/sqrt(M). The angle
/// is reduced mod M before evaluation, which keeps dyadic phases exact.
inline ComplexMatrix qft_matrix(std::size_t m) {
  detail::require_register_width(m, "qft_matrix");
  const std::uint64_t dim = std::uint64_t{1} << m;
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dim));
  ComplexMatrix q(dim, dim);
  for (std::uint64_t y = 0; y < dim; ++y) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      const std::uint64_t phase_index = (x * y) % dim;
      const double angle = 2.0 * std::numbers::pi *
                           static_cast<double>(phase_index) /
                           static_cast<double>(dim);
      q(y, x) = std::polar(inv_sqrt, angle);
    }
  }
  return q;
}

/// Integer-label operator conjugated into the Fourier basis; Hermitian with
/// the same spectrum {0, ..., M-1}.
inline ComplexMatrix gamma_operator(std::size_t m) {
  const ComplexMatrix q = qft_matrix(m);
  return q * lambda_operator(m) * q.adjoint();
}

}  // namespace qndphase
