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

#include <atomic>
#include <cstddef>

namespace qndphase::config {

/// Default Frobenius tolerance used by the hermiticity/unitarity predicates
/// and the nondemolition criteria checks.
inline constexpr double kDefaultTolerance = 1e-10;

/// Fixed fallback seed for every command that draws samples. Never
/// time-derived, so identical invocations produce identical output.
inline constexpr std::uint64_t kDefaultSeed = 0x51AB5EEDull;

namespace detail {
inline std::atomic<std::size_t>& max_qubits_storage() {
  static std::atomic<std::size_t> value{14};
  return value;
}
}  // namespace detail

/// Register width cap: no dense operator or state may exceed 2^max_qubits
/// rows. Bounds memory use; override via set_max_qubits (the CLI maps the
/// QNDPHASE_MAX_QUBITS environment variable onto this).
inline std::size_t max_qubits() {
  return detail::max_qubits_storage().load(std::memory_order_relaxed);
}

inline void set_max_qubits(std::size_t m) {
  detail::max_qubits_storage().store(m, std::memory_order_relaxed);
}

/// Largest permitted dense dimension, 2^max_qubits.
inline std::size_t max_dimension() {
  return static_cast<std::size_t>(1) << max_qubits();
}

}  // namespace qndphase::config
