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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qndphase/complex_matrix.hpp"
#include "qndphase/config.hpp"
#include "qndphase/register_ops.hpp"

// Problem-description text format (".qpe" files) and its parser.
//
// The grammar is line-oriented; '#' starts a comment. Keys:
//
//   index_bits <int>
//   unitary gate <X|Z|H>
//   unitary diag <phase>[,<phase>...]      phases accept "0.75pi" sugar
//   unitary matrix [[re+imi,...],...]      whole literal on one line
//   unitary hamiltonian [[re+imi,...],...]
//   target basis <int>
//   target amps [re+imi,...]
//   target eigen <plus|minus>
//   shots <int>
//   seed <int>
//
// Unknown keys are errors. Diagnostics are collected across the whole file
// rather than stopping at the first problem.

namespace qndphase {

enum class Severity { kError, kWarning };

struct ParseDiagnostic {
  std::size_t line = 1;    ///< 1-based
  std::size_t column = 1;  ///< 1-based
  std::string message;
  Severity severity = Severity::kError;
};

enum class UnitaryKind { kGate, kDiag, kMatrix, kHamiltonian };
enum class TargetKind { kBasis, kAmps, kEigen };

struct UnitarySpec {
  UnitaryKind kind = UnitaryKind::kGate;
  std::string gate;            // kGate: "X", "Z" or "H"
  std::vector<double> phases;  // kDiag: radians, reduced into [0, 2pi)
  ComplexMatrix matrix;        // kMatrix / kHamiltonian

  friend bool operator==(const UnitarySpec& a, const UnitarySpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case UnitaryKind::kGate:
        return a.gate == b.gate;
      case UnitaryKind::kDiag:
        return a.phases == b.phases;
      case UnitaryKind::kMatrix:
      case UnitaryKind::kHamiltonian:
        return a.matrix.rows() == b.matrix.rows() &&
               a.matrix.entries() == b.matrix.entries();
    }
    return false;
  }
};

struct TargetSpec {
  TargetKind kind = TargetKind::kBasis;
  std::uint64_t basis_index = 0;  // kBasis
  ComplexVector amps;             // kAmps
  std::string eigen;              // kEigen: "plus" or "minus"

  friend bool operator==(const TargetSpec& a, const TargetSpec& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case TargetKind::kBasis:
        return a.basis_index == b.basis_index;
      case TargetKind::kAmps:
        return a.amps.entries() == b.amps.entries();
      case TargetKind::kEigen:
        return a.eigen == b.eigen;
    }
    return false;
  }
};

struct QpeProblem {
  std::size_t index_bits = 0;
  UnitarySpec unitary;
  TargetSpec target;
  std::uint64_t shots = 100;
  std::uint64_t seed = config::kDefaultSeed;

  friend bool operator==(const QpeProblem& a, const QpeProblem& b) {
    return a.index_bits == b.index_bits && a.unitary == b.unitary &&
           a.target == b.target && a.shots == b.shots && a.seed == b.seed;
  }
};

struct ParseResult {
  std::optional<QpeProblem> problem;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const {
    if (!problem.has_value()) return false;
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::kError) return false;
    }
    return true;
  }
};

namespace ir_detail {

inline constexpr std::uint64_t kMaxShots = 100'000'000;

inline std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  if (lead != nullptr) *lead = b;
  return s.substr(b, e - b);
}

inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return value;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return value;
}

inline double reduce_mod_two_pi(double phase) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phase, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

/// "0.75pi", "pi", "-pi", "2pi" or a plain radian value.
inline std::optional<double> parse_phase_literal(std::string_view s) {
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    const std::string_view prefix = s.substr(0, s.size() - 2);
    double factor = 1.0;
    if (!prefix.empty() && prefix != "+" && prefix != "-") {
      const auto parsed = parse_double(prefix);
      if (!parsed.has_value()) return std::nullopt;
      factor = *parsed;
    } else if (prefix == "-") {
      factor = -1.0;
    }
    return factor * std::numbers::pi;
  }
  return parse_double(s);
}

/// "1", "-2.5", "i", "-i", "2i", "1+2i", "0.5-0.25i", "1e-3+2e-4i".
inline std::optional<Complex> parse_complex_literal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (const auto re = parse_double(s); re.has_value()) {
    return Complex{*re, 0.0};
  }
  if (s.back() != 'i') return std::nullopt;
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') &&
        body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto parse_signed_or_unit = [](std::string_view part)
      -> std::optional<double> {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_double(part);
  };
  if (split == std::string_view::npos) {
    const auto im = parse_signed_or_unit(body);
    if (!im.has_value()) return std::nullopt;
    return Complex{0.0, *im};
  }
  const auto re = parse_double(body.substr(0, split));
  const auto im = parse_signed_or_unit(body.substr(split));
  if (!re.has_value() || !im.has_value()) return std::nullopt;
  return Complex{*re, *im};
}

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_complex(const Complex& v) {
  if (v.imag() == 0.0) return fmt_double(v.real());
  if (v.real() == 0.0) return fmt_double(v.imag()) + "i";
  std::string out = fmt_double(v.real());
  if (v.imag() >= 0.0) out += "+";
  out += fmt_double(v.imag()) + "i";
  return out;
}

}  // namespace ir_detail

namespace ir_detail {

/// Parser working state; one instance per parse() call.
class ProblemParser {
 public:
  ParseResult run(std::string_view source) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
      const std::size_t nl = source.find('\n', start);
      const std::string_view raw_line =
          source.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                            : nl - start);
      ++line_no;
      parse_line(raw_line, line_no);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    finish();
    ParseResult result;
    result.diagnostics = std::move(diags_);
    bool has_error = false;
    for (const auto& d : result.diagnostics) {
      if (d.severity == Severity::kError) has_error = true;
    }
    if (!has_error) result.problem = std::move(problem_);
    return result;
  }

 private:
  void error(std::size_t line, std::size_t column, std::string message) {
    diags_.push_back({line, column, std::move(message), Severity::kError});
  }
  void warning(std::size_t line, std::size_t column, std::string message) {
    diags_.push_back({line, column, std::move(message), Severity::kWarning});
  }

  void parse_line(std::string_view raw, std::size_t line_no) {
    const std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string_view line = trim(raw, &lead);
    if (line.empty()) return;

    const std::size_t key_col = lead + 1;
    const std::size_t key_end = line.find_first_of(" \t");
    const std::string_view key = line.substr(0, key_end);
    std::string_view rest_raw =
        key_end == std::string_view::npos ? std::string_view{} : line.substr(key_end);
    std::size_t rest_lead = 0;
    const std::string_view rest = trim(rest_raw, &rest_lead);
    const std::size_t rest_col =
        key_col + (key_end == std::string_view::npos ? key.size() : key_end) +
        rest_lead;

    if (key == "index_bits") {
      parse_index_bits(rest, line_no, key_col, rest_col);
    } else if (key == "unitary") {
      parse_unitary(rest, line_no, key_col, rest_col);
    } else if (key == "target") {
      parse_target(rest, line_no, key_col, rest_col);
    } else if (key == "shots") {
      parse_shots(rest, line_no, key_col, rest_col);
    } else if (key == "seed") {
      parse_seed(rest, line_no, key_col, rest_col);
    } else {
      error(line_no, key_col, "unknown key '" + std::string(key) + "'");
    }
  }

  void parse_index_bits(std::string_view rest, std::size_t line_no,
                        std::size_t key_col, std::size_t rest_col) {
    if (seen_index_bits_) {
      error(line_no, key_col, "duplicate key 'index_bits'");
      return;
    }
    seen_index_bits_ = true;
    const auto value = parse_uint(rest);
    if (!value.has_value()) {
      error(line_no, rest_col,
            "expected a non-negative integer after 'index_bits'");
      return;
    }
    if (*value < 1 || *value > config::max_qubits()) {
      error(line_no, rest_col,
            "index_bits must be between 1 and " +
                std::to_string(config::max_qubits()) +
                " (QNDPHASE_MAX_QUBITS)");
      return;
    }
    problem_.index_bits = static_cast<std::size_t>(*value);
    index_bits_ok_ = true;
    index_bits_line_ = line_no;
  }

  void parse_unitary(std::string_view rest, std::size_t line_no,
                     std::size_t key_col, std::size_t rest_col) {
    if (seen_unitary_) {
      error(line_no, key_col, "duplicate key 'unitary'");
      return;
    }
    seen_unitary_ = true;
    const std::size_t sub_end = rest.find_first_of(" \t");
    const std::string_view sub = rest.substr(0, sub_end);
    std::string_view value_raw =
        sub_end == std::string_view::npos ? std::string_view{} : rest.substr(sub_end);
    std::size_t value_lead = 0;
    const std::string_view value = trim(value_raw, &value_lead);
    const std::size_t value_col =
        rest_col + (sub_end == std::string_view::npos ? sub.size() : sub_end) +
        value_lead;

    if (sub == "gate") {
      if (value != "X" && value != "Z" && value != "H") {
        error(line_no, value_col,
              "unknown gate '" + std::string(value) + "' (expected X, Z or H)");
        return;
      }
      problem_.unitary.kind = UnitaryKind::kGate;
      problem_.unitary.gate = std::string(value);
      unitary_ok_ = true;
    } else if (sub == "diag") {
      parse_diag(value, line_no, value_col);
    } else if (sub == "matrix" || sub == "hamiltonian") {
      parse_matrix_literal(value, sub == "matrix", line_no, value_col);
    } else {
      error(line_no, rest_col,
            "unknown unitary form '" + std::string(sub) +
                "' (expected gate, diag, matrix or hamiltonian)");
    }
  }

  void parse_diag(std::string_view value, std::size_t line_no,
                  std::size_t value_col) {
    if (value.empty()) {
      error(line_no, value_col, "expected a phase list after 'unitary diag'");
      return;
    }
    std::vector<double> phases;
    std::size_t pos = 0;
    bool ok = true;
    while (pos <= value.size()) {
      std::size_t comma = value.find(',', pos);
      if (comma == std::string_view::npos) comma = value.size();
      std::size_t lead = 0;
      const std::string_view entry = trim(value.substr(pos, comma - pos), &lead);
      const std::size_t entry_col = value_col + pos + lead;
      const auto phase = parse_phase_literal(entry);
      if (!phase.has_value()) {
        error(line_no, entry_col,
              "invalid phase literal '" + std::string(entry) + "'");
        ok = false;
      } else {
        phases.push_back(reduce_mod_two_pi(*phase));
      }
      if (comma == value.size()) break;
      pos = comma + 1;
    }
    if (!ok) return;
    if (phases.size() < 2 || (phases.size() & (phases.size() - 1)) != 0) {
      error(line_no, value_col,
            "diag needs a power-of-two number of phases (at least 2), got " +
                std::to_string(phases.size()));
      return;
    }
    problem_.unitary.kind = UnitaryKind::kDiag;
    problem_.unitary.phases = std::move(phases);
    unitary_ok_ = true;
  }

  /// Parses a one-line [[...],[...]] literal of complex entries.
  std::optional<ComplexMatrix> parse_rows_literal(std::string_view value,
                                                  std::size_t line_no,
                                                  std::size_t value_col) {
    std::size_t pos = 0;
    const auto col_of = [&](std::size_t p) {
      if (!value.empty() && p >= value.size()) p = value.size() - 1;
      return value_col + p;
    };
    const auto skip_ws = [&] {
      while (pos < value.size() && (value[pos] == ' ' || value[pos] == '\t'))
        ++pos;
    };
    skip_ws();
    if (pos >= value.size() || value[pos] != '[') {
      error(line_no, col_of(pos), "expected '[' to open the matrix literal");
      return std::nullopt;
    }
    ++pos;
    std::vector<std::vector<Complex>> rows;
    while (true) {
      skip_ws();
      if (pos >= value.size() || value[pos] != '[') {
        error(line_no, col_of(pos), "expected '[' to open a matrix row");
        return std::nullopt;
      }
      ++pos;
      std::vector<Complex> row;
      while (true) {
        skip_ws();
        const std::size_t entry_start = pos;
        while (pos < value.size() && value[pos] != ',' && value[pos] != ']')
          ++pos;
        if (pos >= value.size()) {
          error(line_no, col_of(entry_start), "unterminated matrix row");
          return std::nullopt;
        }
        const std::string_view entry = trim(value.substr(entry_start, pos - entry_start));
        const auto parsed = parse_complex_literal(entry);
        if (!parsed.has_value()) {
          error(line_no, col_of(entry_start),
                "invalid complex literal '" + std::string(entry) + "'");
          return std::nullopt;
        }
        row.push_back(*parsed);
        if (value[pos] == ']') {
          ++pos;
          break;
        }
        ++pos;  // consume ','
      }
      rows.push_back(std::move(row));
      skip_ws();
      if (pos < value.size() && value[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    skip_ws();
    if (pos >= value.size() || value[pos] != ']') {
      error(line_no, col_of(pos), "expected ']' to close the matrix literal");
      return std::nullopt;
    }
    ++pos;
    skip_ws();
    if (pos < value.size()) {
      error(line_no, col_of(pos), "unexpected trailing text after matrix literal");
      return std::nullopt;
    }

    const std::size_t n = rows.size();
    for (const auto& row : rows) {
      if (row.size() != n) {
        error(line_no, value_col, "matrix literal must be square");
        return std::nullopt;
      }
    }
    if (n < 2 || (n & (n - 1)) != 0) {
      error(line_no, value_col,
            "matrix dimension must be a power of two (at least 2), got " +
                std::to_string(n));
      return std::nullopt;
    }
    if (n > 16) {
      error(line_no, value_col,
            "matrix literals are capped at dimension 16; use 'unitary "
            "hamiltonian' or a named construction for larger operators");
      return std::nullopt;
    }
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    return m;
  }

  void parse_matrix_literal(std::string_view value, bool is_matrix,
                            std::size_t line_no, std::size_t value_col) {
    const auto m = parse_rows_literal(value, line_no, value_col);
    if (!m.has_value()) return;
    if (is_matrix) {
      const double dev =
          frobenius_distance(*m * m->adjoint(),
                             ComplexMatrix::identity(m->rows()));
      if (dev > 1e-8) {
        error(line_no, value_col,
              "matrix is not unitary (deviation " + fmt_double(dev) +
                  " exceeds 1e-08)");
        return;
      }
      problem_.unitary.kind = UnitaryKind::kMatrix;
    } else {
      const double dev = frobenius_distance(*m, m->adjoint());
      if (dev > 1e-8) {
        error(line_no, value_col,
              "hamiltonian is not Hermitian (deviation " + fmt_double(dev) +
                  " exceeds 1e-08)");
        return;
      }
      problem_.unitary.kind = UnitaryKind::kHamiltonian;
    }
    problem_.unitary.matrix = *m;
    unitary_ok_ = true;
  }

  void parse_target(std::string_view rest, std::size_t line_no,
                    std::size_t key_col, std::size_t rest_col) {
    if (seen_target_) {
      error(line_no, key_col, "duplicate key 'target'");
      return;
    }
    seen_target_ = true;
    target_line_ = line_no;
    const std::size_t sub_end = rest.find_first_of(" \t");
    const std::string_view sub = rest.substr(0, sub_end);
    std::string_view value_raw =
        sub_end == std::string_view::npos ? std::string_view{} : rest.substr(sub_end);
    std::size_t value_lead = 0;
    const std::string_view value = trim(value_raw, &value_lead);
    const std::size_t value_col =
        rest_col + (sub_end == std::string_view::npos ? sub.size() : sub_end) +
        value_lead;

    if (sub == "basis") {
      const auto index = parse_uint(value);
      if (!index.has_value()) {
        error(line_no, value_col,
              "expected a non-negative integer after 'target basis'");
        return;
      }
      problem_.target.kind = TargetKind::kBasis;
      problem_.target.basis_index = *index;
      target_ok_ = true;
    } else if (sub == "amps") {
      parse_amps(value, line_no, value_col);
    } else if (sub == "eigen") {
      if (value != "plus" && value != "minus") {
        error(line_no, value_col,
              "unknown eigenstate '" + std::string(value) +
                  "' (expected plus or minus)");
        return;
      }
      problem_.target.kind = TargetKind::kEigen;
      problem_.target.eigen = std::string(value);
      target_ok_ = true;
    } else {
      error(line_no, rest_col,
            "unknown target form '" + std::string(sub) +
                "' (expected basis, amps or eigen)");
    }
  }

  void parse_amps(std::string_view value, std::size_t line_no,
                  std::size_t value_col) {
    std::size_t pos = 0;
    const auto skip_ws = [&] {
      while (pos < value.size() && (value[pos] == ' ' || value[pos] == '\t'))
        ++pos;
    };
    skip_ws();
    if (pos >= value.size() || value[pos] != '[') {
      error(line_no, value_col + pos,
            "expected '[' to open the amplitude list");
      return;
    }
    ++pos;
    std::vector<Complex> amps;
    while (true) {
      skip_ws();
      const std::size_t entry_start = pos;
      while (pos < value.size() && value[pos] != ',' && value[pos] != ']')
        ++pos;
      if (pos >= value.size()) {
        error(line_no, value_col + entry_start, "unterminated amplitude list");
        return;
      }
      const std::string_view entry = trim(value.substr(entry_start, pos - entry_start));
      const auto parsed = parse_complex_literal(entry);
      if (!parsed.has_value()) {
        error(line_no, value_col + entry_start,
              "invalid complex literal '" + std::string(entry) + "'");
        return;
      }
      amps.push_back(*parsed);
      if (value[pos] == ']') {
        ++pos;
        break;
      }
      ++pos;
    }
    skip_ws();
    if (pos < value.size()) {
      error(line_no, value_col + pos,
            "unexpected trailing text after amplitude list");
      return;
    }
    if (amps.size() < 2 || (amps.size() & (amps.size() - 1)) != 0) {
      error(line_no, value_col,
            "amplitude list length must be a power of two (at least 2), got " +
                std::to_string(amps.size()));
      return;
    }
    problem_.target.kind = TargetKind::kAmps;
    problem_.target.amps = ComplexVector(std::move(amps));
    target_ok_ = true;
  }

  void parse_shots(std::string_view rest, std::size_t line_no,
                   std::size_t key_col, std::size_t rest_col) {
    if (seen_shots_) {
      error(line_no, key_col, "duplicate key 'shots'");
      return;
    }
    seen_shots_ = true;
    const auto value = parse_uint(rest);
    if (!value.has_value()) {
      error(line_no, rest_col, "expected a non-negative integer after 'shots'");
      return;
    }
    if (*value > kMaxShots) {
      error(line_no, rest_col,
            "shots capped at " + std::to_string(kMaxShots));
      return;
    }
    problem_.shots = *value;
  }

  void parse_seed(std::string_view rest, std::size_t line_no,
                  std::size_t key_col, std::size_t rest_col) {
    if (seen_seed_) {
      error(line_no, key_col, "duplicate key 'seed'");
      return;
    }
    seen_seed_ = true;
    const auto value = parse_uint(rest);
    if (!value.has_value()) {
      error(line_no, rest_col, "expected a non-negative integer after 'seed'");
      return;
    }
    problem_.seed = *value;
  }

  /// Cross-field validation once the whole file has been scanned.
  void finish() {
    if (!seen_index_bits_) error(1, 1, "missing index_bits");
    if (!seen_unitary_) error(1, 1, "missing unitary");
    if (!seen_target_) error(1, 1, "missing target");
    if (!unitary_ok_ || !target_ok_) return;

    const std::size_t dim = unitary_dimension(problem_.unitary);
    switch (problem_.target.kind) {
      case TargetKind::kBasis:
        if (problem_.target.basis_index >= dim) {
          error(target_line_, 1,
                "target basis index " +
                    std::to_string(problem_.target.basis_index) +
                    " out of range for a unitary of dimension " +
                    std::to_string(dim));
        }
        break;
      case TargetKind::kAmps: {
        if (problem_.target.amps.dim() != dim) {
          error(target_line_, 1,
                "target has dimension " +
                    std::to_string(problem_.target.amps.dim()) +
                    " but the unitary has dimension " + std::to_string(dim));
          break;
        }
        const double norm = problem_.target.amps.norm();
        if (std::abs(norm - 1.0) > 1e-6) {
          error(target_line_, 1,
                "target amplitudes are not normalized (norm " +
                    fmt_double(norm) + " deviates by more than 1e-06)");
        } else if (std::abs(norm - 1.0) > 1e-9) {
          warning(target_line_, 1,
                  "target amplitudes renormalized (norm " + fmt_double(norm) +
                      ")");
        }
        break;
      }
      case TargetKind::kEigen:
        if (dim != 2) {
          error(target_line_, 1,
                "eigen targets require a single-qubit unitary, got dimension " +
                    std::to_string(dim));
        }
        break;
    }

    if (index_bits_ok_) {
      std::size_t t = 0;
      while ((std::size_t{1} << t) < dim) ++t;
      if (problem_.index_bits + t > config::max_qubits()) {
        error(index_bits_line_, 1,
              "problem needs " + std::to_string(problem_.index_bits + t) +
                  " qubits in total, exceeding the cap of " +
                  std::to_string(config::max_qubits()) +
                  " (QNDPHASE_MAX_QUBITS)");
      }
    }
  }

  static std::size_t unitary_dimension(const UnitarySpec& u) {
    switch (u.kind) {
      case UnitaryKind::kGate:
        return 2;
      case UnitaryKind::kDiag:
        return u.phases.size();
      case UnitaryKind::kMatrix:
      case UnitaryKind::kHamiltonian:
        return u.matrix.rows();
    }
    return 0;
  }

  QpeProblem problem_;
  std::vector<ParseDiagnostic> diags_;
  bool seen_index_bits_ = false, seen_unitary_ = false, seen_target_ = false;
  bool seen_shots_ = false, seen_seed_ = false;
  bool index_bits_ok_ = false, unitary_ok_ = false, target_ok_ = false;
  std::size_t index_bits_line_ = 1, target_line_ = 1;
};

}  // namespace ir_detail

inline ParseResult parse(std::string_view source) {
  return ir_detail::ProblemParser{}.run(source);
}

inline std::size_t problem_unitary_dimension(const QpeProblem& p) {
  switch (p.unitary.kind) {
    case UnitaryKind::kGate:
      return 2;
    case UnitaryKind::kDiag:
      return p.unitary.phases.size();
    case UnitaryKind::kMatrix:
    case UnitaryKind::kHamiltonian:
      return p.unitary.matrix.rows();
  }
  return 0;
}

/// Expands the parsed specs into a concrete (unitary, target) pair.
inline std::pair<ComplexMatrix, ComplexVector> resolve(const QpeProblem& p) {
  ComplexMatrix u;
  switch (p.unitary.kind) {
    case UnitaryKind::kGate:
      if (p.unitary.gate == "X") {
        u = gates::pauli_x();
      } else if (p.unitary.gate == "Z") {
        u = gates::pauli_z();
      } else if (p.unitary.gate == "H") {
        u = gates::hadamard();
      } else {
        throw std::invalid_argument("resolve: unknown gate '" +
                                    p.unitary.gate + "'");
      }
      break;
    case UnitaryKind::kDiag: {
      const std::size_t n = p.unitary.phases.size();
      u = ComplexMatrix(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        u(i, i) = std::polar(1.0, p.unitary.phases[i]);
      }
      break;
    }
    case UnitaryKind::kMatrix:
      u = p.unitary.matrix;
      break;
    case UnitaryKind::kHamiltonian:
      u = hermitian_expi(p.unitary.matrix, 1.0, 1e-8);
      break;
  }

  const std::size_t dim = u.rows();
  ComplexVector target;
  switch (p.target.kind) {
    case TargetKind::kBasis:
      if (p.target.basis_index >= dim) {
        throw std::out_of_range("resolve: target basis index out of range");
      }
      target = ComplexVector(dim);
      target[p.target.basis_index] = 1.0;
      break;
    case TargetKind::kAmps:
      if (p.target.amps.dim() != dim) {
        throw std::invalid_argument("resolve: target/unitary dimension "
                                    "mismatch");
      }
      target = p.target.amps.normalized();
      break;
    case TargetKind::kEigen: {
      if (dim != 2) {
        throw std::invalid_argument("resolve: eigen targets need dimension 2");
      }
      const double h = 1.0 / std::numbers::sqrt2;
      target = ComplexVector{Complex{h, 0.0},
                             Complex{p.target.eigen == "minus" ? -h : h, 0.0}};
      break;
    }
  }
  return {std::move(u), std::move(target)};
}

/// Canonical text form; parse(serialize(p)) reproduces p field-for-field.
inline std::string serialize(const QpeProblem& p) {
  using ir_detail::fmt_complex;
  using ir_detail::fmt_double;
  std::string out;
  out += "index_bits " + std::to_string(p.index_bits) + "\n";
  switch (p.unitary.kind) {
    case UnitaryKind::kGate:
      out += "unitary gate " + p.unitary.gate + "\n";
      break;
    case UnitaryKind::kDiag: {
      out += "unitary diag ";
      for (std::size_t i = 0; i < p.unitary.phases.size(); ++i) {
        if (i > 0) out += ",";
        out += fmt_double(p.unitary.phases[i]);
      }
      out += "\n";
      break;
    }
    case UnitaryKind::kMatrix:
    case UnitaryKind::kHamiltonian: {
      out += p.unitary.kind == UnitaryKind::kMatrix ? "unitary matrix ["
                                                    : "unitary hamiltonian [";
      const ComplexMatrix& m = p.unitary.matrix;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i > 0) out += ",";
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
          if (j > 0) out += ",";
          out += fmt_complex(m(i, j));
        }
        out += "]";
      }
      out += "]\n";
      break;
    }
  }
  switch (p.target.kind) {
    case TargetKind::kBasis:
      out += "target basis " + std::to_string(p.target.basis_index) + "\n";
      break;
    case TargetKind::kAmps: {
      out += "target amps [";
      for (std::size_t i = 0; i < p.target.amps.dim(); ++i) {
        if (i > 0) out += ",";
        out += fmt_complex(p.target.amps[i]);
      }
      out += "]\n";
      break;
    }
    case TargetKind::kEigen:
      out += "target eigen " + p.target.eigen + "\n";
      break;
  }
  out += "shots " + std::to_string(p.shots) + "\n";
  out += "seed " + std::to_string(p.seed) + "\n";
  return out;
}

}  // namespace qndphase
