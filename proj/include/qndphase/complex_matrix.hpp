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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qndphase/config.hpp"

namespace qndphase {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Values are immutable by convention once
/// built (all operations return fresh matrices), which is what makes them
/// safe to share across threads.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: entry count " +
                                  std::to_string(entries_.size()) +
                                  " does not match " + std::to_string(rows_) +
                                  "x" + std::to_string(cols_));
    }
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Row-by-row literal, e.g. ComplexMatrix::from_rows({{0, 1}, {1, 0}}).
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) {
        throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
      }
      std::size_t j = 0;
      for (const Complex& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out(j, i) = std::conj((*this)(i, j));
      }
    }
    return out;
  }

  Complex trace() const {
    if (!is_square()) {
      throw std::invalid_argument("trace: matrix is not square");
    }
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Dense complex column vector.
class ComplexVector {
 public:
  ComplexVector() = default;

  explicit ComplexVector(std::size_t dim)
      : entries_(dim, Complex{0.0, 0.0}) {}

  explicit ComplexVector(std::vector<Complex> entries)
      : entries_(std::move(entries)) {}

  ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {}

  std::size_t dim() const { return entries_.size(); }

  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  double norm() const {
    double s = 0.0;
    for (const Complex& v : entries_) s += std::norm(v);
    return std::sqrt(s);
  }

  ComplexVector normalized() const {
    const double n = norm();
    if (n == 0.0) {
      throw std::domain_error("ComplexVector::normalized: zero vector");
    }
    ComplexVector out = *this;
    for (Complex& v : out.entries_) v /= n;
    return out;
  }

 private:
  std::vector<Complex> entries_;
};

namespace detail {

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                               const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}

}  // namespace detail

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_shape(a, b, "operator+");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_shape(a, b, "operator-");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

inline ComplexMatrix operator*(const Complex& s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const Complex& s) {
  return s * a;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) {
  return Complex{s, 0.0} * a;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, double s) {
  return Complex{s, 0.0} * a;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("operator*: inner dimensions " +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  // i-k-j order keeps both operands walking row-major.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

inline ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.dim()) {
    throw std::invalid_argument("matrix-vector: dimension mismatch");
  }
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("vector+: dimension mismatch");
  }
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("vector-: dimension mismatch");
  }
  ComplexVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline ComplexVector operator*(const Complex& s, const ComplexVector& v) {
  ComplexVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return out;
}

/// Conjugated inner product <a|b>.
inline Complex inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const Complex& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

inline double frobenius_distance(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
  return frobenius_norm(a - b);
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return frobenius_distance(a, b) <= tol;
}

inline bool approx_equal(const ComplexVector& a, const ComplexVector& b,
                         double tol) {
  if (a.dim() != b.dim()) return false;
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s) <= tol;
}

inline bool is_hermitian(const ComplexMatrix& a,
                         double tol = config::kDefaultTolerance) {
  if (!a.is_square()) return false;
  return frobenius_distance(a, a.adjoint()) <= tol;
}

inline bool is_unitary(const ComplexMatrix& a,
                       double tol = config::kDefaultTolerance) {
  if (!a.is_square()) return false;
  return frobenius_distance(a * a.adjoint(),
                            ComplexMatrix::identity(a.rows())) <= tol;
}

inline bool is_diagonal(const ComplexMatrix& a,
                        double tol = config::kDefaultTolerance) {
  if (!a.is_square()) return false;
  double off = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) off += std::norm(a(i, j));
  return std::sqrt(off) <= tol;
}

/// Kronecker product; the left operand is the high-order tensor factor.
/// Guarded by the global register cap so runaway register sizes fail loudly
/// instead of exhausting memory.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t cap = config::max_dimension();
  if (a.rows() * b.rows() > cap || a.cols() * b.cols() > cap) {
    throw std::length_error(
        "kron: result dimension " + std::to_string(a.rows() * b.rows()) + "x" +
        std::to_string(a.cols() * b.cols()) + " exceeds the register cap of " +
        std::to_string(cap) + " (QNDPHASE_MAX_QUBITS)");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex f = a(ia, ja);
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
      }
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  const std::size_t cap = config::max_dimension();
  if (a.dim() * b.dim() > cap) {
    throw std::length_error("kron: vector dimension " +
                            std::to_string(a.dim() * b.dim()) +
                            " exceeds the register cap of " +
                            std::to_string(cap));
  }
  ComplexVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

inline ComplexMatrix commutator(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw std::invalid_argument("commutator: operands must be square and of "
                                "equal dimension");
  }
  return a * b - b * a;
}

/// Hermitian eigendecomposition h = V diag(values) V^dagger.
struct Eigensystem {
  std::vector<double> values;  ///< real eigenvalues, in V's column order
  ComplexMatrix vectors;       ///< unitary; column k is the k-th eigenvector
};

/// Cyclic Jacobi diagonalization with complex rotations. Quadratically
/// convergent at the dense desk-scale dimensions used here; exactly-zero
/// pivots are skipped, so block-diagonal operators cost only their blocks.
inline Eigensystem hermitian_eigensystem(
    const ComplexMatrix& h, double tol = config::kDefaultTolerance) {
  if (!h.is_square()) {
    throw std::invalid_argument("hermitian_eigensystem: matrix not square");
  }
  if (!is_hermitian(h, tol)) {
    throw std::invalid_argument(
        "hermitian_eigensystem: matrix is not Hermitian (Frobenius deviation " +
        std::to_string(frobenius_distance(h, h.adjoint())) +
        " exceeds tolerance " + std::to_string(tol) + ")");
  }
  const std::size_t n = h.rows();
  // Work on the exactly Hermitian average so roundoff in the input cannot
  // push the iteration off the Hermitian manifold.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = frobenius_norm(a);
  if (scale == 0.0 || n == 1) {
    Eigensystem eig;
    eig.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) eig.values[i] = a(i, i).real();
    eig.vectors = std::move(v);
    return eig;
  }
  const double off_target = scale * 1e-15;
  const double pivot_skip = scale * 1e-17;

  constexpr int kMaxSweeps = 64;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * std::norm(a(i, j));
    if (std::sqrt(off) <= off_target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= pivot_skip) continue;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase = apq / r;
        const Complex sp = s * phase;
        const Complex spc = s * std::conj(phase);

        // Columns: a <- a J, with J[p][p]=c, J[p][q]=s*phase,
        // J[q][p]=-s*conj(phase), J[q][q]=c.
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p);
          const Complex aiq = a(i, q);
          a(i, p) = c * aip - spc * aiq;
          a(i, q) = sp * aip + c * aiq;
        }
        // Rows: a <- J^dagger a.
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a(p, j);
          const Complex aqj = a(q, j);
          a(p, j) = c * apj - sp * aqj;
          a(q, j) = spc * apj + c * aqj;
        }
        // The rotation annihilates the pivot analytically; pin it.
        a(p, q) = Complex{0.0, 0.0};
        a(q, p) = Complex{0.0, 0.0};
        a(p, p) = Complex{a(p, p).real(), 0.0};
        a(q, q) = Complex{a(q, q).real(), 0.0};

        for (std::size_t i = 0; i < n; ++i) {
          const Complex vip = v(i, p);
          const Complex viq = v(i, q);
          v(i, p) = c * vip - spc * viq;
          v(i, q) = sp * vip + c * viq;
        }
      }
    }
  }
  if (!converged) {
    // One final off-norm check before giving up: the sweep loop may have
    // reached the target exactly on its last pass.
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * std::norm(a(i, j));
    if (std::sqrt(off) > off_target * 10.0) {
      throw std::runtime_error(
          "hermitian_eigensystem: Jacobi iteration did not converge");
    }
  }

  Eigensystem eig;
  eig.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) eig.values[i] = a(i, i).real();
  eig.vectors = std::move(v);
  return eig;
}

/// exp(i * scale * h) for Hermitian h, via h = V D V^dagger. The result is
/// unitary to within roundoff of the eigendecomposition.
inline ComplexMatrix hermitian_expi(const ComplexMatrix& h, double scale,
                                    double tol = config::kDefaultTolerance) {
  if (!is_hermitian(h, tol)) {
    throw std::invalid_argument(
        "hermitian_expi: matrix is not Hermitian (Frobenius deviation " +
        std::to_string(frobenius_distance(h, h.adjoint())) +
        " exceeds tolerance " + std::to_string(tol) + ")");
  }
  const Eigensystem eig = hermitian_eigensystem(h, tol);
  const std::size_t n = h.rows();
  ComplexMatrix scaled = eig.vectors;  // V * diag(exp(i*scale*lambda))
  for (std::size_t j = 0; j < n; ++j) {
    const Complex f = std::polar(1.0, scale * eig.values[j]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
  }
  return scaled * eig.vectors.adjoint();
}

}  // namespace qndphase
