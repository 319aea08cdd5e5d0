// Copyright 2026 The qdivide Authors
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
#include <complex>
#include <vector>

#include <Eigen/Core>

namespace qdivide {

using Complex = std::complex<double>;

/// Dense complex matrix of dimension at most 4, stored inline.
using SmallMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

/// Absolute tolerance used when checking Hermiticity of inputs.
inline constexpr double kHermitianTol = 1e-12;

/// Hermitian matrix of dimension 2 (one qubit) or 4 (two qubits).
///
/// Construction validates the shape and Hermiticity within `tol` and then
/// symmetrizes, so the stored entries are exactly Hermitian.
class HermitianMatrix {
 public:
  HermitianMatrix() : m_(SmallMatrix::Zero(2, 2)) {}
  explicit HermitianMatrix(const SmallMatrix& m, double tol = kHermitianTol);

  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);
  /// |v><v| for a column vector of length 2 or 4.
  static HermitianMatrix projector(const Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1>& v);

  int dim() const { return static_cast<int>(m_.rows()); }
  const SmallMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double trace() const;

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

 private:
  SmallMatrix m_;
};

/// Real expansion coefficients of a Hermitian matrix in the Pauli basis.
///
/// Order 1: H = sum_mu c_mu sigma_mu (4 coefficients, sigma_0 = identity).
/// Order 2: H = sum_{mu,nu} c_{mu nu} sigma_mu (x) sigma_nu (16 coefficients,
/// flattened row-major as 4*mu + nu).
class PauliCoefficients {
 public:
  PauliCoefficients() = default;
  explicit PauliCoefficients(int order);
  PauliCoefficients(int order, const std::vector<double>& values);

  int order() const { return order_; }
  int size() const { return order_ == 1 ? 4 : 16; }

  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  double& operator()(int mu, int nu) { return c_[4 * mu + nu]; }
  double operator()(int mu, int nu) const { return c_[4 * mu + nu]; }

  const std::array<double, 16>& values() const { return c_; }

 private:
  int order_ = 1;
  std::array<double, 16> c_{};
};

/// Pauli matrix sigma_k, k in 0..3 (sigma_0 = identity).
const SmallMatrix& pauli(int k);
/// sigma_mu (x) sigma_nu.
SmallMatrix pauli_tensor(int mu, int nu);

/// c_mu = Tr(H sigma_mu)/2 for dim 2, c_{mu nu} = Tr(H sigma_mu (x) sigma_nu)/4
/// for dim 4.
PauliCoefficients pauli_decompose(const HermitianMatrix& h);
/// Inverse of pauli_decompose.
HermitianMatrix pauli_compose(const PauliCoefficients& c);

/// Eigenvalues in ascending order (closed form for 2x2, cyclic Jacobi for 4x4).
std::vector<double> eigenvalues(const HermitianMatrix& h);

/// Ascending eigenvalues of an arbitrary Hermitian matrix of size <= 4.
/// Validates Hermiticity within kHermitianTol.
std::vector<double> hermitian_eigenvalues(const SmallMatrix& m);

struct EigenDecomposition {
  /// Ascending eigenvalues.
  std::vector<double> values;
  /// Orthonormal eigenvectors as columns, in the order of `values`.
  SmallMatrix vectors;
};

EigenDecomposition eigen_decomposition(const HermitianMatrix& h);

/// Sum of absolute eigenvalues.
double trace_norm(const HermitianMatrix& h);

/// Trace norm of sum_mu c_mu sigma_mu (order 1) or the two-qubit analogue,
/// without materializing a HermitianMatrix. Hot path for trajectories.
double trace_norm_of_coefficients(const PauliCoefficients& c);

}  // namespace qdivide
