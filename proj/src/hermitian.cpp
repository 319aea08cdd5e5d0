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

#include "qdivide/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdivide/error.hpp"

namespace qdivide {

namespace {

void check_square_small(const SmallMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > 4) {
    throw InvalidInput("expected a square matrix of size 1..4, got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void check_hermitian(const SmallMatrix& m, double tol) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
        throw InvalidInput("matrix is not Hermitian: |H(" + std::to_string(i) + "," +
                           std::to_string(j) + ") - conj(H(" + std::to_string(j) + "," +
                           std::to_string(i) + "))| exceeds tolerance");
      }
    }
  }
}

SmallMatrix symmetrized(const SmallMatrix& m) {
  SmallMatrix out = 0.5 * (m + m.adjoint());
  for (int i = 0; i < out.rows(); ++i) out(i, i) = Complex(out(i, i).real(), 0.0);
  return out;
}

std::array<SmallMatrix, 4> make_paulis() {
  const Complex i1(0.0, 1.0);
  std::array<SmallMatrix, 4> s;
  for (auto& m : s) m = SmallMatrix::Zero(2, 2);
  s[0](0, 0) = 1.0;
  s[0](1, 1) = 1.0;
  s[1](0, 1) = 1.0;
  s[1](1, 0) = 1.0;
  s[2](0, 1) = -i1;
  s[2](1, 0) = i1;
  s[3](0, 0) = 1.0;
  s[3](1, 1) = -1.0;
  return s;
}

// Nonzero pattern of sigma_mu (x) sigma_nu: exactly one entry per row.
struct TensorEntry {
  int col;
  Complex value;
};
using TensorPattern = std::array<std::array<TensorEntry, 4>, 16>;

TensorPattern make_tensor_pattern() {
  TensorPattern pattern{};
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const SmallMatrix t = pauli_tensor(mu, nu);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          if (t(r, c) != Complex(0.0, 0.0)) pattern[4 * mu + nu][r] = {c, t(r, c)};
        }
      }
    }
  }
  return pattern;
}

const TensorPattern& tensor_pattern() {
  static const TensorPattern pattern = make_tensor_pattern();
  return pattern;
}

// Eigenvalues of [[a, z], [conj z, b]].
std::array<double, 2> eig2(double a, double b, Complex z) {
  const double mean = 0.5 * (a + b);
  const double half = 0.5 * (a - b);
  const double r = std::hypot(half, std::abs(z));
  return {mean - r, mean + r};
}

// Cyclic Jacobi sweeps with complex rotations. On return the diagonal of `a`
// holds the eigenvalues; rotations are accumulated into `v` when given.
void jacobi_sweeps(SmallMatrix& a, SmallMatrix* v) {
  const int n = static_cast<int>(a.rows());
  constexpr int kMaxSweeps = 60;
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));

  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Unitary acting on the (p, q) plane:
        //   R = [[c, s * phase], [-s * conj(phase)... applied as A <- R^H A R
        // with columns p, q of R being (c, -s conj(phase)) and (s phase, c).
        const Complex rpp = c;
        const Complex rqp = -s * std::conj(phase);
        const Complex rpq = s * phase;
        const Complex rqq = c;
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * rpp + akq * rqp;
          a(k, q) = akp * rpq + akq * rqq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(rpp) * apk + std::conj(rqp) * aqk;
          a(q, k) = std::conj(rpq) * apk + std::conj(rqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
        if (v) {
          for (int k = 0; k < n; ++k) {
            const Complex vkp = (*v)(k, p);
            const Complex vkq = (*v)(k, q);
            (*v)(k, p) = vkp * rpp + vkq * rqp;
            (*v)(k, q) = vkp * rpq + vkq * rqq;
          }
        }
      }
    }
  }
}

std::vector<double> jacobi_eigenvalues(SmallMatrix a) {
  const int n = static_cast<int>(a.rows());
  jacobi_sweeps(a, nullptr);
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> eigenvalues_unchecked(const SmallMatrix& m) {
  if (m.rows() == 1) return {m(0, 0).real()};
  if (m.rows() == 2) {
    const auto ev = eig2(m(0, 0).real(), m(1, 1).real(), m(0, 1));
    return {ev[0], ev[1]};
  }
  return jacobi_eigenvalues(m);
}

}  // namespace

HermitianMatrix::HermitianMatrix(const SmallMatrix& m, double tol) {
  if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4)) {
    throw InvalidInput("HermitianMatrix must be 2x2 or 4x4, got " + std::to_string(m.rows()) +
                       "x" + std::to_string(m.cols()));
  }
  check_hermitian(m, tol);
  m_ = symmetrized(m);
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(SmallMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(SmallMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::projector(
    const Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 4, 1>& v) {
  const double n = v.norm();
  if (n == 0.0) throw InvalidInput("projector onto the zero vector");
  const auto u = v / n;
  return HermitianMatrix(u * u.adjoint());
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw InvalidInput("dimension mismatch in HermitianMatrix sum");
  return HermitianMatrix(m_ + other.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw InvalidInput("dimension mismatch in HermitianMatrix difference");
  return HermitianMatrix(m_ - other.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(m_ * s); }

PauliCoefficients::PauliCoefficients(int order) : order_(order) {
  if (order != 1 && order != 2) throw InvalidInput("Pauli expansion order must be 1 or 2");
}

PauliCoefficients::PauliCoefficients(int order, const std::vector<double>& values)
    : PauliCoefficients(order) {
  if (static_cast<int>(values.size()) != size()) {
    throw InvalidInput("expected " + std::to_string(size()) + " Pauli coefficients, got " +
                       std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), c_.begin());
}

const SmallMatrix& pauli(int k) {
  static const std::array<SmallMatrix, 4> s = make_paulis();
  if (k < 0 || k > 3) throw InvalidInput("Pauli index must be in 0..3");
  return s[k];
}

SmallMatrix pauli_tensor(int mu, int nu) {
  const SmallMatrix& a = pauli(mu);
  const SmallMatrix& b = pauli(nu);
  SmallMatrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

PauliCoefficients pauli_decompose(const HermitianMatrix& h) {
  const SmallMatrix& m = h.matrix();
  if (h.dim() == 2) {
    PauliCoefficients c(1);
    for (int mu = 0; mu < 4; ++mu) c[mu] = 0.5 * (m * pauli(mu)).trace().real();
    return c;
  }
  PauliCoefficients c(2);
  const auto& pattern = tensor_pattern();
  for (int k = 0; k < 16; ++k) {
    // Tr(H T) = sum_r sum_c H(c, r) T(r, c) with one nonzero per row of T.
    Complex acc = 0.0;
    for (int r = 0; r < 4; ++r) acc += m(pattern[k][r].col, r) * pattern[k][r].value;
    c[k] = 0.25 * acc.real();
  }
  return c;
}

HermitianMatrix pauli_compose(const PauliCoefficients& c) {
  if (c.order() == 1) {
    SmallMatrix m = SmallMatrix::Zero(2, 2);
    for (int mu = 0; mu < 4; ++mu) m += c[mu] * pauli(mu);
    return HermitianMatrix(m);
  }
  SmallMatrix m = SmallMatrix::Zero(4, 4);
  const auto& pattern = tensor_pattern();
  for (int k = 0; k < 16; ++k) {
    if (c[k] == 0.0) continue;
    for (int r = 0; r < 4; ++r) m(r, pattern[k][r].col) += c[k] * pattern[k][r].value;
  }
  return HermitianMatrix(m);
}

std::vector<double> eigenvalues(const HermitianMatrix& h) {
  return eigenvalues_unchecked(h.matrix());
}

std::vector<double> hermitian_eigenvalues(const SmallMatrix& m) {
  check_square_small(m);
  check_hermitian(m, kHermitianTol);
  return eigenvalues_unchecked(symmetrized(m));
}

EigenDecomposition eigen_decomposition(const HermitianMatrix& h) {
  SmallMatrix a = h.matrix();
  const int n = h.dim();
  SmallMatrix v = SmallMatrix::Identity(n, n);
  jacobi_sweeps(a, &v);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out;
  out.vectors = SmallMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    out.values.push_back(a(order[i], order[i]).real());
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

double trace_norm(const HermitianMatrix& h) {
  double s = 0.0;
  for (double e : eigenvalues(h)) s += std::abs(e);
  return s;
}

double trace_norm_of_coefficients(const PauliCoefficients& c) {
  if (c.order() == 1) {
    // c0 * 1 + r.sigma has eigenvalues c0 +- |r|.
    const double r = std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
    return std::abs(c[0] + r) + std::abs(c[0] - r);
  }
  SmallMatrix m = SmallMatrix::Zero(4, 4);
  const auto& pattern = tensor_pattern();
  for (int k = 0; k < 16; ++k) {
    if (c[k] == 0.0) continue;
    for (int r = 0; r < 4; ++r) m(r, pattern[k][r].col) += c[k] * pattern[k][r].value;
  }
  double s = 0.0;
  for (double e : jacobi_eigenvalues(m)) s += std::abs(e);
  return s;
}

}  // namespace qdivide
