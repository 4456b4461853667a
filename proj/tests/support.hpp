#pragma once

// Random inputs and independent reference computations for the tests.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsimnet/qsimnet.hpp"

namespace testing_support {

using qsimnet::CMatrix;
using qsimnet::Complex;
using qsimnet::CVector;
using qsimnet::Index;
using qsimnet::Matrix;
using qsimnet::Vector;

inline constexpr double kPi = 3.14159265358979323846;

inline double uniform(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = uniform(rng);
  return m;
}

inline CMatrix random_hermitian_matrix(Index n, std::mt19937_64& rng) {
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    m(i, i) = uniform(rng);
    for (Index k = i + 1; k < n; ++k) {
      m(i, k) = Complex(uniform(rng), uniform(rng));
      m(k, i) = std::conj(m(i, k));
    }
  }
  return m;
}

inline qsimnet::Hamiltonian random_hamiltonian(Index n, std::mt19937_64& rng) {
  return qsimnet::Hamiltonian(random_hermitian_matrix(n, rng));
}

inline double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

/// Random Hermitian H whose real part has condition number below the bound.
inline qsimnet::Hamiltonian random_hamiltonian_invertible_real(Index n, std::mt19937_64& rng,
                                                               double max_cond = 1e6) {
  for (;;) {
    qsimnet::Hamiltonian h = random_hamiltonian(n, rng);
    if (condition_number(h.real_part()) < max_cond) return h;
  }
}

inline qsimnet::StateVector random_state(Index n, std::mt19937_64& rng) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(uniform(rng), uniform(rng));
  return qsimnet::StateVector(v, qsimnet::StateVector::Normalize::rescale);
}

/// exp(-iHt) psi0 through Pade scaling and squaring, no eigensolver.
inline CVector expm_evolve(const CMatrix& h, const CVector& psi0, double t) {
  const CMatrix gen = (Complex(0.0, -t) * h).eval();
  return gen.exp() * psi0;
}

/// exp(Mt) x0 for a real generator.
inline Vector expm_flow(const Matrix& m, const Vector& x0, double t) {
  const Matrix gen = (m * t).eval();
  return gen.exp() * x0;
}

/// exp(Kt) [q0; qdot0] for the companion of q'' + A q' + B q = 0, top half.
inline Vector expm_second_order(const Matrix& a, const Matrix& b, const Vector& q0,
                                const Vector& qdot0, double t) {
  const Index n = a.rows();
  Matrix k = Matrix::Zero(2 * n, 2 * n);
  k.topRightCorner(n, n) = Matrix::Identity(n, n);
  k.bottomLeftCorner(n, n) = -b;
  k.bottomRightCorner(n, n) = -a;
  Vector x0(2 * n);
  x0 << q0, qdot0;
  return expm_flow(k, x0, t).head(n);
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing_support
