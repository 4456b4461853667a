#include "qsimnet/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsimnet/error.hpp"

namespace qsimnet {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::singular_matrix: return "singular_matrix";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::integration: return "integration";
  }
  return "unknown";
}

namespace {

void check_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << "Hamiltonian must be a non-empty square matrix, got " << m.rows()
       << "x" << m.cols();
    throw Error(ErrorKind::invalid_input, os.str());
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::invalid_input, "Hamiltonian has non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > kHermitianTolerance * scale) {
    std::ostringstream os;
    os << "Hamiltonian is not Hermitian: max |H - H^dagger| = " << deviation
       << " exceeds " << kHermitianTolerance << " * " << scale;
    throw Error(ErrorKind::invalid_input, os.str());
  }
}

}  // namespace

Spectrum hermitian_spectrum(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::invalid_input, "eigendecomposition failed");
  }
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  for (Index j = 0; j < s.vectors.cols(); ++j) {
    auto col = s.vectors.col(j);
    const double cutoff = 1e-12 * col.cwiseAbs().maxCoeff();
    for (Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > cutoff) {
        col *= std::conj(col(i)) / std::abs(col(i));
        col(i) = Complex(col(i).real(), 0.0);
        break;
      }
    }
  }
  return s;
}

Hamiltonian::Hamiltonian(CMatrix matrix) : matrix_(std::move(matrix)) {
  check_hermitian(matrix_);
  // Store the exact Hermitian part so Re H is symmetric and Im H antisymmetric.
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  spectrum_ = hermitian_spectrum(matrix_);
}

Hamiltonian Hamiltonian::from_parts(const Matrix& real, const Matrix& imag) {
  if (real.rows() != imag.rows() || real.cols() != imag.cols()) {
    throw Error(ErrorKind::dimension_mismatch,
                "real and imaginary parts of H differ in shape");
  }
  CMatrix m(real.rows(), real.cols());
  m.real() = real;
  m.imag() = imag;
  return Hamiltonian(std::move(m));
}

Hamiltonian Hamiltonian::zero(Index n) {
  return Hamiltonian(CMatrix::Zero(n, n));
}

bool Hamiltonian::spectrum_one_sided() const {
  return min_eigenvalue() > 0.0 || max_eigenvalue() < 0.0;
}

Hamiltonian pauli_to_matrix(const PauliCoefficients& xi) {
  for (double v : {xi.xi0, xi.xi1, xi.xi2, xi.xi3}) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::invalid_input, "Pauli coefficients must be finite");
    }
  }
  CMatrix m(2, 2);
  m(0, 0) = Complex(xi.xi0 + xi.xi3, 0.0);
  m(0, 1) = Complex(xi.xi1, -xi.xi2);
  m(1, 0) = Complex(xi.xi1, xi.xi2);
  m(1, 1) = Complex(xi.xi0 - xi.xi3, 0.0);
  return Hamiltonian(std::move(m));
}

StateVector::StateVector(CVector amplitudes, Normalize mode)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw Error(ErrorKind::invalid_input, "state vector is empty");
  }
  if (!amplitudes_.allFinite()) {
    throw Error(ErrorKind::invalid_input, "state vector has non-finite entries");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (mode == Normalize::rescale) {
    if (norm2 == 0.0) {
      throw Error(ErrorKind::invalid_input, "cannot normalize the zero vector");
    }
    amplitudes_ /= std::sqrt(norm2);
  } else if (std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "state vector is not normalized: |psi|^2 = " << norm2;
    throw Error(ErrorKind::invalid_input, os.str());
  }
}

StateVector StateVector::basis(Index n, Index k) {
  CVector v = CVector::Zero(n);
  v(k) = 1.0;
  return StateVector(std::move(v));
}

QuantumTrajectory propagate(const Hamiltonian& h, const StateVector& psi0,
                            std::span<const double> times) {
  if (psi0.dim() != h.dim()) {
    std::ostringstream os;
    os << "state dimension " << psi0.dim() << " does not match Hamiltonian "
       << "dimension " << h.dim();
    throw Error(ErrorKind::dimension_mismatch, os.str());
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) {
      throw Error(ErrorKind::invalid_input, "non-finite propagation time");
    }
    if (i > 0 && times[i] < times[i - 1]) {
      throw Error(ErrorKind::invalid_input, "propagation times must be ascending");
    }
  }
  if (!times.empty() && times.front() != 0.0) {
    throw Error(ErrorKind::invalid_input, "propagation times must start at 0");
  }

  const Spectrum& s = h.spectrum();
  const CVector coeffs = s.vectors.adjoint() * psi0.amplitudes();

  QuantumTrajectory out;
  out.times.assign(times.begin(), times.end());
  out.states.reserve(times.size());
  CVector phased(coeffs.size());
  for (double t : times) {
    for (Index k = 0; k < coeffs.size(); ++k) {
      phased(k) = coeffs(k) * std::polar(1.0, -s.values(k) * t);
    }
    // Unitary up to rounding; rescale keeps the trajectory invariant exact.
    out.states.emplace_back(s.vectors * phased, StateVector::Normalize::rescale);
  }
  return out;
}

Vector born_probabilities(const StateVector& psi) {
  return psi.amplitudes().cwiseAbs2();
}

CMatrix similarity_transform(const Hamiltonian& h, const CMatrix& omega) {
  if (omega.rows() != h.dim() || omega.cols() != h.dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "similarity transform must match the Hamiltonian dimension");
  }
  Eigen::JacobiSVD<CMatrix> svd(omega);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0) || sv(0) / smallest > 1e12) {
    throw Error(ErrorKind::singular_matrix, "similarity transform is singular");
  }
  // X omega = omega H  <=>  omega^T X^T = (omega H)^T
  Eigen::PartialPivLU<CMatrix> lu(omega.transpose());
  const CMatrix oh = omega * h.matrix();
  return lu.solve(oh.transpose()).transpose();
}

ShiftedHamiltonian shift_spectrum(const Hamiltonian& h, double margin) {
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw Error(ErrorKind::invalid_input, "spectrum margin must be positive");
  }
  const double c = std::max(0.0, margin - h.min_eigenvalue());
  CMatrix m = h.matrix();
  m.diagonal().array() += c;
  return {Hamiltonian(std::move(m)), c};
}

}  // namespace qsimnet
