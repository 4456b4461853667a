#pragma once

// Finite-dimensional quantum systems in natural units (hbar = 1).
//
// These types are the ground truth that every circuit-side result is
// compared against: exact Schroedinger evolution through the spectral
// decomposition of a time-independent Hermitian matrix.

#include <span>
#include <vector>

#include "qsimnet/types.hpp"

namespace qsimnet {

/// Relative tolerance (w.r.t. the largest entry magnitude) for Hermiticity.
inline constexpr double kHermitianTolerance = 1e-12;
/// Absolute tolerance on |psi|^2 - 1 for a StateVector built in reject mode.
inline constexpr double kNormTolerance = 1e-10;

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascending; each eigenvector
/// is phase-fixed so its first non-negligible component is positive real.
struct Spectrum {
  Vector values;
  CMatrix vectors;  // columns
};

class Hamiltonian {
 public:
  /// Throws Error(invalid_input) if the matrix is not square or not Hermitian.
  explicit Hamiltonian(CMatrix matrix);

  static Hamiltonian from_parts(const Matrix& real, const Matrix& imag);
  static Hamiltonian zero(Index n);

  Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  const Spectrum& spectrum() const { return spectrum_; }

  Matrix real_part() const { return matrix_.real(); }
  Matrix imag_part() const { return matrix_.imag(); }

  double min_eigenvalue() const { return spectrum_.values(0); }
  double max_eigenvalue() const { return spectrum_.values(dim() - 1); }

  /// All eigenvalues strictly positive, or all strictly negative.
  bool spectrum_one_sided() const;

 private:
  CMatrix matrix_;
  Spectrum spectrum_;
};

/// H = xi0*I + xi1*sigma1 + xi2*sigma2 + xi3*sigma3.
struct PauliCoefficients {
  double xi0 = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi3 = 0.0;
};

Hamiltonian pauli_to_matrix(const PauliCoefficients& xi);

class StateVector {
 public:
  enum class Normalize { reject, rescale };

  /// In reject mode (default) a vector whose squared norm is off by more than
  /// kNormTolerance is an error; rescale mode divides by the norm instead.
  explicit StateVector(CVector amplitudes, Normalize mode = Normalize::reject);

  Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Index k) const { return amplitudes_(k); }

  static StateVector basis(Index n, Index k);

 private:
  CVector amplitudes_;
};

struct QuantumTrajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
};

/// psi(t) = exp(-iHt) psi0 for each requested time. Times must start at 0,
/// be finite and non-decreasing.
QuantumTrajectory propagate(const Hamiltonian& h, const StateVector& psi0,
                            std::span<const double> times);

/// p_k = |psi_k|^2.
Vector born_probabilities(const StateVector& psi);

/// omega * H * omega^-1 for a constant invertible omega. The result is only
/// Hermitian when omega is unitary, so a plain matrix is returned.
CMatrix similarity_transform(const Hamiltonian& h, const CMatrix& omega);

struct ShiftedHamiltonian {
  Hamiltonian hamiltonian;
  double shift = 0.0;
};

/// H + cI with c = max(0, margin - lambda_min). Adds a global phase only.
ShiftedHamiltonian shift_spectrum(const Hamiltonian& h, double margin);

/// Spectral decomposition with the ordering/phase convention of Spectrum.
Spectrum hermitian_spectrum(const CMatrix& hermitian);

}  // namespace qsimnet
