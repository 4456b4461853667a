#include <gtest/gtest.h>

#include <vector>

#include "support.hpp"

using namespace qsimnet;
using namespace testing_support;

namespace {

const Complex I(0.0, 1.0);

CMatrix pauli(int k) {
  CMatrix m(2, 2);
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m = CMatrix::Identity(2, 2);
  }
  return m;
}

std::vector<double> grid(double t_end, std::size_t steps) {
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) t[k] = t_end * static_cast<double>(k) / steps;
  return t;
}

}  // namespace

TEST(Hamiltonian, RejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 1, 2, 3, 4;
  try {
    Hamiltonian h(m);
    FAIL() << "accepted a non-Hermitian matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
    EXPECT_NE(std::string(e.what()).find("Hermitian"), std::string::npos);
  }
}

TEST(Hamiltonian, RejectsNonSquareAndEmpty) {
  EXPECT_THROW(Hamiltonian(CMatrix::Zero(2, 3)), Error);
  EXPECT_THROW(Hamiltonian(CMatrix(0, 0)), Error);
}

TEST(Hamiltonian, ToleranceIsRelativeToLargestEntry) {
  CMatrix m(2, 2);
  m << 1e6, 1, 1, 1e6;
  m(0, 1) += 1e-7;  // 1e-13 relative
  EXPECT_NO_THROW(Hamiltonian{m});
  m(0, 1) += 1e-4;  // 1e-10 relative
  EXPECT_THROW(Hamiltonian{m}, Error);
}

TEST(Hamiltonian, StoredPartsAreExactlySymmetricAndAntisymmetric) {
  std::mt19937_64 rng(7);
  CMatrix m = random_hermitian_matrix(5, rng);
  m(1, 3) += Complex(1e-14, -1e-14);
  Hamiltonian h(m);
  const Matrix re = h.real_part();
  const Matrix im = h.imag_part();
  EXPECT_TRUE((re - re.transpose()).isZero(0.0));
  EXPECT_TRUE((im + im.transpose()).isZero(0.0));
}

TEST(Hamiltonian, SpectrumAscendingAndPhaseFixed) {
  std::mt19937_64 rng(11);
  Hamiltonian h = random_hamiltonian(6, rng);
  const Spectrum& s = h.spectrum();
  for (Index k = 1; k < s.values.size(); ++k) EXPECT_LE(s.values(k - 1), s.values(k));
  for (Index j = 0; j < s.vectors.cols(); ++j) {
    const auto col = s.vectors.col(j);
    Index first = 0;
    while (std::abs(col(first)) < 1e-12) ++first;
    EXPECT_GT(col(first).real(), 0.0);
    EXPECT_EQ(col(first).imag(), 0.0);
    EXPECT_LT((h.matrix() * col - s.values(j) * col).norm(), 1e-12);
  }
  EXPECT_DOUBLE_EQ(h.min_eigenvalue(), s.values(0));
  EXPECT_DOUBLE_EQ(h.max_eigenvalue(), s.values(5));
}

TEST(Hamiltonian, OneSidedSpectrum) {
  EXPECT_FALSE(Hamiltonian(pauli(1)).spectrum_one_sided());
  EXPECT_TRUE(Hamiltonian(pauli(1) + 2.0 * pauli(0)).spectrum_one_sided());
  EXPECT_TRUE(Hamiltonian(pauli(1) - 2.0 * pauli(0)).spectrum_one_sided());
  EXPECT_FALSE(Hamiltonian::zero(2).spectrum_one_sided());
}

TEST(PauliToMatrix, Examples) {
  EXPECT_TRUE(pauli_to_matrix({0, 0, 0, 1}).matrix().isApprox(pauli(3)));
  EXPECT_TRUE(pauli_to_matrix({1, 0, 0, 0}).matrix().isApprox(pauli(0)));
  EXPECT_TRUE(pauli_to_matrix({0, 0, 1, 0}).matrix().isApprox(pauli(2)));
}

TEST(PauliToMatrix, IsLinearCombinationOfPaulis) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const double x[4] = {uniform(rng), uniform(rng), uniform(rng), uniform(rng)};
    CMatrix expect = CMatrix::Zero(2, 2);
    for (int k = 0; k < 4; ++k) expect += x[k] * pauli(k);
    const CMatrix got = pauli_to_matrix({x[0], x[1], x[2], x[3]}).matrix();
    EXPECT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(PauliToMatrix, RejectsNonFinite) {
  EXPECT_THROW(pauli_to_matrix({std::nan(""), 0, 0, 0}), Error);
}

TEST(StateVector, RejectsUnnormalizedByDefault) {
  CVector v(2);
  v << 1, 1;
  EXPECT_THROW(StateVector{v}, Error);
  StateVector s(v, StateVector::Normalize::rescale);
  EXPECT_NEAR(s.amplitudes().squaredNorm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector(CVector::Zero(2), StateVector::Normalize::rescale), Error);
  EXPECT_THROW(StateVector(CVector(0)), Error);
}

TEST(Propagate, ZeroHamiltonianIsIdentity) {
  std::mt19937_64 rng(5);
  const StateVector psi = random_state(3, rng);
  const auto traj = propagate(Hamiltonian::zero(3), psi, grid(10.0, 20));
  for (const auto& s : traj.states) EXPECT_LT((s.amplitudes() - psi.amplitudes()).norm(), 1e-15);
}

TEST(Propagate, Sigma1AtQuarterPeriod) {
  const std::vector<double> t = {0.0, kPi / 2};
  const auto traj = propagate(Hamiltonian(pauli(1)), StateVector::basis(2, 0), t);
  EXPECT_LT(std::abs(traj.states[1][0]), 1e-15);
  EXPECT_LT(std::abs(traj.states[1][1] - Complex(0, -1)), 1e-15);
}

TEST(Propagate, DiagonalGivesPurePhases) {
  Vector lambda(3);
  lambda << -1.5, 0.25, 2.0;
  CMatrix h = lambda.cast<Complex>().asDiagonal();
  CVector a(3);
  a << Complex(0.6, 0), Complex(0, 0.48), Complex(0.64, 0);
  const StateVector psi(a);
  const auto t = grid(7.0, 35);
  const auto traj = propagate(Hamiltonian(h), psi, t);
  for (std::size_t j = 0; j < t.size(); ++j)
    for (Index k = 0; k < 3; ++k)
      EXPECT_LT(std::abs(traj.states[j][k] - a(k) * std::polar(1.0, -lambda(k) * t[j])), 1e-14);
}

TEST(Propagate, AgreesWithMatrixExponentialOracle) {
  std::mt19937_64 rng(17);
  for (Index n = 1; n <= 8; ++n) {
    const Hamiltonian h = random_hamiltonian(n, rng);
    const StateVector psi = random_state(n, rng);
    const auto t = grid(10.0, 40);
    const auto traj = propagate(h, psi, t);
    for (std::size_t j = 0; j < t.size(); ++j) {
      const CVector ref = expm_evolve(h.matrix(), psi.amplitudes(), t[j]);
      EXPECT_LT((traj.states[j].amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-9) << "n=" << n;
    }
  }
}

TEST(Propagate, NormConserved) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 7;
    const auto traj = propagate(random_hamiltonian(n, rng), random_state(n, rng), grid(50.0, 500));
    for (const auto& s : traj.states) EXPECT_LE(std::abs(s.amplitudes().squaredNorm() - 1.0), 1e-8);
  }
}

TEST(Propagate, Preconditions) {
  const Hamiltonian h(pauli(1));
  const StateVector psi = StateVector::basis(2, 0);
  EXPECT_THROW(propagate(h, StateVector::basis(3, 0), std::vector<double>{0.0}), Error);
  EXPECT_THROW(propagate(h, psi, std::vector<double>{0.0, std::nan("")}), Error);
  EXPECT_THROW(propagate(h, psi, std::vector<double>{0.0, 2.0, 1.0}), Error);
  EXPECT_THROW(propagate(h, psi, std::vector<double>{1.0, 2.0}), Error);
  try {
    propagate(h, StateVector::basis(3, 0), std::vector<double>{0.0});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension_mismatch);
  }
}

TEST(Born, Examples) {
  EXPECT_TRUE(born_probabilities(StateVector::basis(2, 0)).isApprox(Vector::Unit(2, 0)));
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), I / std::sqrt(2.0);
  const Vector p = born_probabilities(StateVector(v));
  EXPECT_NEAR(p(0), 0.5, 1e-15);
  EXPECT_NEAR(p(1), 0.5, 1e-15);

  const auto traj = propagate(Hamiltonian(pauli(1)), StateVector::basis(2, 0),
                              std::vector<double>{0.0, kPi / 4});
  const Vector q = born_probabilities(traj.states[1]);
  EXPECT_NEAR(q(0), 0.5, 1e-15);
  EXPECT_NEAR(q(1), 0.5, 1e-15);
}

TEST(Born, SumsToOneAndInUnitInterval) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector p = born_probabilities(random_state(1 + trial % 8, rng));
    EXPECT_NEAR(p.sum(), 1.0, 1e-10);
    EXPECT_GE(p.minCoeff(), 0.0);
    EXPECT_LE(p.maxCoeff(), 1.0 + 1e-12);
  }
}

TEST(SimilarityTransform, Examples) {
  std::mt19937_64 rng(29);
  const Hamiltonian h = random_hamiltonian(4, rng);
  EXPECT_LT((similarity_transform(h, CMatrix::Identity(4, 4)) - h.matrix()).norm(), 1e-14);

  const CMatrix flipped = similarity_transform(Hamiltonian(pauli(3)), pauli(1));
  EXPECT_LT((flipped + pauli(3)).norm(), 1e-15);

  CMatrix phases = CMatrix::Zero(2, 2);
  phases(0, 0) = std::polar(1.0, 0.3);
  phases(1, 1) = std::polar(1.0, -1.1);
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = -0.5;
  EXPECT_LT((similarity_transform(Hamiltonian(diag), phases) - diag).norm(), 1e-15);
}

TEST(SimilarityTransform, UnitaryPreservesSpectrum) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 6;
    const Hamiltonian h = random_hamiltonian(n, rng);
    // Unitary from the QR factor of a random complex matrix.
    const CMatrix z = random_hermitian_matrix(n, rng) + I * random_hermitian_matrix(n, rng);
    const CMatrix u = Eigen::HouseholderQR<CMatrix>(z).householderQ();
    const CMatrix out = similarity_transform(h, u);
    EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    const Spectrum s = hermitian_spectrum(0.5 * (out + out.adjoint()));
    EXPECT_LT((s.values - h.spectrum().values).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SimilarityTransform, SingularOmegaRejected) {
  CMatrix omega(2, 2);
  omega << 1, 2, 2, 4;
  try {
    similarity_transform(Hamiltonian(pauli(1)), omega);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular_matrix);
  }
  EXPECT_THROW(similarity_transform(Hamiltonian(pauli(1)), CMatrix::Identity(3, 3)), Error);
}

TEST(ShiftSpectrum, Examples) {
  const auto s1 = shift_spectrum(Hamiltonian(pauli(1)), 1.0);
  EXPECT_NEAR(s1.shift, 2.0, 1e-14);
  EXPECT_NEAR(s1.hamiltonian.min_eigenvalue(), 1.0, 1e-14);
  EXPECT_NEAR(s1.hamiltonian.max_eigenvalue(), 3.0, 1e-14);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 5.0;
  d(1, 1) = 7.0;
  EXPECT_EQ(shift_spectrum(Hamiltonian(d), 1.0).shift, 0.0);
  EXPECT_EQ(shift_spectrum(Hamiltonian::zero(3), 1.0).shift, 1.0);
  EXPECT_THROW(shift_spectrum(Hamiltonian::zero(3), 0.0), Error);
}

TEST(ShiftSpectrum, OnlyAddsGlobalPhase) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 5;
    const Hamiltonian h = random_hamiltonian(n, rng);
    const StateVector psi = random_state(n, rng);
    const auto shifted = shift_spectrum(h, 0.5);
    EXPECT_GE(shifted.hamiltonian.min_eigenvalue(), 0.5 - 1e-12);
    const auto t = grid(10.0, 50);
    const auto a = propagate(h, psi, t);
    const auto b = propagate(shifted.hamiltonian, psi, t);
    for (std::size_t j = 0; j < t.size(); ++j) {
      const CVector phased = std::polar(1.0, -shifted.shift * t[j]) * a.states[j].amplitudes();
      EXPECT_LT((b.states[j].amplitudes() - phased).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((born_probabilities(a.states[j]) - born_probabilities(b.states[j]))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10);
    }
  }
}
