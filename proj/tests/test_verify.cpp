#include <gtest/gtest.h>

#include "support.hpp"

using namespace qsimnet;
using namespace testing_support;

namespace {

struct Recording {
  TraceSet traces;
  QuantumTrajectory truth;
};

// Circuit traces from the synthesized design, and the quantum truth on the
// same grid.
Recording run(const Hamiltonian& h, const StateVector& psi0, double t_end) {
  SimulationConfig cfg;
  cfg.t_end = t_end;
  const auto sys = second_order_coeffs(h);
  CircuitDesign d = synthesize_network(sys, Vector::Ones(h.dim()));
  set_initial_state(d, initial_conditions(h, psi0, Part::real_part));
  const DampingStiffness ab = reconstruct_ab(d);
  const InitialData init{d.initial_voltages(), d.initial_slopes(), Part::real_part};
  Recording r{simulate_second_order(ab.a, ab.b, init, cfg), {}};
  r.truth = propagate(h, psi0, r.traces.times);
  return r;
}

}  // namespace

TEST(Verify, ShiftedTwoLevelPasses) {
  const Hamiltonian h = pauli_to_matrix({2, 1, 0, 0});
  const Recording r = run(h, StateVector::basis(2, 0), 20.0);
  const VerificationReport rep = verify_against_quantum(r.traces, r.truth, h);
  EXPECT_TRUE(rep.spectrum_one_sided);
  EXPECT_LE(rep.max_re_err, 1e-8);
  EXPECT_LE(rep.max_born_err, 1e-2);
  EXPECT_LE(rep.norm_err, 2e-2);
  EXPECT_TRUE(rep.all_pass());
  // Positive spectrum: e^{-i lambda t} puts Im psi at -H[Re psi].
  EXPECT_EQ(rep.im_convention, HilbertConvention::minus);
}

TEST(Verify, TwoSidedSpectrumFailsTheBornCheck) {
  const Hamiltonian h = pauli_to_matrix({0, 1, 0, 0});
  const Recording r = run(h, StateVector::basis(2, 0), 20.0);
  const VerificationReport rep = verify_against_quantum(r.traces, r.truth, h);
  EXPECT_FALSE(rep.spectrum_one_sided);
  EXPECT_GT(rep.max_born_err, 0.5);
  EXPECT_LE(rep.max_re_err, 1e-8);
  EXPECT_FALSE(rep.pass.born);
  EXPECT_FALSE(rep.all_pass());
}

TEST(Verify, PassFlagsFollowStoredThresholds) {
  const Hamiltonian h = pauli_to_matrix({2, 1, 0, 0});
  const Recording r = run(h, StateVector::basis(2, 0), 10.0);
  VerificationTolerances tight;
  tight.born = 1e-12;
  const VerificationReport rep = verify_against_quantum(r.traces, r.truth, h, tight);
  EXPECT_EQ(rep.tolerances.born, 1e-12);
  EXPECT_EQ(rep.pass.born, rep.max_born_err <= 1e-12);
  EXPECT_EQ(rep.pass.re, rep.max_re_err <= tight.re);
  EXPECT_EQ(rep.pass.im, rep.max_im_err <= tight.im);
  EXPECT_EQ(rep.pass.norm, rep.norm_err <= tight.norm);
}

TEST(Verify, Idempotent) {
  std::mt19937_64 rng(151);
  const Hamiltonian h = shift_spectrum(random_hamiltonian_invertible_real(3, rng), 0.5).hamiltonian;
  const Recording r = run(h, random_state(3, rng), 10.0);
  const VerificationReport a = verify_against_quantum(r.traces, r.truth, h);
  const VerificationReport b = verify_against_quantum(r.traces, r.truth, h);
  EXPECT_EQ(a.max_re_err, b.max_re_err);
  EXPECT_EQ(a.max_im_err, b.max_im_err);
  EXPECT_EQ(a.max_born_err, b.max_born_err);
  EXPECT_EQ(a.norm_err, b.norm_err);
  EXPECT_EQ(a.pass, b.pass);
}

TEST(Verify, GridMismatch) {
  const Hamiltonian h = pauli_to_matrix({2, 1, 0, 0});
  Recording r = run(h, StateVector::basis(2, 0), 1.0);
  QuantumTrajectory shorter = r.truth;
  shorter.times.pop_back();
  shorter.states.pop_back();
  EXPECT_THROW(verify_against_quantum(r.traces, shorter, h), Error);

  TraceSet shifted = r.traces;
  shifted.times[5] += 1e-3;
  try {
    verify_against_quantum(shifted, r.truth, h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::dimension_mismatch);
  }

  TraceSet one = r.traces;
  one.channels.pop_back();
  one.labels.pop_back();
  EXPECT_THROW(verify_against_quantum(one, r.truth, h), Error);
}
