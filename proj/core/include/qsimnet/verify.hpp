#pragma once

// Quantitative check of the circuit/quantum correspondence:
//   Re psi  vs  V,   Im psi  vs  +-H[V],   |psi_k|^2  vs  env[V_k]^2.

#include "qsimnet/quantum.hpp"
#include "qsimnet/signal.hpp"

namespace qsimnet {

struct VerificationTolerances {
  double re = 1e-6;
  double im = 1e-2;
  double born = 1e-2;
  double norm = 2e-2;
};

struct VerificationPass {
  bool re = false;
  bool im = false;
  bool born = false;
  bool norm = false;

  friend bool operator==(const VerificationPass&, const VerificationPass&) = default;
};

struct VerificationReport {
  double max_re_err = 0.0;    // all samples
  double max_im_err = 0.0;    // interior, better of the two conventions
  double max_born_err = 0.0;  // interior
  double norm_err = 0.0;      // interior, |sum_k env[V_k]^2 - 1|
  bool spectrum_one_sided = false;
  HilbertConvention im_convention = HilbertConvention::plus;  // the one that matched
  VerificationTolerances tolerances;
  VerificationPass pass;

  bool all_pass() const { return pass.re && pass.im && pass.born && pass.norm; }
};

/// traces must hold the n port voltages on the same grid as truth.
/// Throws Error(dimension_mismatch) when grids or channel counts differ.
VerificationReport verify_against_quantum(const TraceSet& traces, const QuantumTrajectory& truth,
                                          const Hamiltonian& h,
                                          const VerificationTolerances& tol = {},
                                          const AnalyticOptions& opts = {});

}  // namespace qsimnet
