#pragma once

// Two-level specialization: the explicit circuit for H = sum_k xi_k sigma_k.
//
// Both tanks share one capacitance C. Matching (A, B) against the commuting
// coefficients of the two-level Hamiltonian gives
//
//     (C L1)^-1            = (xi0 + xi3)^2
//     (C L2)^-1            = (xi0 - xi3)^2
//     (C La)^-1 + (C Lb)^-1 = xi1^2 - xi2^2
//     -(C Lc)^-1           = 2 xi0 xi1
//     g / C                = 2 xi2
//
// so the interaction network is a gyrator g in parallel with a Pi network of
// inductors with beta = [[1/La + 1/Lb, -1/Lc], [-1/Lc, 1/La + 1/Lb]].

#include <optional>

#include "qsimnet/quantum.hpp"
#include "qsimnet/synthesis.hpp"

namespace qsimnet {

struct PauliCircuit {
  double capacitance = 1.0;
  double l1 = 0.0;  // +inf for an open tank
  double l2 = 0.0;
  std::optional<double> la;  // absent when xi1^2 == xi2^2
  std::optional<double> lb;
  std::optional<double> lc;  // absent when xi0 xi1 == 0
  double g = 0.0;            // gyrator conductance
  std::optional<double> l1_star;  // L1 || La, filled by merge_parallel
  std::optional<double> l2_star;  // L2 || Lb

  bool non_passive() const;
};

struct PauliOptions {
  /// Share of (C La)^-1 + (C Lb)^-1 given to La; the rest goes to Lb.
  double la_fraction = 0.5;
  /// When xi0 + xi3 or xi0 - xi3 is zero the tank inductance is infinite.
  /// false: Error(infeasible). true: the tank inductor is left open
  /// (inductance +inf, omega0^2 = 0).
  bool allow_open_tanks = false;
};

/// Throws Error(infeasible) when xi0 + xi3 or xi0 - xi3 is zero, unless open
/// tanks are allowed. Negative inductances are returned and flagged through
/// non_passive(), not rejected. Merged inductances are filled in.
PauliCircuit synthesize_pauli(const PauliCoefficients& xi, double capacitance,
                              const PauliOptions& options = {});

/// L1* = L1 || La and L2* = L2 || Lb. An absent partner leaves the tank value
/// unchanged. Throws Error(infeasible) when 1/L1 + 1/La == 0 (or likewise
/// for port 2).
PauliCircuit merge_parallel(PauliCircuit pc);

/// The full Fig.-style network as a generic design: tanks L1, L2 and
/// alpha = [[0, g], [-g, 0]], beta = Pi matrix above.
CircuitDesign pauli_design(const PauliCircuit& pc);

/// The same network with La and Lb absorbed into the tanks (L1*, L2*).
/// reconstruct_ab gives the same (A, B) as pauli_design.
CircuitDesign merged_pauli_design(const PauliCircuit& pc);

}  // namespace qsimnet
