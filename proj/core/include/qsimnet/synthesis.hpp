#pragma once

// Admittance-representation network synthesis.
//
// Every port k carries a parallel L_k || C_k tank. The tanks are coupled
// through an n-port interaction network with admittance Y(s) = alpha + beta/s.
// Kirchhoff's current law at the ports then gives
//
//     V'' + A V' + B V = 0,   A = C^-1 alpha,   B = C^-1 beta + omega0^2,
//
// with C = diag(C_k) and omega0^2 = diag(1 / (L_k C_k)). Synthesis inverts
// this map for a target (A, B).

#include <string>
#include <utility>
#include <vector>

#include "qsimnet/realify.hpp"
#include "qsimnet/types.hpp"

namespace qsimnet {

struct PortTank {
  Index index = 0;           // 0-based port number
  double inductance = 1.0;   // L_k
  double capacitance = 1.0;  // C_k
  double v0 = 0.0;           // initial port voltage
  double dv0 = 0.0;          // initial port voltage slope
};

struct InteractionNetwork {
  Matrix alpha;  // constant admittance (conductances)
  Matrix beta;   // coefficient of 1/s (inverse inductances)

  Index dim() const { return alpha.rows(); }

  /// Y(s) = alpha + beta / s.
  CMatrix admittance(Complex s) const;

  /// alpha antisymmetric and beta symmetric PSD: a lossless network built
  /// from inductors and gyrators.
  bool passive_reciprocal() const;
};

enum class Omega0Strategy {
  automatic,        // diag_b_positive when it applies, otherwise unit
  diag_b_positive,  // omega0^2 = diag(B); fails unless every entry is > 0
  unit,             // omega0^2 = I
  explicit_values,  // caller-provided omega0^2
};

const char* to_string(Omega0Strategy s) noexcept;
Omega0Strategy omega0_strategy_from_string(const std::string& name);

struct Omega0Choice {
  Omega0Strategy strategy = Omega0Strategy::automatic;
  Vector values;  // used by explicit_values only

  static Omega0Choice explicit_squares(Vector omega0_sq) {
    return {Omega0Strategy::explicit_values, std::move(omega0_sq)};
  }
};

struct DesignFlags {
  bool non_passive = false;
  bool gyrator_required = false;
  bool disconnected = false;

  friend bool operator==(const DesignFlags&, const DesignFlags&) = default;
};

struct CircuitDesign {
  std::vector<PortTank> tanks;
  InteractionNetwork interaction;
  Vector omega0_sq;  // 1 / (L_k C_k)
  DesignFlags flags;
  Omega0Strategy strategy = Omega0Strategy::unit;  // the strategy actually applied

  Index dim() const { return static_cast<Index>(tanks.size()); }
  Vector capacitances() const;
  Vector inductances() const;
  Vector initial_voltages() const;
  Vector initial_slopes() const;
};

/// Flags implied by the element values: disconnected iff alpha = beta = 0,
/// gyrator_required iff alpha != 0, non_passive iff beta is not symmetric PSD
/// or some L_k, C_k is not positive.
DesignFlags derive_flags(const CircuitDesign& design);

/// Synthesize tanks and interaction network for q'' + A q' + B q = 0.
/// Throws Error(infeasible) if the omega0 strategy yields a nonpositive
/// omega0^2 entry, Error(invalid_input) for bad capacitances.
CircuitDesign synthesize_network(const Matrix& a, const Matrix& b,
                                 const Vector& capacitances,
                                 const Omega0Choice& omega0 = {});

inline CircuitDesign synthesize_network(const SecondOrderSystem& sys,
                                        const Vector& capacitances,
                                        const Omega0Choice& omega0 = {}) {
  return synthesize_network(sys.a, sys.b, capacitances, omega0);
}

/// Stores q0 / qdot0 as the tank initial voltages and slopes.
void set_initial_state(CircuitDesign& design, const InitialData& init);

struct DampingStiffness {
  Matrix a;
  Matrix b;
};

/// A = C^-1 alpha, B = C^-1 beta + omega0^2.
DampingStiffness reconstruct_ab(const CircuitDesign& design);

struct RealizabilityReport {
  bool alpha_antisymmetric = false;  // gyrators only: lossless non-reciprocal
  bool alpha_resistive = false;      // nonzero symmetric part of alpha
  bool alpha_passive = false;        // symmetric part of alpha is PSD
  bool beta_symmetric_psd = false;   // passive inductor network
  bool elements_positive = false;    // every L_k, C_k > 0
  bool reciprocal = false;           // Y(s) symmetric
  bool passive = false;
  double beta_min_eigenvalue = 0.0;  // of the symmetric part of beta
};

RealizabilityReport check_realizability(const CircuitDesign& design);

/// Symmetric within a relative tolerance and smallest eigenvalue >= -tol.
bool is_symmetric_psd(const Matrix& m, double tol = 1e-12);

}  // namespace qsimnet
