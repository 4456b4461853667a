#pragma once

// Decomplexification of i psi' = H psi.
//
// With H = H1 + i H2 and psi = phi1 + i phi2 the Schroedinger equation splits
// into the real block system
//
//     d/dt [phi1; phi2] = [[H2, H1], [-H1, H2]] [phi1; phi2]
//
// and, eliminating one half, into a second-order system for either half:
//
//     phi'' + A phi' + B phi = 0
//
// General route (needs H1 invertible):
//     A = -H2 - H1 H2 H1^-1,   B = H1^2 + H1 H2 H1^-1 H2
// Commuting route (valid when [H1, H2] = 0):
//     A = -2 H2,               B = H1^2 + H2^2
//
// Both halves (real and imaginary) obey the same equation, each with its own
// initial data derived from psi(0) and psi'(0) = -i H psi(0).

#include "qsimnet/quantum.hpp"
#include "qsimnet/types.hpp"

namespace qsimnet {

/// Relative commutator threshold that enables the commuting route.
inline constexpr double kCommutatorTolerance = 1e-10;
/// Condition-number ceiling for inverting H1 in the general route.
inline constexpr double kRealPartConditionLimit = 1e12;

struct RealifiedState {
  Vector phi1;  // Re psi
  Vector phi2;  // Im psi
};

RealifiedState decomplexify(const CVector& psi);
inline RealifiedState decomplexify(const StateVector& psi) {
  return decomplexify(psi.amplitudes());
}
CVector recomplexify(const RealifiedState& r);

/// Block generator M = [[H2, H1], [-H1, H2]] of the real first-order flow.
struct BlockFirstOrder {
  Matrix m;
  Index half_dim() const { return m.rows() / 2; }
};

BlockFirstOrder build_first_order(const Hamiltonian& h);

enum class CoefficientRoute { general, commuting };
enum class CoefficientMode {
  automatic,          // commuting when parts_commute(), otherwise general
  general,
  commuting,          // checked: requires parts_commute()
  commuting_formula,  // evaluate -2 H2, H1^2 + H2^2 as printed, no check
};

const char* to_string(CoefficientRoute route) noexcept;

struct SecondOrderSystem {
  Matrix a;
  Matrix b;
  CoefficientRoute route = CoefficientRoute::general;
  double commutator_norm = 0.0;  // Frobenius norm of [H1, H2]

  Index dim() const { return a.rows(); }
};

/// Frobenius norm of H1 H2 - H2 H1.
double commutator_norm(const Hamiltonian& h);

/// True when [H1, H2] vanishes relative to |H1| |H2| (or either part is 0).
bool parts_commute(const Hamiltonian& h);

/// Throws Error(singular_matrix) when the general route needs an H1 inverse
/// that does not exist, and Error(precondition) when the commuting route is
/// forced on a Hamiltonian whose parts do not commute. In that last case the
/// first-order system from build_first_order is still valid.
///
/// commuting_formula exists for the two-level closed form, which is the
/// commuting expression evaluated for every xi. When [H1, H2] != 0 its
/// result does not describe the Schroedinger dynamics; commutator_norm in the
/// result says so.
SecondOrderSystem second_order_coeffs(const Hamiltonian& h,
                                      CoefficientMode mode = CoefficientMode::automatic);

enum class Part { real_part, imag_part };

const char* to_string(Part part) noexcept;

struct InitialData {
  Vector q0;
  Vector qdot0;
  Part part = Part::real_part;
};

/// q0 = part(psi0), qdot0 = part(-i H psi0).
InitialData initial_conditions(const Hamiltonian& h, const StateVector& psi0, Part part);

}  // namespace qsimnet
