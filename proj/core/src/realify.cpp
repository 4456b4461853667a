#include "qsimnet/realify.hpp"

#include <limits>
#include <sstream>

#include "qsimnet/error.hpp"

namespace qsimnet {

const char* to_string(CoefficientRoute route) noexcept {
  return route == CoefficientRoute::commuting ? "commuting" : "general";
}

const char* to_string(Part part) noexcept {
  return part == Part::imag_part ? "imag_part" : "real_part";
}

RealifiedState decomplexify(const CVector& psi) {
  return {psi.real(), psi.imag()};
}

CVector recomplexify(const RealifiedState& r) {
  if (r.phi1.size() != r.phi2.size()) {
    throw Error(ErrorKind::dimension_mismatch, "realified halves differ in length");
  }
  CVector out(r.phi1.size());
  out.real() = r.phi1;
  out.imag() = r.phi2;
  return out;
}

BlockFirstOrder build_first_order(const Hamiltonian& h) {
  const Index n = h.dim();
  const Matrix h1 = h.real_part();
  const Matrix h2 = h.imag_part();
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = h2;
  m.topRightCorner(n, n) = h1;
  m.bottomLeftCorner(n, n) = -h1;
  m.bottomRightCorner(n, n) = h2;
  return {std::move(m)};
}

double commutator_norm(const Hamiltonian& h) {
  const Matrix h1 = h.real_part();
  const Matrix h2 = h.imag_part();
  return (h1 * h2 - h2 * h1).norm();
}

bool parts_commute(const Hamiltonian& h) {
  const double n1 = h.real_part().norm();
  const double n2 = h.imag_part().norm();
  if (n1 == 0.0 || n2 == 0.0) return true;
  return commutator_norm(h) <= kCommutatorTolerance * n1 * n2;
}

namespace {

SecondOrderSystem commuting_coeffs(const Matrix& h1, const Matrix& h2, double comm) {
  return {-2.0 * h2, h1 * h1 + h2 * h2, CoefficientRoute::commuting, comm};
}

SecondOrderSystem general_coeffs(const Matrix& h1, const Matrix& h2, double comm) {
  Eigen::JacobiSVD<Matrix> svd(h1);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  const double cond = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
  if (!(cond < kRealPartConditionLimit)) {
    std::ostringstream os;
    os << "general coefficient route needs Re(H) invertible; condition number "
       << cond << " exceeds " << kRealPartConditionLimit
       << " (fall back to the first-order block system)";
    throw Error(ErrorKind::singular_matrix, os.str());
  }
  // conj = H1 H2 H1^-1. H1 is symmetric, so X H1 = H1 H2 <=> H1 X^T = (H1 H2)^T.
  Eigen::PartialPivLU<Matrix> lu(h1);
  const Matrix h1h2 = h1 * h2;
  const Matrix conj = lu.solve(h1h2.transpose()).transpose();
  return {-h2 - conj, h1 * h1 + conj * h2, CoefficientRoute::general, comm};
}

}  // namespace

SecondOrderSystem second_order_coeffs(const Hamiltonian& h, CoefficientMode mode) {
  const Matrix h1 = h.real_part();
  const Matrix h2 = h.imag_part();
  const double comm = commutator_norm(h);
  switch (mode) {
    case CoefficientMode::commuting:
      if (!parts_commute(h)) {
        std::ostringstream os;
        os << "commuting route requested but ||[Re H, Im H]|| = " << comm;
        throw Error(ErrorKind::precondition, os.str());
      }
      return commuting_coeffs(h1, h2, comm);
    case CoefficientMode::commuting_formula:
      return commuting_coeffs(h1, h2, comm);
    case CoefficientMode::general:
      return general_coeffs(h1, h2, comm);
    case CoefficientMode::automatic:
      break;
  }
  if (parts_commute(h)) return commuting_coeffs(h1, h2, comm);
  return general_coeffs(h1, h2, comm);
}

InitialData initial_conditions(const Hamiltonian& h, const StateVector& psi0, Part part) {
  if (psi0.dim() != h.dim()) {
    throw Error(ErrorKind::dimension_mismatch,
                "initial state dimension does not match the Hamiltonian");
  }
  const CVector derivative = Complex(0.0, -1.0) * (h.matrix() * psi0.amplitudes());
  if (part == Part::real_part) {
    return {psi0.amplitudes().real(), derivative.real(), part};
  }
  return {psi0.amplitudes().imag(), derivative.imag(), part};
}

}  // namespace qsimnet
