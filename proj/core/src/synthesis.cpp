#include "qsimnet/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsimnet/error.hpp"

namespace qsimnet {

namespace {

double scale_of(const Matrix& m) {
  return m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool is_zero(const Matrix& m) { return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0; }

void require_square(const Matrix& m, Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << what << " must be " << n << "x" << n << ", got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::dimension_mismatch, os.str());
  }
}

}  // namespace

CMatrix InteractionNetwork::admittance(Complex s) const {
  return alpha.cast<Complex>() + beta.cast<Complex>() / s;
}

bool InteractionNetwork::passive_reciprocal() const {
  const double tol = 1e-12 * scale_of(alpha);
  const bool alpha_antisym = (alpha + alpha.transpose()).cwiseAbs().maxCoeff() <= tol;
  return alpha_antisym && is_symmetric_psd(beta);
}

const char* to_string(Omega0Strategy s) noexcept {
  switch (s) {
    case Omega0Strategy::automatic: return "auto";
    case Omega0Strategy::diag_b_positive: return "diag_B_positive";
    case Omega0Strategy::unit: return "unit";
    case Omega0Strategy::explicit_values: return "explicit";
  }
  return "unknown";
}

Omega0Strategy omega0_strategy_from_string(const std::string& name) {
  if (name == "auto") return Omega0Strategy::automatic;
  if (name == "diag_B_positive") return Omega0Strategy::diag_b_positive;
  if (name == "unit") return Omega0Strategy::unit;
  if (name == "explicit") return Omega0Strategy::explicit_values;
  throw Error(ErrorKind::invalid_input, "unknown omega0 strategy '" + name + "'");
}

Vector CircuitDesign::capacitances() const {
  Vector v(dim());
  for (Index k = 0; k < dim(); ++k) v(k) = tanks[k].capacitance;
  return v;
}

Vector CircuitDesign::inductances() const {
  Vector v(dim());
  for (Index k = 0; k < dim(); ++k) v(k) = tanks[k].inductance;
  return v;
}

Vector CircuitDesign::initial_voltages() const {
  Vector v(dim());
  for (Index k = 0; k < dim(); ++k) v(k) = tanks[k].v0;
  return v;
}

Vector CircuitDesign::initial_slopes() const {
  Vector v(dim());
  for (Index k = 0; k < dim(); ++k) v(k) = tanks[k].dv0;
  return v;
}

bool is_symmetric_psd(const Matrix& m, double tol) {
  if (m.size() == 0) return true;
  const double scale = scale_of(m);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) return false;
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol * scale;
}

DesignFlags derive_flags(const CircuitDesign& design) {
  const auto& net = design.interaction;
  DesignFlags f;
  f.gyrator_required = !is_zero(net.alpha);
  f.disconnected = is_zero(net.alpha) && is_zero(net.beta);
  bool elements_ok = true;
  for (const auto& t : design.tanks) {
    elements_ok = elements_ok && t.inductance > 0.0 && t.capacitance > 0.0;
  }
  f.non_passive = !is_symmetric_psd(net.beta) || !elements_ok;
  return f;
}

CircuitDesign synthesize_network(const Matrix& a, const Matrix& b,
                                 const Vector& capacitances,
                                 const Omega0Choice& omega0) {
  const Index n = a.rows();
  if (n < 1) throw Error(ErrorKind::invalid_input, "empty second-order system");
  require_square(a, n, "A");
  require_square(b, n, "B");
  if (!a.allFinite() || !b.allFinite()) {
    throw Error(ErrorKind::invalid_input, "A and B must be finite");
  }
  if (capacitances.size() != n) {
    throw Error(ErrorKind::dimension_mismatch, "one capacitance per port is required");
  }
  for (Index k = 0; k < n; ++k) {
    if (!(capacitances(k) > 0.0) || !std::isfinite(capacitances(k))) {
      throw Error(ErrorKind::invalid_input, "port capacitances must be positive");
    }
  }

  Vector w2;
  Omega0Strategy applied = omega0.strategy;
  const Vector diag = b.diagonal();
  switch (omega0.strategy) {
    case Omega0Strategy::automatic:
      if ((diag.array() > 0.0).all()) {
        w2 = diag;
        applied = Omega0Strategy::diag_b_positive;
      } else {
        w2 = Vector::Ones(n);
        applied = Omega0Strategy::unit;
      }
      break;
    case Omega0Strategy::diag_b_positive:
      w2 = diag;
      break;
    case Omega0Strategy::unit:
      w2 = Vector::Ones(n);
      break;
    case Omega0Strategy::explicit_values:
      if (omega0.values.size() != n) {
        throw Error(ErrorKind::dimension_mismatch, "one omega0^2 value per port is required");
      }
      w2 = omega0.values;
      break;
  }
  for (Index k = 0; k < n; ++k) {
    if (!(w2(k) > 0.0) || !std::isfinite(w2(k))) {
      std::ostringstream os;
      os << "omega0 strategy '" << to_string(omega0.strategy)
         << "' gives omega0^2[" << k << "] = " << w2(k)
         << "; pick a strategy with positive tank frequencies";
      throw Error(ErrorKind::infeasible, os.str());
    }
  }

  CircuitDesign d;
  d.strategy = applied;
  d.omega0_sq = w2;
  d.tanks.resize(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    auto& t = d.tanks[static_cast<std::size_t>(k)];
    t.index = k;
    t.capacitance = capacitances(k);
    t.inductance = 1.0 / (capacitances(k) * w2(k));
  }
  Matrix shifted = b;
  shifted.diagonal() -= w2;
  d.interaction.alpha = capacitances.asDiagonal() * a;
  d.interaction.beta = capacitances.asDiagonal() * shifted;
  d.flags = derive_flags(d);
  return d;
}

void set_initial_state(CircuitDesign& design, const InitialData& init) {
  if (init.q0.size() != design.dim() || init.qdot0.size() != design.dim()) {
    throw Error(ErrorKind::dimension_mismatch, "initial data does not match the design");
  }
  for (Index k = 0; k < design.dim(); ++k) {
    design.tanks[static_cast<std::size_t>(k)].v0 = init.q0(k);
    design.tanks[static_cast<std::size_t>(k)].dv0 = init.qdot0(k);
  }
}

DampingStiffness reconstruct_ab(const CircuitDesign& design) {
  const Vector c_inv = design.capacitances().cwiseInverse();
  DampingStiffness out{c_inv.asDiagonal() * design.interaction.alpha,
                       c_inv.asDiagonal() * design.interaction.beta};
  out.b.diagonal() += design.omega0_sq;
  return out;
}

RealizabilityReport check_realizability(const CircuitDesign& design) {
  const Matrix& alpha = design.interaction.alpha;
  const Matrix& beta = design.interaction.beta;
  const double tol_a = 1e-12 * scale_of(alpha);
  const double tol_b = 1e-12 * scale_of(beta);

  RealizabilityReport r;
  const Matrix alpha_sym = 0.5 * (alpha + alpha.transpose());
  r.alpha_antisymmetric = alpha_sym.cwiseAbs().maxCoeff() <= tol_a;
  r.alpha_resistive = !r.alpha_antisymmetric;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(alpha_sym, Eigen::EigenvaluesOnly);
    r.alpha_passive = es.eigenvalues().minCoeff() >= -tol_a;
  }
  {
    const Matrix beta_sym = 0.5 * (beta + beta.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(beta_sym, Eigen::EigenvaluesOnly);
    r.beta_min_eigenvalue = es.eigenvalues().minCoeff();
  }
  r.beta_symmetric_psd = is_symmetric_psd(beta);
  r.elements_positive = true;
  for (const auto& t : design.tanks) {
    r.elements_positive = r.elements_positive && t.inductance > 0.0 && t.capacitance > 0.0;
  }
  const bool alpha_sym_ok = (alpha - alpha.transpose()).cwiseAbs().maxCoeff() <= tol_a;
  const bool beta_sym_ok = (beta - beta.transpose()).cwiseAbs().maxCoeff() <= tol_b;
  r.reciprocal = alpha_sym_ok && beta_sym_ok;
  r.passive = r.alpha_passive && r.beta_symmetric_psd && r.elements_positive;
  return r;
}

}  // namespace qsimnet
