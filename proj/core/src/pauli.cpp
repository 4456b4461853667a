#include "qsimnet/pauli.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qsimnet/error.hpp"

namespace qsimnet {

namespace {

double inv_or_zero(const std::optional<double>& l) { return l ? 1.0 / *l : 0.0; }

double parallel(double l, const std::optional<double>& partner, const char* name) {
  if (!partner) return l;
  const double y = 1.0 / l + 1.0 / *partner;
  if (y == 0.0) {
    std::ostringstream os;
    os << "parallel merge of " << name << " is degenerate: 1/" << l << " + 1/"
       << *partner << " = 0";
    throw Error(ErrorKind::infeasible, os.str());
  }
  return 1.0 / y;
}

CircuitDesign two_port_design(double c, double l1, double l2, const Matrix& beta, double g) {
  CircuitDesign d;
  d.tanks = {PortTank{0, l1, c, 0.0, 0.0}, PortTank{1, l2, c, 0.0, 0.0}};
  d.omega0_sq = Vector(2);
  d.omega0_sq << 1.0 / (l1 * c), 1.0 / (l2 * c);
  d.strategy = Omega0Strategy::explicit_values;
  d.interaction.alpha = Matrix::Zero(2, 2);
  d.interaction.alpha(0, 1) = g;
  d.interaction.alpha(1, 0) = -g;
  d.interaction.beta = beta;
  d.flags = derive_flags(d);
  return d;
}

}  // namespace

bool PauliCircuit::non_passive() const {
  auto negative = [](const std::optional<double>& v) { return v && *v < 0.0; };
  return l1 < 0.0 || l2 < 0.0 || negative(la) || negative(lb) || negative(lc) ||
         negative(l1_star) || negative(l2_star);
}

PauliCircuit synthesize_pauli(const PauliCoefficients& xi, double capacitance,
                              const PauliOptions& options) {
  if (!(capacitance > 0.0) || !std::isfinite(capacitance)) {
    throw Error(ErrorKind::invalid_input, "capacitance must be positive");
  }
  for (double v : {xi.xi0, xi.xi1, xi.xi2, xi.xi3}) {
    if (!std::isfinite(v)) throw Error(ErrorKind::invalid_input, "xi must be finite");
  }
  if (!(options.la_fraction > 0.0 && options.la_fraction < 1.0)) {
    throw Error(ErrorKind::invalid_input, "Pi split fraction must lie in (0, 1)");
  }
  const double plus = xi.xi0 + xi.xi3;
  const double minus = xi.xi0 - xi.xi3;
  if ((plus == 0.0 || minus == 0.0) && !options.allow_open_tanks) {
    std::ostringstream os;
    os << "xi0 " << (plus == 0.0 ? "+" : "-")
       << " xi3 = 0 requires an infinite tank inductance";
    throw Error(ErrorKind::infeasible, os.str());
  }

  PauliCircuit pc;
  pc.capacitance = capacitance;
  const double inf = std::numeric_limits<double>::infinity();
  pc.l1 = plus == 0.0 ? inf : 1.0 / (capacitance * plus * plus);
  pc.l2 = minus == 0.0 ? inf : 1.0 / (capacitance * minus * minus);

  const double shunt = xi.xi1 * xi.xi1 - xi.xi2 * xi.xi2;  // (C La)^-1 + (C Lb)^-1
  if (shunt != 0.0) {
    pc.la = 1.0 / (capacitance * options.la_fraction * shunt);
    pc.lb = 1.0 / (capacitance * (1.0 - options.la_fraction) * shunt);
  }
  const double bridge = 2.0 * xi.xi0 * xi.xi1;  // -(C Lc)^-1
  if (bridge != 0.0) {
    pc.lc = -1.0 / (capacitance * bridge);
  }
  pc.g = 2.0 * capacitance * xi.xi2;
  return merge_parallel(pc);
}

PauliCircuit merge_parallel(PauliCircuit pc) {
  pc.l1_star = parallel(pc.l1, pc.la, "L1 || La");
  pc.l2_star = parallel(pc.l2, pc.lb, "L2 || Lb");
  return pc;
}

CircuitDesign pauli_design(const PauliCircuit& pc) {
  const double shunt = inv_or_zero(pc.la) + inv_or_zero(pc.lb);
  const double bridge = pc.lc ? -1.0 / *pc.lc : 0.0;
  Matrix beta(2, 2);
  beta << shunt, bridge, bridge, shunt;
  return two_port_design(pc.capacitance, pc.l1, pc.l2, beta, pc.g);
}

CircuitDesign merged_pauli_design(const PauliCircuit& pc) {
  const PauliCircuit merged = pc.l1_star && pc.l2_star ? pc : merge_parallel(pc);
  const double bridge = merged.lc ? -1.0 / *merged.lc : 0.0;
  Matrix beta(2, 2);
  beta << inv_or_zero(merged.lb), bridge, bridge, inv_or_zero(merged.la);
  return two_port_design(merged.capacitance, *merged.l1_star, *merged.l2_star, beta,
                         merged.g);
}

}  // namespace qsimnet
