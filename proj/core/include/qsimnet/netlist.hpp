#pragma once

// SPICE-flavoured text export of a CircuitDesign, and the matching parser.
//
//   * qsimnet v1 n=<n>
//   C<k>  p<k> 0 <C_k> IC=<v0>           port capacitor
//   L<k>  p<k> 0 <L_k> IC=<i0>           tank inductor
//   LS<k> p<k> 0 <L>                     beta shunt to ground
//   LB<k>_<l> p<k> p<l> <L>              beta bridge between ports
//   Y<k>_<l> p<k> p<l> <y>               antisymmetric part of beta (extension)
//   G<k><l> p<k> 0 p<l> 0 <alpha_kl>     VCCS, current alpha_kl*V_l out of p<k>
//   .end
//
// A tank with infinite inductance (open) has no L<k> line. Ports are
// numbered from 1. For n >= 10 the G names use G<k>_<l> so that names stay
// unique. Values are printed with 17 significant digits, which
// round-trips IEEE doubles exactly. Ordering: tanks ascending, then the beta
// upper triangle, then the alpha upper triangle (G<k><l> before G<l><k>).
//
// The tank inductor initial current i0 = -C_k dv0_k - (alpha v0)_k makes the
// port voltage slope at t = 0 equal dv0 with every other inductor at rest.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsimnet/synthesis.hpp"

namespace qsimnet {

inline constexpr std::string_view kNetlistHeader = "* qsimnet v1";

struct NetlistElement {
  std::string name;
  std::vector<std::string> nodes;
  double value = 0.0;
  std::optional<double> initial;

  friend bool operator==(const NetlistElement&, const NetlistElement&) = default;
};

struct Netlist {
  std::string text;
  std::size_t element_count = 0;
};

/// Elements in export order. Throws Error(invalid_input) on non-finite values.
std::vector<NetlistElement> netlist_elements(const CircuitDesign& design);

/// Export with the initial voltages/slopes stored in the design tanks.
Netlist export_netlist(const CircuitDesign& design);

/// Export with explicit initial port voltages (and optionally slopes).
Netlist export_netlist(const CircuitDesign& design, const Vector& initial_voltages,
                       const std::optional<Vector>& initial_slopes = std::nullopt);

/// Element list of a netlist produced by export_netlist.
std::vector<NetlistElement> parse_netlist_elements(std::string_view text);

/// Rebuild a design from netlist text. omega0^2 comes from the tanks, flags are
/// re-derived, strategy is reported as explicit_values.
CircuitDesign parse_netlist(std::string_view text);

/// %.17g formatting shared by every text artifact.
std::string format_double(double v);

}  // namespace qsimnet
