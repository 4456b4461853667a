#include "qsimnet/netlist.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "qsimnet/error.hpp"

namespace qsimnet {

std::string format_double(double v) {
  char buf[40];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string port(Index k) { return "p" + std::to_string(k + 1); }

std::string pair_name(const char* prefix, Index k, Index l, bool separate) {
  std::string s = prefix + std::to_string(k + 1);
  if (separate) s += '_';
  return s + std::to_string(l + 1);
}

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::invalid_input, "non-finite value for " + what);
  }
}

std::vector<NetlistElement> build_elements(const CircuitDesign& design, const Vector& v0,
                                           const Vector& dv0) {
  const Index n = design.dim();
  const Matrix& alpha = design.interaction.alpha;
  const Matrix& beta = design.interaction.beta;
  if (v0.size() != n || dv0.size() != n) {
    throw Error(ErrorKind::dimension_mismatch, "initial state does not match the design");
  }
  if (!alpha.allFinite() || !beta.allFinite()) {
    throw Error(ErrorKind::invalid_input, "non-finite interaction admittance");
  }

  std::vector<NetlistElement> out;
  const Vector i0 = -(design.capacitances().asDiagonal() * dv0) - alpha * v0;
  for (Index k = 0; k < n; ++k) {
    const auto& t = design.tanks[static_cast<std::size_t>(k)];
    const std::string id = std::to_string(k + 1);
    require_finite(t.capacitance, "C" + id);
    require_finite(v0(k), "C" + id + " IC");
    require_finite(i0(k), "L" + id + " IC");
    out.push_back({"C" + id, {port(k), "0"}, t.capacitance, v0(k)});
    if (t.inductance == std::numeric_limits<double>::infinity()) {
      // Open tank: no inductor, so nothing can hold the initial current.
      if (i0(k) != 0.0) {
        throw Error(ErrorKind::invalid_input,
                    "open tank " + id + " cannot carry a nonzero initial inductor current");
      }
      continue;
    }
    require_finite(t.inductance, "L" + id);
    out.push_back({"L" + id, {port(k), "0"}, t.inductance, i0(k)});
  }

  const Matrix sym = 0.5 * (beta + beta.transpose());
  const Matrix skew = 0.5 * (beta - beta.transpose());
  for (Index k = 0; k < n; ++k) {
    const double row_sum = sym.row(k).sum();
    if (row_sum != 0.0) {
      out.push_back({"LS" + std::to_string(k + 1), {port(k), "0"}, 1.0 / row_sum, {}});
    }
    for (Index l = k + 1; l < n; ++l) {
      if (sym(k, l) != 0.0) {
        out.push_back({pair_name("LB", k, l, true), {port(k), port(l)}, -1.0 / sym(k, l), {}});
      }
      if (skew(k, l) != 0.0) {
        out.push_back({pair_name("Y", k, l, true), {port(k), port(l)}, skew(k, l), {}});
      }
    }
  }

  const bool separate = n >= 10;
  for (Index k = 0; k < n; ++k) {
    if (alpha(k, k) != 0.0) {
      out.push_back({pair_name("G", k, k, separate), {port(k), "0", port(k), "0"}, alpha(k, k), {}});
    }
    for (Index l = k + 1; l < n; ++l) {
      if (alpha(k, l) != 0.0) {
        out.push_back({pair_name("G", k, l, separate), {port(k), "0", port(l), "0"}, alpha(k, l), {}});
      }
      if (alpha(l, k) != 0.0) {
        out.push_back({pair_name("G", l, k, separate), {port(l), "0", port(k), "0"}, alpha(l, k), {}});
      }
    }
  }
  return out;
}

Netlist render(Index n, const std::vector<NetlistElement>& elements) {
  std::string text;
  text += kNetlistHeader;
  text += " n=" + std::to_string(n) + "\n";
  for (const auto& e : elements) {
    text += e.name;
    for (const auto& node : e.nodes) text += " " + node;
    text += " " + format_double(e.value);
    if (e.initial) text += " IC=" + format_double(*e.initial);
    text += "\n";
  }
  text += ".end\n";
  return {std::move(text), elements.size()};
}

Index parse_port(const std::string& node, Index n, std::size_t line) {
  if (node.size() < 2 || node[0] != 'p') {
    throw Error(ErrorKind::invalid_input,
                "netlist line " + std::to_string(line) + ": expected port node, got '" + node + "'");
  }
  char* end = nullptr;
  const long k = std::strtol(node.c_str() + 1, &end, 10);
  if (*end != '\0' || k < 1 || k > n) {
    throw Error(ErrorKind::invalid_input,
                "netlist line " + std::to_string(line) + ": bad port '" + node + "'");
  }
  return static_cast<Index>(k - 1);
}

double parse_number(const std::string& tok, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || *end != '\0' || !std::isfinite(v)) {
    throw Error(ErrorKind::invalid_input,
                "netlist line " + std::to_string(line) + ": bad number '" + tok + "'");
  }
  return v;
}

Index header_dim(std::string_view text) {
  const auto eol = text.find('\n');
  const std::string first(text.substr(0, eol));
  const std::string prefix = std::string(kNetlistHeader) + " n=";
  if (first.rfind(prefix, 0) != 0) {
    throw Error(ErrorKind::invalid_input, "missing '* qsimnet v1 n=<n>' header");
  }
  char* end = nullptr;
  const long n = std::strtol(first.c_str() + prefix.size(), &end, 10);
  if (n < 1 || (*end != '\0' && *end != '\r')) {
    throw Error(ErrorKind::invalid_input, "bad port count in netlist header");
  }
  return static_cast<Index>(n);
}

}  // namespace

std::vector<NetlistElement> netlist_elements(const CircuitDesign& design) {
  return build_elements(design, design.initial_voltages(), design.initial_slopes());
}

Netlist export_netlist(const CircuitDesign& design) {
  return render(design.dim(), netlist_elements(design));
}

Netlist export_netlist(const CircuitDesign& design, const Vector& initial_voltages,
                       const std::optional<Vector>& initial_slopes) {
  const Vector dv0 = initial_slopes ? *initial_slopes : Vector::Zero(design.dim());
  return render(design.dim(), build_elements(design, initial_voltages, dv0));
}

std::vector<NetlistElement> parse_netlist_elements(std::string_view text) {
  const Index n = header_dim(text);
  std::vector<NetlistElement> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    if (line == ".end") {
      ended = true;
      break;
    }
    std::istringstream tokens(line);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    NetlistElement e;
    e.name = tok[0];
    if (tok.back().rfind("IC=", 0) == 0) {
      e.initial = parse_number(tok.back().substr(3), line_no);
      tok.pop_back();
    }
    const std::size_t expected_nodes = e.name[0] == 'G' ? 4 : 2;
    if (tok.size() != expected_nodes + 2) {
      throw Error(ErrorKind::invalid_input,
                  "netlist line " + std::to_string(line_no) + ": wrong field count");
    }
    e.nodes.assign(tok.begin() + 1, tok.end() - 1);
    for (const auto& node : e.nodes) {
      if (node != "0") parse_port(node, n, line_no);
    }
    e.value = parse_number(tok.back(), line_no);
    out.push_back(std::move(e));
  }
  if (!ended) throw Error(ErrorKind::invalid_input, "netlist is missing '.end'");
  return out;
}

CircuitDesign parse_netlist(std::string_view text) {
  const Index n = header_dim(text);
  const auto elements = parse_netlist_elements(text);

  CircuitDesign d;
  d.tanks.resize(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) d.tanks[static_cast<std::size_t>(k)].index = k;
  d.interaction.alpha = Matrix::Zero(n, n);
  d.interaction.beta = Matrix::Zero(n, n);
  Matrix& alpha = d.interaction.alpha;
  Matrix& beta = d.interaction.beta;
  std::vector<bool> have_c(static_cast<std::size_t>(n)), have_l(static_cast<std::size_t>(n));
  Vector i0 = Vector::Zero(n);

  std::size_t idx = 0;
  for (const auto& e : elements) {
    ++idx;
    const Index k = parse_port(e.nodes[0], n, idx);
    auto& tank = d.tanks[static_cast<std::size_t>(k)];
    const std::string& name = e.name;
    if (name[0] == 'C') {
      tank.capacitance = e.value;
      tank.v0 = e.initial.value_or(0.0);
      have_c[static_cast<std::size_t>(k)] = true;
    } else if (name.rfind("LS", 0) == 0) {
      beta(k, k) += 1.0 / e.value;
    } else if (name.rfind("LB", 0) == 0) {
      const Index l = parse_port(e.nodes[1], n, idx);
      const double y = 1.0 / e.value;
      beta(k, k) += y;
      beta(l, l) += y;
      beta(k, l) -= y;
      beta(l, k) -= y;
    } else if (name[0] == 'L') {
      tank.inductance = e.value;
      i0(k) = e.initial.value_or(0.0);
      have_l[static_cast<std::size_t>(k)] = true;
    } else if (name[0] == 'Y') {
      const Index l = parse_port(e.nodes[1], n, idx);
      beta(k, l) += e.value;
      beta(l, k) -= e.value;
    } else if (name[0] == 'G') {
      const Index l = parse_port(e.nodes[2], n, idx);
      alpha(k, l) += e.value;
    } else {
      throw Error(ErrorKind::invalid_input, "unknown netlist element '" + name + "'");
    }
  }
  for (Index k = 0; k < n; ++k) {
    if (!have_c[static_cast<std::size_t>(k)]) {
      throw Error(ErrorKind::invalid_input,
                  "port " + std::to_string(k + 1) + " is missing its tank capacitor");
    }
    if (!have_l[static_cast<std::size_t>(k)]) {
      d.tanks[static_cast<std::size_t>(k)].inductance = std::numeric_limits<double>::infinity();
    }
  }

  d.omega0_sq = Vector(n);
  for (Index k = 0; k < n; ++k) {
    auto& t = d.tanks[static_cast<std::size_t>(k)];
    d.omega0_sq(k) = 1.0 / (t.inductance * t.capacitance);
  }
  const Vector v0 = d.initial_voltages();
  const Vector dv0 = (-i0 - alpha * v0).cwiseQuotient(d.capacitances());
  for (Index k = 0; k < n; ++k) d.tanks[static_cast<std::size_t>(k)].dv0 = dv0(k);
  d.strategy = Omega0Strategy::explicit_values;
  d.flags = derive_flags(d);
  return d;
}

}  // namespace qsimnet
