#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <string>

#include "support.hpp"

using namespace qsimnet;
using namespace testing_support;

namespace {

int count_prefix(const std::vector<NetlistElement>& els, char c) {
  return static_cast<int>(std::count_if(els.begin(), els.end(),
                                        [c](const NetlistElement& e) { return e.name[0] == c; }));
}

CircuitDesign sigma2_design() {
  Matrix a(2, 2);
  a << 0, 2, -2, 0;
  return synthesize_network(a, -Matrix::Identity(2, 2), Vector::Ones(2),
                            {Omega0Strategy::unit, {}});
}

CircuitDesign random_design(Index n, std::mt19937_64& rng) {
  Vector caps(n);
  for (Index k = 0; k < n; ++k) caps(k) = uniform(rng, 0.2, 4.0);
  CircuitDesign d = synthesize_network(random_matrix(n, n, rng), random_matrix(n, n, rng), caps,
                                       {Omega0Strategy::unit, {}});
  Vector v0(n), dv0(n);
  for (Index k = 0; k < n; ++k) {
    v0(k) = uniform(rng);
    dv0(k) = uniform(rng);
  }
  set_initial_state(d, {v0, dv0, Part::real_part});
  return d;
}

}  // namespace

TEST(Netlist, DiagonalDesignHasOnlyTanks) {
  Matrix b = Matrix::Zero(2, 2);
  b.diagonal() << 1, 4;
  const CircuitDesign d = synthesize_network(Matrix::Zero(2, 2), b, Vector::Ones(2));
  const auto els = netlist_elements(d);
  ASSERT_EQ(els.size(), 4u);
  EXPECT_EQ(els[0].name, "C1");
  EXPECT_EQ(els[1].name, "L1");
  EXPECT_EQ(els[2].name, "C2");
  EXPECT_EQ(els[3].name, "L2");
  EXPECT_EQ(count_prefix(els, 'G'), 0);
  EXPECT_EQ(export_netlist(d).element_count, 4u);
}

TEST(Netlist, Sigma2HasTwoCrossCoupledSources) {
  const Netlist nl = export_netlist(sigma2_design());
  const auto els = parse_netlist_elements(nl.text);
  std::vector<NetlistElement> g;
  for (const auto& e : els)
    if (e.name[0] == 'G') g.push_back(e);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].name, "G12");
  EXPECT_EQ(g[0].value, 2.0);
  EXPECT_EQ(g[1].name, "G21");
  EXPECT_EQ(g[1].value, -2.0);
  EXPECT_NE(nl.text.find("G12 p1 0 p2 0 2\n"), std::string::npos);
}

TEST(Netlist, TextFormat) {
  CircuitDesign d = sigma2_design();
  set_initial_state(d, {(Vector(2) << 1, 0).finished(), (Vector(2) << 0, 1).finished(),
                        Part::real_part});
  const std::string text = export_netlist(d).text;
  EXPECT_EQ(text.rfind("* qsimnet v1 n=2\n", 0), 0u);
  EXPECT_NE(text.find("C1 p1 0 1 IC=1\n"), std::string::npos);
  // i0 = -C dv0 - alpha v0 = -(0, 1) - (0, -2) = (0, 1)
  EXPECT_NE(text.find("L2 p2 0 1 IC=1\n"), std::string::npos);
  EXPECT_NE(text.find("LS1 p1 0 -0.5\n"), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 5), ".end\n");
  EXPECT_EQ(text.find("-0 "), std::string::npos);
}

TEST(Netlist, Deterministic) {
  std::mt19937_64 rng(83);
  const CircuitDesign d = random_design(5, rng);
  EXPECT_EQ(export_netlist(d).text, export_netlist(d).text);
  const CircuitDesign copy = d;
  EXPECT_EQ(export_netlist(copy).text, export_netlist(d).text);
}

TEST(Netlist, ParseBackIsExact) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + trial % 12;
    const CircuitDesign d = random_design(n, rng);
    const std::string text = export_netlist(d).text;
    const auto els = parse_netlist_elements(text);
    EXPECT_EQ(els, netlist_elements(d));

    const CircuitDesign back = parse_netlist(text);
    EXPECT_EQ(back.capacitances(), d.capacitances());
    EXPECT_EQ(back.inductances(), d.inductances());
    EXPECT_EQ(back.initial_voltages(), d.initial_voltages());
    EXPECT_LT(max_abs(back.initial_slopes() - d.initial_slopes()), 1e-12);
    EXPECT_EQ(back.interaction.alpha, d.interaction.alpha);
    EXPECT_LT(max_abs(back.interaction.beta - d.interaction.beta), 1e-12);
    const DampingStiffness x = reconstruct_ab(d), y = reconstruct_ab(back);
    EXPECT_LT(max_abs(x.a - y.a), 1e-12);
    EXPECT_LT(max_abs(x.b - y.b), 1e-12);
    EXPECT_EQ(back.flags, derive_flags(back));
  }
}

TEST(Netlist, WideDesignsUseSeparatedSourceNames) {
  std::mt19937_64 rng(97);
  const CircuitDesign d = random_design(11, rng);
  const auto els = netlist_elements(d);
  std::vector<std::string> names;
  for (const auto& e : els) names.push_back(e.name);
  EXPECT_NE(std::find(names.begin(), names.end(), "G1_11"), names.end());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
}

TEST(Netlist, ExplicitInitialVoltages) {
  const CircuitDesign d = sigma2_design();
  const Vector v0 = (Vector(2) << 0.25, -0.5).finished();
  const std::string text = export_netlist(d, v0).text;
  const CircuitDesign back = parse_netlist(text);
  EXPECT_EQ(back.initial_voltages(), v0);
  EXPECT_TRUE(back.initial_slopes().isZero(1e-15));
  EXPECT_THROW(export_netlist(d, Vector::Zero(3)), Error);
}

TEST(Netlist, OpenTankHasNoInductor) {
  PauliOptions open;
  open.allow_open_tanks = true;
  const CircuitDesign d = pauli_design(synthesize_pauli({0, 0, 1, 0}, 1.0, open));
  const auto els = netlist_elements(d);
  EXPECT_EQ(count_prefix(els, 'C'), 2);
  for (const auto& e : els) EXPECT_NE(e.name, "L1");
  const CircuitDesign back = parse_netlist(export_netlist(d).text);
  EXPECT_EQ(back.tanks[0].inductance, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(back.omega0_sq.isZero(0.0));
  EXPECT_EQ(reconstruct_ab(back).b, reconstruct_ab(d).b);
}

TEST(Netlist, RejectsNonFinite) {
  CircuitDesign d = sigma2_design();
  d.interaction.beta(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(export_netlist(d), Error);
}

TEST(Netlist, ParserErrors) {
  EXPECT_THROW(parse_netlist("C1 p1 0 1\n.end\n"), Error);
  EXPECT_THROW(parse_netlist("* qsimnet v1 n=1\nC1 p1 0 1\n"), Error);
  EXPECT_THROW(parse_netlist("* qsimnet v1 n=1\nC1 p1 0 x\n.end\n"), Error);
  EXPECT_THROW(parse_netlist("* qsimnet v1 n=1\nC1 p3 0 1\n.end\n"), Error);
  EXPECT_THROW(parse_netlist("* qsimnet v1 n=1\nQ1 p1 0 1\n.end\n"), Error);
  EXPECT_THROW(parse_netlist("* qsimnet v1 n=2\nC1 p1 0 1\nL1 p1 0 1\n.end\n"), Error);
  EXPECT_NO_THROW(parse_netlist("* qsimnet v1 n=1\n\n   \nC1 p1 0 1 IC=0\nL1 p1 0 1\n.end\n"));
}

TEST(FormatDouble, RoundTripsAndHasNoNegativeZero) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    const double v = uniform(rng) * std::pow(10.0, uniform(rng, -20, 20));
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}
