#include "qsimnet/serialize.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace qsimnet::io {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorKind::invalid_input, msg);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(std::string(what) + " must be finite");
  return v;
}

const json& member(const json& obj, const char* key, const char* where) {
  if (!obj.is_object()) fail(std::string(where) + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string(where) + " is missing '" + key + "'");
  return *it;
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::invalid_input, std::string(what) + " is not finite");
  }
}

Hamiltonian hamiltonian_from_json(const json& j) {
  if (!j.is_object()) fail("'hamiltonian' must be an object");
  const bool dense = j.contains("H_re") || j.contains("H_im");
  const bool pauli = j.contains("pauli");
  if (dense == pauli) {
    fail("'hamiltonian' needs exactly one of {H_re, H_im} or {pauli}");
  }
  if (pauli) {
    const json& xi = j["pauli"];
    if (!xi.is_array() || xi.size() != 4) fail("'pauli' must list four coefficients");
    return pauli_to_matrix({number(xi[0], "pauli[0]"), number(xi[1], "pauli[1]"),
                            number(xi[2], "pauli[2]"), number(xi[3], "pauli[3]")});
  }
  const Matrix re = matrix_from_json(member(j, "H_re", "hamiltonian"), "H_re");
  const Matrix im = matrix_from_json(member(j, "H_im", "hamiltonian"), "H_im");
  return Hamiltonian::from_parts(re, im);
}

SimulationConfig sim_from_json(const json& j) {
  SimulationConfig sim;
  if (!j.is_object()) fail("'sim' must be an object");
  if (j.contains("t_end")) sim.t_end = number(j["t_end"], "sim.t_end");
  if (j.contains("dt")) sim.dt = number(j["dt"], "sim.dt");
  if (j.contains("method")) {
    if (!j["method"].is_string()) fail("sim.method must be a string");
    sim.method = method_from_string(j["method"].get<std::string>());
  }
  if (j.contains("rel_tol")) sim.rel_tol = number(j["rel_tol"], "sim.rel_tol");
  if (j.contains("abs_tol")) sim.abs_tol = number(j["abs_tol"], "sim.abs_tol");
  sim.validate();
  return sim;
}

SynthSettings synth_from_json(const json& j, Index n) {
  SynthSettings s;
  s.capacitances = Vector::Ones(n);
  if (j.is_null()) return s;
  if (!j.is_object()) fail("'synth' must be an object");
  if (j.contains("cap")) {
    const json& cap = j["cap"];
    if (cap.is_array()) {
      s.capacitances = vector_from_json(cap, "synth.cap");
      if (s.capacitances.size() != n) fail("synth.cap must have one entry per port");
    } else {
      s.capacitances = Vector::Constant(n, number(cap, "synth.cap"));
    }
  }
  if (j.contains("omega0_strategy")) {
    if (!j["omega0_strategy"].is_string()) fail("synth.omega0_strategy must be a string");
    s.omega0.strategy = omega0_strategy_from_string(j["omega0_strategy"].get<std::string>());
  }
  if (s.omega0.strategy == Omega0Strategy::explicit_values) {
    s.omega0.values = vector_from_json(member(j, "omega0_sq", "synth"), "synth.omega0_sq");
    if (s.omega0.values.size() != n) fail("synth.omega0_sq must have one entry per port");
  }
  return s;
}

VerificationTolerances tolerances_from_json(const json& j) {
  VerificationTolerances t;
  if (!j.is_object()) fail("'verify' must be an object");
  if (j.contains("re")) t.re = number(j["re"], "verify.re");
  if (j.contains("im")) t.im = number(j["im"], "verify.im");
  if (j.contains("born")) t.born = number(j["born"], "verify.born");
  if (j.contains("norm")) t.norm = number(j["norm"], "verify.norm");
  return t;
}

void check_schema(const json& j, const char* what) {
  if (!j.is_object()) fail(std::string(what) + " must be a JSON object");
  auto it = j.find("qsimnet");
  if (it != j.end() && (!it->is_number_integer() || it->get<int>() != kSchemaVersion)) {
    fail(std::string(what) + " has an unsupported schema version");
  }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) {
      check_finite(m(i, k), "matrix entry");
      row.push_back(m(i, k));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(std::string(what) + " must be a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) fail(std::string(what) + " must be an array of rows");
  const auto cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      fail(std::string(what) + " rows must all have the same length");
    }
    for (Index k = 0; k < cols; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], what);
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    check_finite(v(i), "vector entry");
    out.push_back(v(i));
  }
  return out;
}

Vector vector_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(std::string(what) + " must be a non-empty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i], what);
  return v;
}

JobConfig job_config_from_json(const json& j) {
  check_schema(j, "config");
  JobConfig cfg;
  const json& h = member(j, "hamiltonian", "config");
  cfg.hamiltonian = hamiltonian_from_json(h);
  if (h.contains("pauli")) {
    const json& xi = h["pauli"];
    cfg.pauli = PauliCoefficients{xi[0].get<double>(), xi[1].get<double>(),
                                  xi[2].get<double>(), xi[3].get<double>()};
  }
  const Index n = cfg.hamiltonian.dim();

  const json& psi = member(j, "psi0", "config");
  const Vector re = vector_from_json(member(psi, "re", "psi0"), "psi0.re");
  Vector im = Vector::Zero(re.size());
  if (psi.contains("im")) im = vector_from_json(psi["im"], "psi0.im");
  if (re.size() != n || im.size() != n) {
    throw Error(ErrorKind::dimension_mismatch,
                "psi0 must have " + std::to_string(n) + " entries to match the Hamiltonian");
  }
  CVector amp(n);
  amp.real() = re;
  amp.imag() = im;
  cfg.psi0 = StateVector(std::move(amp), StateVector::Normalize::rescale);

  if (j.contains("sim")) cfg.sim = sim_from_json(j["sim"]);
  cfg.synth = synth_from_json(j.contains("synth") ? j["synth"] : json(), n);
  if (j.contains("spectrum_shift")) {
    const json& s = j["spectrum_shift"];
    if (!s.is_object()) fail("'spectrum_shift' must be an object");
    if (s.contains("enabled")) {
      if (!s["enabled"].is_boolean()) fail("spectrum_shift.enabled must be a boolean");
      cfg.shift.enabled = s["enabled"].get<bool>();
    }
    if (s.contains("margin")) cfg.shift.margin = number(s["margin"], "spectrum_shift.margin");
    if (!(cfg.shift.margin > 0.0)) fail("spectrum_shift.margin must be positive");
  }
  if (j.contains("verify")) cfg.tolerances = tolerances_from_json(j["verify"]);
  return cfg;
}

JobConfig load_job_config(const std::filesystem::path& path) {
  return job_config_from_json(parse_json(read_file(path), path.string()));
}

ShiftedHamiltonian effective_hamiltonian(const JobConfig& cfg, bool allow_shift) {
  if (allow_shift && cfg.shift.enabled) return shift_spectrum(cfg.hamiltonian, cfg.shift.margin);
  return {cfg.hamiltonian, 0.0};
}

json design_to_json(const CircuitDesign& design) {
  json tanks = json::array();
  for (const PortTank& t : design.tanks) {
    check_finite(t.capacitance, "tank capacitance");
    const bool open = t.inductance == std::numeric_limits<double>::infinity();
    if (!open) check_finite(t.inductance, "tank inductance");
    tanks.push_back({{"port", t.index + 1},
                     {"L", open ? json(nullptr) : json(t.inductance)},
                     {"C", t.capacitance},
                     {"v0", t.v0},
                     {"dv0", t.dv0}});
  }
  json j;
  j["qsimnet"] = kSchemaVersion;
  j["type"] = "design";
  j["n"] = design.dim();
  j["omega0_strategy"] = to_string(design.strategy);
  j["tanks"] = std::move(tanks);
  j["omega0_sq"] = vector_to_json(design.omega0_sq);
  j["alpha"] = matrix_to_json(design.interaction.alpha);
  j["beta"] = matrix_to_json(design.interaction.beta);
  j["flags"] = {{"non_passive", design.flags.non_passive},
                {"gyrator_required", design.flags.gyrator_required},
                {"disconnected", design.flags.disconnected}};
  return j;
}

CircuitDesign design_from_json(const json& j) {
  check_schema(j, "design");
  const json& tanks = member(j, "tanks", "design");
  if (!tanks.is_array() || tanks.empty()) fail("design.tanks must be a non-empty array");
  CircuitDesign d;
  const auto n = static_cast<Index>(tanks.size());
  for (Index k = 0; k < n; ++k) {
    const json& t = tanks[static_cast<std::size_t>(k)];
    PortTank tank;
    tank.index = k;
    const json& l = member(t, "L", "tank");
    tank.inductance = l.is_null() ? std::numeric_limits<double>::infinity() : number(l, "tank L");
    tank.capacitance = number(member(t, "C", "tank"), "tank C");
    if (t.contains("v0")) tank.v0 = number(t["v0"], "tank v0");
    if (t.contains("dv0")) tank.dv0 = number(t["dv0"], "tank dv0");
    d.tanks.push_back(tank);
  }
  d.interaction.alpha = matrix_from_json(member(j, "alpha", "design"), "design.alpha");
  d.interaction.beta = matrix_from_json(member(j, "beta", "design"), "design.beta");
  for (const Matrix* m : {&d.interaction.alpha, &d.interaction.beta}) {
    if (m->rows() != n || m->cols() != n) {
      throw Error(ErrorKind::dimension_mismatch, "design alpha/beta must be n x n");
    }
  }
  if (j.contains("omega0_sq")) {
    d.omega0_sq = vector_from_json(j["omega0_sq"], "design.omega0_sq");
    if (d.omega0_sq.size() != n) {
      throw Error(ErrorKind::dimension_mismatch, "design.omega0_sq must have n entries");
    }
  } else {
    d.omega0_sq = (d.inductances().array() * d.capacitances().array()).inverse().matrix();
  }
  d.strategy = Omega0Strategy::explicit_values;
  if (j.contains("omega0_strategy") && j["omega0_strategy"].is_string()) {
    d.strategy = omega0_strategy_from_string(j["omega0_strategy"].get<std::string>());
  }
  d.flags = derive_flags(d);
  return d;
}

json pauli_circuit_to_json(const PauliCircuit& pc) {
  // null marks an absent element, or an open tank for L1 / L2
  auto opt = [](const std::optional<double>& v) {
    return v && std::isfinite(*v) ? json(*v) : json(nullptr);
  };
  return {{"C", pc.capacitance}, {"L1", opt(pc.l1)},      {"L2", opt(pc.l2)},
          {"La", opt(pc.la)},    {"Lb", opt(pc.lb)},      {"Lc", opt(pc.lc)},
          {"g", pc.g},           {"L1_star", opt(pc.l1_star)}, {"L2_star", opt(pc.l2_star)},
          {"non_passive", pc.non_passive()}};
}

json report_to_json(const VerificationReport& r) {
  json j;
  j["qsimnet"] = kSchemaVersion;
  j["type"] = "report";
  j["max_re_err"] = r.max_re_err;
  j["max_im_err"] = r.max_im_err;
  j["max_born_err"] = r.max_born_err;
  j["norm_err"] = r.norm_err;
  j["spectrum_one_sided"] = r.spectrum_one_sided;
  j["im_convention"] = to_string(r.im_convention);
  j["tolerances"] = {{"re", r.tolerances.re},
                     {"im", r.tolerances.im},
                     {"born", r.tolerances.born},
                     {"norm", r.tolerances.norm}};
  j["pass"] = {{"re", r.pass.re}, {"im", r.pass.im}, {"born", r.pass.born}, {"norm", r.pass.norm}};
  j["all_pass"] = r.all_pass();
  return j;
}

std::string traces_to_csv(const TraceSet& traces) {
  traces.validate();
  std::string out = "t";
  for (const std::string& label : traces.labels) out += "," + label;
  out += '\n';
  for (std::size_t j = 0; j < traces.sample_count(); ++j) {
    out += format_double(traces.times[j]);
    for (const auto& ch : traces.channels) {
      out += ',';
      out += format_double(ch[j]);
    }
    out += '\n';
  }
  return out;
}

TraceSet traces_from_csv(std::string_view text) {
  TraceSet ts;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail("trace CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream header(line);
    std::string cell;
    std::getline(header, cell, ',');
    if (cell != "t") fail("trace CSV header must start with 't'");
    while (std::getline(header, cell, ',')) ts.labels.push_back(cell);
  }
  if (ts.labels.empty()) fail("trace CSV has no channels");
  ts.channels.resize(ts.labels.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        fail("trace CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
      if (col == 0) {
        ts.times.push_back(v);
      } else if (col <= ts.channels.size()) {
        ts.channels[col - 1].push_back(v);
      }
      ++col;
    }
    if (col != ts.channels.size() + 1) {
      fail("trace CSV row " + std::to_string(row) + " has " + std::to_string(col) +
           " columns, expected " + std::to_string(ts.channels.size() + 1));
    }
  }
  ts.validate();
  return ts;
}

json parse_json(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin + ": malformed JSON: " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail("cannot move output into place at " + path.string());
  }
}

}  // namespace qsimnet::io
