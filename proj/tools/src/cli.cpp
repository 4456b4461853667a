#include "qsimnet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "CLI11.hpp"
#include "qsimnet/serialize.hpp"

namespace qsimnet::cli {

namespace fs = std::filesystem;
using io::json;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::dimension_mismatch:
      return kExitInvalidInput;
    case ErrorKind::singular_matrix:
    case ErrorKind::precondition:
    case ErrorKind::infeasible:
      return kExitInfeasible;
    case ErrorKind::integration:
      return kExitInternal;
  }
  return kExitInternal;
}

namespace {

struct Options {
  bool json_errors = false;
  bool no_shift = false;
};

void run_synth(const fs::path& input, const fs::path& out, const Options& opt) {
  const io::JobConfig cfg = io::load_job_config(input);
  const ShiftedHamiltonian eff = io::effective_hamiltonian(cfg, !opt.no_shift);
  const Hamiltonian& h = eff.hamiltonian;

  const SecondOrderSystem sys = second_order_coeffs(h);
  CircuitDesign design = synthesize_network(sys, cfg.synth.capacitances, cfg.synth.omega0);
  set_initial_state(design, initial_conditions(h, cfg.psi0, Part::real_part));

  json j = io::design_to_json(design);
  j["source"] = {{"H_re", io::matrix_to_json(h.real_part())},
                 {"H_im", io::matrix_to_json(h.imag_part())},
                 {"shift", eff.shift},
                 {"route", to_string(sys.route)},
                 {"commutator_norm", sys.commutator_norm},
                 {"initial_part", to_string(Part::real_part)}};
  io::write_file_atomic(out, io::dump(j));
}

CircuitDesign load_design(const fs::path& path) {
  return io::design_from_json(io::parse_json(io::read_file(path), path.string()));
}

void run_simulate(const fs::path& design_path, const fs::path& config, const fs::path& out) {
  const CircuitDesign design = load_design(design_path);
  const io::JobConfig cfg = io::load_job_config(config);
  const DampingStiffness ab = reconstruct_ab(design);
  const InitialData init{design.initial_voltages(), design.initial_slopes(), Part::real_part};
  const TraceSet traces = simulate_second_order(ab.a, ab.b, init, cfg.sim);
  io::write_file_atomic(out, io::traces_to_csv(traces));
}

// The traces must come from the simulation the config describes.
void check_grid(const TraceSet& traces, const SimulationConfig& sim) {
  const auto expected = sim.sample_times();
  bool same = expected.size() == traces.times.size();
  for (std::size_t j = 0; same && j < expected.size(); ++j) {
    same = std::abs(expected[j] - traces.times[j]) <= 1e-9 * std::max(1.0, std::abs(expected[j]));
  }
  if (!same) {
    throw Error(ErrorKind::dimension_mismatch,
                "trace time grid does not match the config (t_end " +
                    format_double(sim.t_end) + ", dt " + format_double(sim.dt) + ")");
  }
}

bool run_verify(const fs::path& traces_path, const fs::path& config, const fs::path& out,
                const Options& opt, std::ostream& log) {
  const TraceSet traces = io::traces_from_csv(io::read_file(traces_path));
  const io::JobConfig cfg = io::load_job_config(config);
  check_grid(traces, cfg.sim);
  const ShiftedHamiltonian eff = io::effective_hamiltonian(cfg, !opt.no_shift);
  const QuantumTrajectory truth = propagate(eff.hamiltonian, cfg.psi0, traces.times);
  const VerificationReport r =
      verify_against_quantum(traces, truth, eff.hamiltonian, cfg.tolerances);
  io::write_file_atomic(out, io::dump(io::report_to_json(r)));

  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  log << "re " << r.max_re_err << " " << mark(r.pass.re) << ", im " << r.max_im_err << " "
      << mark(r.pass.im) << ", born " << r.max_born_err << " " << mark(r.pass.born)
      << ", norm " << r.norm_err << " " << mark(r.pass.norm)
      << (r.spectrum_one_sided ? "" : " (spectrum not one-sided)") << "\n";
  return r.all_pass();
}

void run_netlist(const fs::path& design_path, const fs::path& out) {
  io::write_file_atomic(out, export_netlist(load_design(design_path)).text);
}

void run_pauli(const std::vector<double>& xi, double cap, bool strict, const fs::path& out) {
  if (xi.size() != 4) {
    throw Error(ErrorKind::invalid_input, "--xi needs exactly four comma-separated values");
  }
  PauliOptions po;
  po.allow_open_tanks = !strict;
  const PauliCircuit pc = synthesize_pauli({xi[0], xi[1], xi[2], xi[3]}, cap, po);
  json j = io::design_to_json(pauli_design(pc));
  j["pauli"] = io::pauli_circuit_to_json(pc);
  j["pauli"]["xi"] = xi;
  io::write_file_atomic(out, io::dump(j));
}

void report_error(std::ostream& err, const Options& opt, int code, const std::string& kind,
                  const std::string& message) {
  if (opt.json_errors) {
    json j = {{"qsimnet", io::kSchemaVersion},
              {"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}};
    err << j.dump() << "\n";
  } else {
    err << "qsimnet: " << kind << ": " << message << "\n";
  }
}

}  // namespace

ExecResult execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electrical-circuit synthesis and verification for finite quantum systems",
               "qsimnet"};
  app.fallthrough();
  app.require_subcommand(1);

  Options opt;
  app.add_flag("--json-errors", opt.json_errors, "Print errors as a JSON object on stderr");
  app.add_flag("--no-shift", opt.no_shift, "Ignore spectrum_shift in the config");

  std::string input, design, config, traces, outpath, outdir;
  std::vector<double> xi;
  double cap = 1.0;
  bool strict = false;

  auto* synth = app.add_subcommand("synth", "Synthesize a circuit design from a config");
  synth->add_option("--input", input, "Job config (JSON)")->required();
  synth->add_option("--out", outpath, "Design output (JSON)")->required();

  auto* simulate = app.add_subcommand("simulate", "Simulate port voltages of a design");
  simulate->add_option("--design", design, "Design (JSON)")->required();
  simulate->add_option("--config", config, "Job config (JSON)")->required();
  simulate->add_option("--out", outpath, "Traces output (CSV)")->required();

  auto* verify = app.add_subcommand("verify", "Compare traces with the quantum evolution");
  verify->add_option("--traces", traces, "Traces (CSV)")->required();
  verify->add_option("--config", config, "Job config (JSON)")->required();
  verify->add_option("--out", outpath, "Report output (JSON)")->required();

  auto* netlist = app.add_subcommand("netlist", "Export a design as a netlist");
  netlist->add_option("--design", design, "Design (JSON)")->required();
  netlist->add_option("--out", outpath, "Netlist output")->required();

  auto* pauli = app.add_subcommand("pauli", "Two-level circuit from Pauli coefficients");
  pauli->add_option("--xi", xi, "xi0,xi1,xi2,xi3")->delimiter(',')->required();
  pauli->add_option("--cap", cap, "Tank capacitance")->required();
  pauli->add_option("--out", outpath, "Design output (JSON)")->required();
  pauli->add_flag("--strict", strict, "Reject xi0 +- xi3 = 0 instead of leaving the tank open");

  auto* pipeline = app.add_subcommand("pipeline", "synth, simulate, netlist and verify");
  pipeline->add_option("--input", input, "Job config (JSON)")->required();
  pipeline->add_option("--outdir", outdir, "Output directory")->required();

  ExecResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    result.exit_code = app.exit(e, out, err);
    return result;
  } catch (const CLI::CallForAllHelp& e) {
    result.exit_code = app.exit(e, out, err);
    return result;
  } catch (const CLI::ParseError& e) {
    report_error(err, opt, kExitInvalidInput, "usage", e.what());
    result.exit_code = kExitInvalidInput;
    return result;
  }

  RunArtifacts& art = result.artifacts;
  try {
    if (synth->parsed()) {
      run_synth(input, outpath, opt);
      art.design_path = outpath;
    } else if (simulate->parsed()) {
      run_simulate(design, config, outpath);
      art.traces_path = outpath;
    } else if (verify->parsed()) {
      const bool ok = run_verify(traces, config, outpath, opt, out);
      art.report_path = outpath;
      result.exit_code = ok ? kExitOk : kExitVerificationFailed;
    } else if (netlist->parsed()) {
      run_netlist(design, outpath);
      art.netlist_path = outpath;
    } else if (pauli->parsed()) {
      run_pauli(xi, cap, strict, outpath);
      art.design_path = outpath;
    } else if (pipeline->parsed()) {
      const fs::path dir(outdir);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw Error(ErrorKind::invalid_input, "cannot create " + dir.string());
      art.design_path = dir / "design.json";
      art.traces_path = dir / "traces.csv";
      art.netlist_path = dir / "circuit.cir";
      art.report_path = dir / "report.json";
      run_synth(input, *art.design_path, opt);
      run_simulate(*art.design_path, input, *art.traces_path);
      run_netlist(*art.design_path, *art.netlist_path);
      const bool ok = run_verify(*art.traces_path, input, *art.report_path, opt, out);
      result.exit_code = ok ? kExitOk : kExitVerificationFailed;
    }
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.kind());
    report_error(err, opt, result.exit_code, to_string(e.kind()), e.what());
  } catch (const json::exception& e) {
    result.exit_code = kExitInvalidInput;
    report_error(err, opt, result.exit_code, "invalid_input", e.what());
  } catch (const std::exception& e) {
    result.exit_code = kExitInternal;
    report_error(err, opt, result.exit_code, "internal", e.what());
  }
  return result;
}

}  // namespace qsimnet::cli
