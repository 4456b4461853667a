#pragma once

// JSON and CSV forms of the artifacts the command-line tool reads and writes.
// Every JSON document carries "qsimnet": 1. Complex matrices are stored as a
// pair of real matrices H_re / H_im.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qsimnet/qsimnet.hpp"

namespace qsimnet::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct SpectrumShift {
  bool enabled = true;
  double margin = 0.5;
};

struct SynthSettings {
  Vector capacitances;  // one per port; a scalar in the file is broadcast
  Omega0Choice omega0;
};

/// Parsed job configuration. Exactly one Hamiltonian form must be present.
struct JobConfig {
  Hamiltonian hamiltonian = Hamiltonian::zero(1);
  std::optional<PauliCoefficients> pauli;  // set when given as {pauli: [...]}
  StateVector psi0 = StateVector::basis(1, 0);
  SimulationConfig sim;
  SynthSettings synth;
  SpectrumShift shift;
  VerificationTolerances tolerances;
};

/// Throws Error(invalid_input) on any schema violation.
JobConfig job_config_from_json(const json& j);
JobConfig load_job_config(const std::filesystem::path& path);

/// The Hamiltonian the circuit actually simulates: H, or H + cI when the
/// shift is enabled.
ShiftedHamiltonian effective_hamiltonian(const JobConfig& cfg, bool allow_shift = true);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const char* what);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j, const char* what);

json design_to_json(const CircuitDesign& design);
CircuitDesign design_from_json(const json& j);

json pauli_circuit_to_json(const PauliCircuit& pc);

json report_to_json(const VerificationReport& r);

/// Header t,V1,...,Vn (labels from the trace set), values with %.17g.
std::string traces_to_csv(const TraceSet& traces);
/// Inverse of traces_to_csv. Throws Error(invalid_input) on malformed text.
TraceSet traces_from_csv(std::string_view text);

/// Parse JSON text, turning syntax errors into Error(invalid_input).
json parse_json(std::string_view text, const std::string& origin);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

std::string read_file(const std::filesystem::path& path);
/// Write to a temporary sibling and rename over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace qsimnet::io
