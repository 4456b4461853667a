#pragma once

// Command-line front end. execute() is the whole program minus main(), so
// tests can drive it in-process.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsimnet/error.hpp"

namespace qsimnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitInternal = 4;

/// Exit code for a library failure category.
int exit_code_for(ErrorKind kind) noexcept;

struct RunArtifacts {
  std::optional<std::filesystem::path> design_path;
  std::optional<std::filesystem::path> traces_path;
  std::optional<std::filesystem::path> report_path;
  std::optional<std::filesystem::path> netlist_path;
};

struct ExecResult {
  int exit_code = kExitOk;
  RunArtifacts artifacts;
};

/// args excludes the program name, e.g. {"synth", "--input", "cfg.json", ...}.
ExecResult execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsimnet::cli
