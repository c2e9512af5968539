#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmpower/fock.hpp"
#include "qmpower/generator.hpp"
#include "qmpower/network.hpp"

namespace qmpower::cli {

enum class Command { power, converge, audit, oracle_check };
enum class Format { json, csv };

std::string_view to_string(Command command);

// Log-spaced alpha_sq points.
struct Sweep {
  double lo = 1.0;
  double hi = 1e4;
  int count = 5;

  void validate() const;
  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::power;
  std::string state = "vacuum";
  std::string generator = "phase";
  int m = 1;
  double alpha_sq = 100.0;
  std::optional<Sweep> sweep;
  Topology topology = Topology::serial;
  std::uint64_t seed = 0;
  int networks = 1000;       // audit: random networks
  int optimizer_runs = 100;  // audit: numeric_optimize_z starts
  std::string weights;       // comma separated, uniform if empty
  std::string output;
  std::optional<Format> format;  // per-command default when unset

  // Throws DomainError.
  void validate() const;
};

// "kind:key=value,..." or "kind:value"; kinds vacuum, coherent, squeezed,
// fock, cat, thermal, plus file:<path> for a serialized state. A dim=N key
// overrides the automatic truncation.
QuantumState parse_state_spec(std::string_view text);
// phase | kerr | force[:phi] | real:k0,k1,... | file:<path>
GeneratorSpec parse_generator(std::string_view text);
// lo:hi:count
Sweep parse_sweep(std::string_view text);
RVector parse_weights(std::string_view text, int m);

// Shortest round-trip decimal form, locale independent.
std::string format_double(double value);

struct CommandResult {
  std::string text;
  int exit_code = 0;
  std::string extension = "json";
};

CommandResult cmd_power(const RunConfig& config);
CommandResult cmd_converge(const RunConfig& config);
CommandResult cmd_audit(const RunConfig& config);
CommandResult cmd_oracle_check(const RunConfig& config);
CommandResult run_command(const RunConfig& config);

// Writes the result to config.output (relative to $QMPOWER_OUTPUT_DIR when
// set) or to `out`. Returns the exit code.
int emit(const RunConfig& config, const CommandResult& result,
         std::ostream& out);

// 2 for domain errors, 3 for leakage/order, 4 for invariant breaches, 1 else.
int exit_code_for(const std::exception& error);

// Text appended to --help.
std::string help_footer();

}  // namespace qmpower::cli
