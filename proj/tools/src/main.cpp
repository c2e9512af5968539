#include <iostream>

#include "CLI11.hpp"
#include "qmpower/cli/commands.hpp"
#include "qmpower/errors.hpp"

using qmpower::cli::Command;
using qmpower::cli::Format;
using qmpower::cli::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& config, std::string& topology,
                std::string& format) {
  sub->add_option("--state", config.state, "State spec")
      ->capture_default_str();
  sub->add_option("--gen", config.generator, "Generator spec")
      ->capture_default_str();
  sub->add_option("--m", config.m, "Number of parameters")
      ->capture_default_str();
  sub->add_option("--alpha-sq", config.alpha_sq, "Classical energy |alpha|^2")
      ->capture_default_str();
  sub->add_option("--topology", topology, "serial|parallel")
      ->capture_default_str();
  sub->add_option("--seed", config.seed, "Seed for all randomness")
      ->capture_default_str();
  sub->add_option("-o,--output", config.output, "Output file");
  sub->add_option("--format", format, "json|csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metrological power of single-mode states"};
  app.footer(qmpower::cli::help_footer());
  app.require_subcommand(1);

  RunConfig config;
  std::string topology = "serial";
  std::string format;
  std::string sweep;

  auto* power = app.add_subcommand("power", "Asymptotic power report");
  add_common(power, config, topology, format);

  auto* converge =
      app.add_subcommand("converge", "Finite-amplitude advantage sweep");
  add_common(converge, config, topology, format);
  converge->add_option("--sweep", sweep, "lo:hi:count (log-spaced alpha_sq)")
      ->required();

  auto* audit = app.add_subcommand("audit", "Random-network bound audit");
  add_common(audit, config, topology, format);
  audit->add_option("--networks", config.networks, "Random networks")
      ->capture_default_str();
  audit->add_option("--optimizer-runs", config.optimizer_runs,
                    "Optimizer starts")
      ->capture_default_str();
  audit->add_option("--weights", config.weights,
                    "Comma separated weights, uniform if omitted");

  auto* oracle =
      app.add_subcommand("oracle-check", "Brute-force oracle comparison");
  add_common(oracle, config, topology, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (power->parsed()) config.command = Command::power;
    if (converge->parsed()) config.command = Command::converge;
    if (audit->parsed()) config.command = Command::audit;
    if (oracle->parsed()) config.command = Command::oracle_check;
    config.topology = qmpower::parse_topology(topology);
    if (!sweep.empty()) config.sweep = qmpower::cli::parse_sweep(sweep);
    if (format == "json") {
      config.format = Format::json;
    } else if (format == "csv") {
      config.format = Format::csv;
    } else if (!format.empty()) {
      throw qmpower::DomainError("--format must be json or csv");
    }
    const auto result = qmpower::cli::run_command(config);
    return qmpower::cli::emit(config, result, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "qmpower: " << e.what() << "\n";
    return qmpower::cli::exit_code_for(e);
  }
}
