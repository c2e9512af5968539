#include "qmpower/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "qmpower/errors.hpp"
#include "qmpower/oracle.hpp"
#include "qmpower/qfi.hpp"
#include "qmpower/serialize.hpp"

namespace qmpower::cli {
namespace {

constexpr double kAuditSlack = 1e-8;
constexpr double kSaturationLevel = 1.0 - 1e-6;
constexpr double kOracleTolerance = 1e-6;

Format format_for(const RunConfig& config, Format fallback) {
  return config.format.value_or(fallback);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json weights_json(const RVector& w) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < w.size(); ++i) out.push_back(w(i));
  return out;
}

double max_abs(const RMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::power:
      return "power";
    case Command::converge:
      return "converge";
    case Command::audit:
      return "audit";
    case Command::oracle_check:
      return "oracle-check";
  }
  return "unknown";
}

void Sweep::validate() const {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw DomainError("sweep: need 0 < lo < hi");
  }
  if (count < 2) throw DomainError("sweep: count must be >= 2");
}

std::vector<double> Sweep::points() const {
  validate();
  std::vector<double> out;
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    out.push_back(i == count - 1 ? hi : lo * std::exp(step * i));
  }
  return out;
}

void RunConfig::validate() const {
  if (m < 1) throw DomainError("m must be >= 1");
  if (!(alpha_sq > 0.0) || !std::isfinite(alpha_sq)) {
    throw DomainError("alpha_sq must be positive");
  }
  if (sweep) sweep->validate();
  if (networks < 1) throw DomainError("networks must be >= 1");
  if (optimizer_runs < 0) throw DomainError("optimizer runs must be >= 0");
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

CommandResult cmd_power(const RunConfig& config) {
  config.validate();
  const QuantumState state = parse_state_spec(config.state);
  const GeneratorSpec spec = parse_generator(config.generator);
  const PowerReport report =
      asymptotic_power(state, spec, config.m, config.alpha_sq, config.topology);
  CommandResult result;
  if (format_for(config, Format::json) == Format::csv) {
    std::ostringstream os;
    os << "p,m,topology,alpha_sq,m_force,coefficient,asymptotic_power,"
          "phi_star,theta_star,finite_advantage\n";
    os << report.p << ',' << report.m << ',' << to_string(report.topology)
       << ',' << format_double(report.alpha_sq) << ','
       << format_double(report.m_force) << ','
       << format_double(report.coefficient) << ','
       << format_double(report.asymptotic_power) << ','
       << format_double(report.phi_star) << ','
       << format_double(report.theta_star) << ','
       << format_double(report.samples.front().second) << '\n';
    result.text = os.str();
    result.extension = "csv";
    return result;
  }
  Json j = to_json(report);
  j["generator"] = to_json(spec);
  result.text = dump(j);
  return result;
}

CommandResult cmd_converge(const RunConfig& config) {
  config.validate();
  if (!config.sweep) throw DomainError("converge needs --sweep lo:hi:count");
  const QuantumState state = parse_state_spec(config.state);
  const GeneratorSpec spec = parse_generator(config.generator);
  const ForcePower fp = force_power(state);
  const MomentTable table = build_table(state, spec.p);
  const RVector w = uniform_weights(config.m);
  const std::vector<double> points = config.sweep->points();

  struct Row {
    double alpha_sq;
    double advantage;
    double asymptotic;
  };
  std::vector<std::future<Row>> jobs;
  for (double a2 : points) {
    jobs.push_back(std::async(std::launch::async, [&, a2] {
      const NetworkConfig net =
          achieving_network(spec, config.m, a2, config.topology, fp.phi);
      const double adv = advantage(scheme_qfi_matrix(table, net, spec), w);
      const double asym =
          power_coefficient(spec, config.m, a2, config.topology) * fp.value;
      return Row{a2, adv, asym};
    }));
  }
  std::vector<Row> rows;
  for (auto& job : jobs) rows.push_back(job.get());
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.alpha_sq < b.alpha_sq; });

  auto ratio = [](const Row& r) {
    return r.asymptotic != 0.0 ? r.advantage / r.asymptotic
                               : std::numeric_limits<double>::quiet_NaN();
  };
  CommandResult result;
  if (format_for(config, Format::csv) == Format::json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["m_force"] = fp.value;
    j["phi_star"] = fp.phi;
    Json arr = Json::array();
    for (const Row& r : rows) {
      Json row;
      row["alpha_sq"] = r.alpha_sq;
      row["finite_advantage"] = r.advantage;
      row["asymptotic"] = r.asymptotic;
      const double q = ratio(r);
      row["ratio"] = std::isnan(q) ? Json(nullptr) : Json(q);
      arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    result.text = dump(j);
    return result;
  }
  std::ostringstream os;
  os << "alpha_sq,finite_advantage,asymptotic,ratio\n";
  for (const Row& r : rows) {
    os << format_double(r.alpha_sq) << ',' << format_double(r.advantage) << ','
       << format_double(r.asymptotic) << ',' << format_double(ratio(r))
       << '\n';
  }
  result.text = os.str();
  result.extension = "csv";
  return result;
}

CommandResult cmd_audit(const RunConfig& config) {
  config.validate();
  const RVector w = parse_weights(config.weights, config.m);
  const double bound = topology_bound(config.topology, w, config.alpha_sq);
  std::mt19937_64 seeds(config.seed);

  double max_ratio = 0.0;
  int violations = 0;
  for (int i = 0; i < config.networks; ++i) {
    const NetworkConfig net = sample_random_network(
        config.m, config.topology, config.alpha_sq, w, seeds());
    const double ratio = std::norm(compute_z(net)) / bound;
    max_ratio = std::max(max_ratio, ratio);
    if (ratio > 1.0 + kAuditSlack) ++violations;
  }

  int saturated = 0;
  int capped = 0;
  long total_steps = 0;
  double worst = std::numeric_limits<double>::infinity();
  double best = 0.0;
  for (int i = 0; i < config.optimizer_runs; ++i) {
    const NetworkConfig start = sample_random_network(
        config.m, config.topology, config.alpha_sq, w, seeds());
    const OptimizationResult opt = numeric_optimize_z(start);
    const double ratio = opt.objective / bound;
    if (ratio > 1.0 + kAuditSlack) ++violations;
    max_ratio = std::max(max_ratio, ratio);
    if (ratio >= kSaturationLevel) ++saturated;
    if (opt.hit_step_cap) ++capped;
    total_steps += opt.steps;
    worst = std::min(worst, ratio);
    best = std::max(best, ratio);
  }

  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "audit";
  j["topology"] = std::string(to_string(config.topology));
  j["m"] = config.m;
  j["alpha_sq"] = config.alpha_sq;
  j["weights"] = weights_json(w);
  j["seed"] = config.seed;
  j["bound"] = bound;
  j["networks"] = config.networks;
  j["max_ratio"] = max_ratio;
  j["violations"] = violations;
  Json opt;
  opt["runs"] = config.optimizer_runs;
  opt["saturated"] = saturated;
  opt["saturated_fraction"] =
      config.optimizer_runs > 0
          ? static_cast<double>(saturated) / config.optimizer_runs
          : 0.0;
  opt["worst_ratio"] = config.optimizer_runs > 0 ? worst : 0.0;
  opt["best_ratio"] = best;
  opt["mean_steps"] = config.optimizer_runs > 0
                          ? static_cast<double>(total_steps) /
                                config.optimizer_runs
                          : 0.0;
  opt["hit_step_cap"] = capped;
  j["optimizer"] = std::move(opt);
  j["pass"] = violations == 0;

  CommandResult result;
  result.text = dump(j);
  result.exit_code = violations == 0 ? 0 : 4;
  return result;
}

namespace {

Json oracle_case(const std::string& name, const QuantumState& state,
                 const NetworkConfig& net, const GeneratorSpec& spec,
                 double& worst) {
  const int d = choose_per_mode_dim(state, net, spec.p);
  const MultimodeState multi = simulate_scheme(state, net, d, spec.p);
  const QfiMatrix brute = brute_qfi_matrix(multi, spec);
  const QfiMatrix moments = scheme_qfi_matrix(state, net, spec);
  const double diff = max_abs(brute.values - moments.values);
  const double scale = max_abs(moments.values);
  const double rel = scale > 0.0 ? diff / scale : diff;
  worst = std::max(worst, rel);
  Json j;
  j["name"] = name;
  j["m"] = net.m;
  j["per_mode_dim"] = d;
  j["max_abs_deviation"] = diff;
  j["relative_deviation"] = rel;
  j["pass"] = rel <= kOracleTolerance;
  return j;
}

}  // namespace

CommandResult cmd_oracle_check(const RunConfig& config) {
  config.validate();
  if (config.m > 2) throw DomainError("oracle-check supports m <= 2");
  std::mt19937_64 seeds(config.seed);
  double worst = 0.0;
  Json cases = Json::array();

  {
    // classical input: F = 4 diag(<n_j>) in the parallel scheme
    const NetworkConfig net = sample_random_network(
        2, Topology::parallel, 2.0, uniform_weights(2), seeds());
    cases.push_back(oracle_case("coherent-parallel", make_vacuum(30), net,
                                GeneratorSpec::phase(), worst));
  }
  {
    NetworkConfig net = sample_random_network(2, Topology::serial, 2.25,
                                              uniform_weights(2), seeds());
    net.alphas = CVector::Zero(2);
    net.alphas(0) = 1.5;
    cases.push_back(oracle_case("squeezed-serial",
                                make_squeezed_vacuum(0.3, 0.0, 40), net,
                                GeneratorSpec::phase(), worst));
  }
  {
    const NetworkConfig net =
        routed_network(Topology::parallel, uniform_weights(1), 4.0, 0.0, 0.0);
    cases.push_back(oracle_case("kerr-single-mode",
                                make_squeezed_vacuum(0.2, 0.0, 40), net,
                                GeneratorSpec::kerr(), worst));
  }
  {
    const QuantumState state = parse_state_spec(config.state);
    const GeneratorSpec spec = parse_generator(config.generator);
    const NetworkConfig net =
        sample_random_network(config.m, config.topology, config.alpha_sq,
                              uniform_weights(config.m), seeds());
    cases.push_back(oracle_case("configured", state, net, spec, worst));
  }

  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "oracle-check";
  j["seed"] = config.seed;
  j["tolerance"] = kOracleTolerance;
  j["cases"] = std::move(cases);
  j["max_relative_deviation"] = worst;
  j["pass"] = worst <= kOracleTolerance;
  CommandResult result;
  result.text = dump(j);
  result.exit_code = worst <= kOracleTolerance ? 0 : 4;
  return result;
}

CommandResult run_command(const RunConfig& config) {
  switch (config.command) {
    case Command::power:
      return cmd_power(config);
    case Command::converge:
      return cmd_converge(config);
    case Command::audit:
      return cmd_audit(config);
    case Command::oracle_check:
      return cmd_oracle_check(config);
  }
  throw DomainError("unknown command");
}

int emit(const RunConfig& config, const CommandResult& result,
         std::ostream& out) {
  const char* env = std::getenv("QMPOWER_OUTPUT_DIR");
  const std::filesystem::path dir = env && *env ? env : "";
  std::filesystem::path path;
  if (!config.output.empty()) {
    path = config.output;
    if (path.is_relative() && !dir.empty()) path = dir / path;
  } else if (!dir.empty()) {
    path = dir / ("qmpower-" + std::string(to_string(config.command)) + "." +
                  result.extension);
  }
  if (path.empty()) {
    out << result.text;
    return result.exit_code;
  }
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot write '" + path.string() + "'");
  file << result.text;
  return result.exit_code;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const LeakageError*>(&error) ||
      dynamic_cast<const OrderError*>(&error)) {
    return 3;
  }
  if (dynamic_cast<const InvariantViolation*>(&error) ||
      dynamic_cast<const CertificationFailure*>(&error)) {
    return 4;
  }
  if (dynamic_cast<const DomainError*>(&error)) return 2;
  return 1;
}

std::string help_footer() {
  std::ostringstream os;
  os << "Output schema " << kSchemaVersion << "\n"
     << "\n"
     << "State specs: vacuum[:dim=N] | coherent:alpha[,phase=..] |\n"
     << "  squeezed:r[,phase=..] | fock:n | cat:alpha[,parity=1|-1,phase=..] |\n"
     << "  thermal:n | file:<state.json>\n"
     << "Generators: phase | kerr | force[:phi] | real:k0,k1,... | "
        "file:<gen.json>\n"
     << "\n"
     << "power (json): schema, m_force, coefficient, asymptotic_power, p, m,\n"
     << "  topology, alpha_sq, samples [[alpha_sq, advantage]], phi_star,\n"
     << "  theta_star, network, generator\n"
     << "power (csv): p,m,topology,alpha_sq,m_force,coefficient,\n"
     << "  asymptotic_power,phi_star,theta_star,finite_advantage\n"
     << "converge (csv): alpha_sq,finite_advantage,asymptotic,ratio\n"
     << "audit (json): max_ratio, violations, bound, optimizer {runs,\n"
     << "  saturated, saturated_fraction, worst_ratio, best_ratio,\n"
     << "  mean_steps, hit_step_cap}, pass\n"
     << "oracle-check (json): cases [{name, m, per_mode_dim,\n"
     << "  max_abs_deviation, relative_deviation, pass}],\n"
     << "  max_relative_deviation, pass\n"
     << "\n"
     << "Exit codes: 0 ok, 2 usage or domain error, 3 truncation leakage or\n"
     << "  moment order, 4 invariant violation.\n"
     << "QMPOWER_OUTPUT_DIR: directory for --output paths and default files.\n";
  return os.str();
}

}  // namespace qmpower::cli
