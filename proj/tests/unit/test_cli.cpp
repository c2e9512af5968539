#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmpower/cli/commands.hpp"
#include "qmpower/errors.hpp"

using namespace qmpower;
using namespace qmpower::cli;
using Json = nlohmann::ordered_json;

namespace {

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("qmpower-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(QMPOWER_CLI_PATH) + " " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(CliSpecs, States) {
  EXPECT_NEAR(parse_state_spec("coherent:1.5").energy(), 2.25, 1e-12);
  EXPECT_NEAR(parse_state_spec("coherent:alpha=1.5,phase=0.3").energy(), 2.25,
              1e-12);
  EXPECT_NEAR(parse_state_spec("squeezed:r=0.5").energy(),
              std::sinh(0.5) * std::sinh(0.5), 1e-12);
  EXPECT_EQ(parse_state_spec("fock:3").population(3), 1.0);
  EXPECT_EQ(parse_state_spec("vacuum:dim=9").dim(), 9);
  EXPECT_FALSE(parse_state_spec("thermal:0.4").is_pure());
  EXPECT_NEAR(parse_state_spec("cat:alpha=1,parity=-1").population(0), 0.0,
              1e-15);
  EXPECT_THROW(parse_state_spec("bogus:1"), DomainError);
  EXPECT_THROW(parse_state_spec("coherent:x=1"), DomainError);
  EXPECT_THROW(parse_state_spec("fock:1.5"), DomainError);
  EXPECT_THROW(parse_state_spec("coherent:abc"), DomainError);
  EXPECT_THROW(parse_state_spec("coherent:3,dim=10"), LeakageError);
  EXPECT_THROW(parse_state_spec("file:/nonexistent.json"), DomainError);
}

TEST(CliSpecs, Generators) {
  EXPECT_EQ(parse_generator("phase"), GeneratorSpec::phase());
  EXPECT_EQ(parse_generator("kerr"), GeneratorSpec::kerr());
  EXPECT_EQ(parse_generator("force:0.5"), GeneratorSpec::force(0.5));
  EXPECT_EQ(parse_generator("real:0.2,0.6,0.2").p, 2);
  EXPECT_THROW(parse_generator("real:0.2,0.6"), DomainError);
  EXPECT_THROW(parse_generator("spin"), DomainError);
}

TEST(CliSpecs, SweepAndWeights) {
  const auto s = parse_sweep("1:1000:4");
  const auto pts = s.points();
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_DOUBLE_EQ(pts.front(), 1.0);
  EXPECT_DOUBLE_EQ(pts.back(), 1000.0);
  EXPECT_NEAR(pts[1], 10.0, 1e-12);
  EXPECT_THROW(parse_sweep("10:1:4"), DomainError);
  EXPECT_THROW(parse_sweep("1:10:1"), DomainError);
  EXPECT_THROW(parse_sweep("0:10:3"), DomainError);
  EXPECT_THROW(parse_sweep("1:10"), DomainError);
  EXPECT_EQ(parse_weights("", 3), uniform_weights(3));
  EXPECT_THROW(parse_weights("0.5,0.6", 2), DomainError);
  EXPECT_THROW(parse_weights("0.5", 2), DomainError);
}

TEST(CliSpecs, FileStates) {
  const auto dir = scratch_dir("file-state");
  const auto path = dir / "state.json";
  const RunConfig unused;
  (void)unused;
  std::ofstream(path) << R"({"dim": 3, "kind": "pure", "data": [0,0, 1,0, 0,0], "leakage": 0})";
  EXPECT_EQ(parse_state_spec("file:" + path.string()).population(1), 1.0);
}

TEST(CliPower, SqueezedSerial) {
  RunConfig c;
  c.state = "squeezed:r=0.5";
  c.m = 2;
  c.alpha_sq = 100.0;
  c.topology = Topology::serial;
  const Json j = Json::parse(cmd_power(c).text);
  const double mf = 2.0 * (std::exp(1.0) - 1.0);
  EXPECT_NEAR(j["m_force"].get<double>(), mf, 1e-10);
  EXPECT_NEAR(j["asymptotic_power"].get<double>(), 2.0 * 4.0 * 100.0 * mf, 1e-8);
  EXPECT_EQ(j["schema"], "qmpower/1");
}

TEST(CliPower, CoherentHasNoPower) {
  RunConfig c;
  c.state = "coherent:1.0";
  c.alpha_sq = 10.0;
  const Json j = Json::parse(cmd_power(c).text);
  EXPECT_NEAR(j["asymptotic_power"].get<double>(), 0.0, 1e-9);
}

TEST(CliPower, FockKerrParallel) {
  RunConfig c;
  c.state = "fock:1";
  c.generator = "kerr";
  c.alpha_sq = 10.0;
  c.topology = Topology::parallel;
  const Json j = Json::parse(cmd_power(c).text);
  EXPECT_NEAR(j["asymptotic_power"].get<double>(), 32000.0, 1e-7);
  c.format = Format::csv;
  const auto r = cmd_power(c);
  EXPECT_EQ(r.extension, "csv");
  EXPECT_EQ(r.text.rfind("p,m,topology,", 0), 0u);
}

TEST(CliConverge, SqueezedApproachesLaw) {
  RunConfig c;
  c.command = Command::converge;
  c.state = "squeezed:r=0.5";
  const double e = std::sinh(0.5) * std::sinh(0.5);
  c.sweep = Sweep{e, 1e4 * e, 5};
  const auto rows = csv_rows(cmd_converge(c).text);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NEAR(rows.back()[3], 1.0, 0.02);
  EXPECT_LT(std::abs(rows.back()[3] - 1.0), std::abs(rows.front()[3] - 1.0));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i][0], rows[i - 1][0]);
  }
}

TEST(CliConverge, CoherentAdvantageVanishes) {
  RunConfig c;
  c.state = "coherent:1.0";
  c.sweep = Sweep{1.0, 1e3, 4};
  for (const auto& row : csv_rows(cmd_converge(c).text)) {
    EXPECT_LE(row[1], 1e-10);
  }
}

TEST(CliConverge, NeedsSweep) {
  RunConfig c;
  EXPECT_THROW(cmd_converge(c), DomainError);
}

TEST(CliAudit, UniformWeightsPass) {
  for (auto [topo, m] : {std::pair{Topology::serial, 3},
                         std::pair{Topology::parallel, 2}}) {
    RunConfig c;
    c.topology = topo;
    c.m = m;
    c.networks = 300;
    c.optimizer_runs = 20;
    const auto r = cmd_audit(c);
    EXPECT_EQ(r.exit_code, 0);
    const Json j = Json::parse(r.text);
    EXPECT_LE(j["max_ratio"].get<double>(), 1.0 + 1e-8);
    EXPECT_GE(j["optimizer"]["saturated_fraction"].get<double>(), 0.95);
  }
}

TEST(CliAudit, NonUniformWeightsBreakTheStatedSerialBound) {
  RunConfig c;
  c.m = 2;
  c.weights = "0.7,0.3";
  c.networks = 50;
  c.optimizer_runs = 5;
  const auto r = cmd_audit(c);
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_FALSE(Json::parse(r.text)["pass"].get<bool>());
}

TEST(CliOracle, Passes) {
  RunConfig c;
  c.m = 2;
  c.alpha_sq = 2.0;
  c.state = "squeezed:0.3";
  const auto r = cmd_oracle_check(c);
  EXPECT_EQ(r.exit_code, 0);
  const Json j = Json::parse(r.text);
  EXPECT_EQ(j["cases"].size(), 4u);
  EXPECT_LE(j["max_relative_deviation"].get<double>(), 1e-6);
  c.m = 3;
  EXPECT_THROW(cmd_oracle_check(c), DomainError);
}

TEST(CliExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(DomainError("x")), 2);
  EXPECT_EQ(exit_code_for(LeakageError("x")), 3);
  EXPECT_EQ(exit_code_for(OrderError("x")), 3);
  EXPECT_EQ(exit_code_for(InvariantViolation("x")), 4);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), 1);
}

TEST(CliOutput, DeterministicFilesUnderOutputDir) {
  const auto dir = scratch_dir("output");
  ::setenv("QMPOWER_OUTPUT_DIR", dir.c_str(), 1);
  RunConfig c;
  c.command = Command::audit;
  c.m = 2;
  c.networks = 100;
  c.optimizer_runs = 3;
  c.seed = 5;
  c.output = "a.json";
  std::ostringstream sink;
  emit(c, run_command(c), sink);
  c.output = "b.json";
  emit(c, run_command(c), sink);
  c.output = "";
  emit(c, run_command(c), sink);
  ::unsetenv("QMPOWER_OUTPUT_DIR");
  EXPECT_TRUE(sink.str().empty());
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const auto a = slurp(dir / "a.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir / "b.json"));
  EXPECT_EQ(a, slurp(dir / "qmpower-audit.json"));
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(run_binary("power --state squeezed:0.5 --m 2 --alpha-sq 100"), 0);
  EXPECT_EQ(run_binary("power --state nonsense"), 2);
  EXPECT_EQ(run_binary("power --m notanumber"), 2);
  EXPECT_EQ(run_binary("power --state coherent:3,dim=10"), 3);
  EXPECT_EQ(run_binary("audit --m 2 --weights 0.7,0.3 --networks 20 "
                       "--optimizer-runs 1"),
            4);
  EXPECT_EQ(run_binary("converge --state squeezed:0.5 --sweep 1:100:3"), 0);
  EXPECT_EQ(run_binary("--help"), 0);
}
