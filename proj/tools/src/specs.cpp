#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "qmpower/cli/commands.hpp"
#include "qmpower/errors.hpp"
#include "qmpower/serialize.hpp"

namespace qmpower::cli {
namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw DomainError("cannot parse " + std::string(what) + " from '" +
                      std::string(text) + "'");
  }
  return v;
}

int to_int(std::string_view text, std::string_view what) {
  const double v = to_number(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw DomainError(std::string(what) + " must be an integer");
  }
  return static_cast<int>(v);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Arguments after "kind:". A bare value binds to `positional`.
std::map<std::string, std::string> parse_args(std::string_view args,
                                              std::string_view positional) {
  std::map<std::string, std::string> out;
  if (args.empty()) return out;
  for (const auto& item : split(args, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (positional.empty() || out.count(std::string(positional))) {
        throw DomainError("unexpected argument '" + item + "'");
      }
      out[std::string(positional)] = item;
    } else {
      out[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return out;
}

double take(std::map<std::string, std::string>& args, const std::string& key,
            double fallback) {
  const auto it = args.find(key);
  if (it == args.end()) return fallback;
  const double v = to_number(it->second, key);
  args.erase(it);
  return v;
}

// Basis large enough that a geometric tail with ratio q is below 1e-17.
int geometric_dim(double q, int floor_dim) {
  if (q <= 0.0) return floor_dim;
  const double n = 40.0 / -std::log(q);
  return std::max(floor_dim, static_cast<int>(std::ceil(n)) + 20);
}

int poisson_dim(double mean) {
  const double a = std::sqrt(mean);
  return static_cast<int>(std::ceil(mean + 12.0 * a)) + 30;
}

}  // namespace

QuantumState parse_state_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "file") {
    if (rest.empty()) throw DomainError("file: needs a path");
    return state_from_json(read_json_file(std::string(rest)));
  }

  std::string_view positional;
  if (kind == "coherent" || kind == "cat") positional = "alpha";
  if (kind == "squeezed") positional = "r";
  if (kind == "fock" || kind == "thermal") positional = "n";
  auto args = parse_args(rest, positional);
  const bool has_dim = args.count("dim") > 0;
  const int dim = has_dim ? to_int(args.at("dim"), "dim") : 0;
  args.erase("dim");
  if (has_dim && dim < 1) throw DomainError("dim must be >= 1");

  std::optional<QuantumState> state;
  if (kind == "vacuum") {
    state = make_vacuum(has_dim ? dim : 30);
  } else if (kind == "coherent") {
    const double a = take(args, "alpha", 1.0);
    const double phase = take(args, "phase", 0.0);
    state = make_coherent(std::polar(a, phase),
                          has_dim ? dim : poisson_dim(a * a));
  } else if (kind == "squeezed") {
    const double r = take(args, "r", 0.5);
    const double phase = take(args, "phase", 0.0);
    if (r < 0.0) throw DomainError("squeezed: r must be >= 0");
    const int auto_dim = std::min(800, geometric_dim(std::tanh(r), 30));
    state = make_squeezed_vacuum(r, phase, has_dim ? dim : auto_dim);
  } else if (kind == "fock") {
    const double nd = take(args, "n", 0.0);
    if (nd < 0.0 || nd != std::floor(nd) || nd > 1e6) {
      throw DomainError("fock: n must be a non-negative integer");
    }
    const int n = static_cast<int>(nd);
    state = make_fock(n, has_dim ? dim : n + 30);
  } else if (kind == "cat") {
    const double a = take(args, "alpha", 1.0);
    const double phase = take(args, "phase", 0.0);
    const double parity = take(args, "parity", 1.0);
    if (parity != 1.0 && parity != -1.0) {
      throw DomainError("cat: parity must be 1 or -1");
    }
    state = make_cat(std::polar(a, phase), static_cast<int>(parity),
                     has_dim ? dim : poisson_dim(a * a));
  } else if (kind == "thermal") {
    const double n = take(args, "n", 1.0);
    if (n < 0.0) throw DomainError("thermal: n must be >= 0");
    state = make_thermal(n, has_dim ? dim : std::min(800, geometric_dim(n / (1.0 + n), 30)));
  } else {
    throw DomainError("unknown state kind '" + kind +
                      "' (vacuum|coherent|squeezed|fock|cat|thermal|file)");
  }
  if (!args.empty()) {
    throw DomainError("unknown parameter '" + args.begin()->first + "' for " +
                      kind);
  }
  return *std::move(state);
}

GeneratorSpec parse_generator(std::string_view text) {
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  GeneratorSpec spec;
  if (kind == "phase" && rest.empty()) {
    spec = GeneratorSpec::phase();
  } else if (kind == "kerr" && rest.empty()) {
    spec = GeneratorSpec::kerr();
  } else if (kind == "force") {
    auto args = parse_args(rest, "phi");
    const double phi = take(args, "phi", 0.0);
    if (!args.empty()) throw DomainError("force: unknown parameter");
    spec = GeneratorSpec::force(phi);
  } else if (kind == "real") {
    if (rest.empty()) throw DomainError("real: needs coefficients");
    std::vector<double> kappas;
    for (const auto& item : split(rest, ',')) {
      kappas.push_back(to_number(item, "kappa"));
    }
    spec = GeneratorSpec::real(std::move(kappas));
  } else if (kind == "file") {
    return generator_from_json(read_json_file(std::string(rest)));
  } else {
    throw DomainError("unknown generator '" + std::string(text) +
                      "' (phase|kerr|force[:phi]|real:k0,...|file:<path>)");
  }
  spec.validate();
  return spec;
}

Sweep parse_sweep(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("sweep must look like lo:hi:count");
  Sweep s{to_number(parts[0], "sweep lo"), to_number(parts[1], "sweep hi"),
          to_int(parts[2], "sweep count")};
  s.validate();
  return s;
}

RVector parse_weights(std::string_view text, int m) {
  if (text.empty()) return uniform_weights(m);
  const auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != m) {
    throw DomainError("weights: expected " + std::to_string(m) + " values");
  }
  RVector w(m);
  for (int i = 0; i < m; ++i) w(i) = to_number(parts[i], "weight");
  validate_weights(w);
  return w;
}

}  // namespace qmpower::cli
