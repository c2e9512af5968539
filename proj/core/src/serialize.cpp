#include "qmpower/serialize.hpp"

#include "qmpower/errors.hpp"

namespace qmpower {
namespace {

Json interleave(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i).real());
    out.push_back(v(i).imag());
  }
  return out;
}

Json interleave(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out.push_back(m(r, c).real());
      out.push_back(m(r, c).imag());
    }
  }
  return out;
}

CVector complex_vector(const Json& j, Eigen::Index expected,
                       const char* field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != 2 * expected) {
    throw DomainError(std::string("json: field '") + field +
                      "' has the wrong length");
  }
  CVector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    v(i) = Complex(j.at(2 * i).get<double>(), j.at(2 * i + 1).get<double>());
  }
  return v;
}

CMatrix complex_matrix(const Json& j, Eigen::Index n, const char* field) {
  const CVector flat = complex_vector(j, n * n, field);
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = flat(r * n + c);
  }
  return m;
}

Json real_matrix(const RMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("json: missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

Json to_json(const QuantumState& state) {
  Json j;
  j["dim"] = state.dim();
  j["kind"] = state.is_pure() ? "pure" : "mixed";
  j["data"] = state.is_pure() ? interleave(state.amplitudes())
                              : interleave(state.density());
  j["leakage"] = state.leakage();
  return j;
}

QuantumState state_from_json(const Json& j) {
  try {
    const int dim = field(j, "dim").get<int>();
    if (dim < 1) throw DomainError("json: state dim must be >= 1");
    const std::string kind = field(j, "kind").get<std::string>();
    const double leakage = j.value("leakage", 0.0);
    if (kind == "pure") {
      return QuantumState::pure(complex_vector(field(j, "data"), dim, "data"),
                                leakage);
    }
    if (kind == "mixed") {
      return QuantumState::mixed(complex_matrix(field(j, "data"), dim, "data"),
                                 leakage);
    }
    throw DomainError("json: state kind must be pure|mixed");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("json: malformed state: ") + e.what());
  }
}

Json to_json(const NetworkConfig& network) {
  Json j;
  j["topology"] = std::string(to_string(network.topology));
  j["m"] = network.m;
  Json us = Json::array();
  for (const auto& u : network.unitaries) us.push_back(interleave(u));
  j["unitaries"] = std::move(us);
  j["alphas"] = interleave(network.alphas);
  Json w = Json::array();
  for (Eigen::Index i = 0; i < network.weights.size(); ++i) {
    w.push_back(network.weights(i));
  }
  j["weights"] = std::move(w);
  if (network.seed) j["seed"] = *network.seed;
  return j;
}

NetworkConfig network_from_json(const Json& j) {
  try {
    NetworkConfig net;
    net.topology = parse_topology(field(j, "topology").get<std::string>());
    net.m = field(j, "m").get<int>();
    if (net.m < 1) throw DomainError("json: m must be >= 1");
    for (const auto& u : field(j, "unitaries")) {
      net.unitaries.push_back(complex_matrix(u, net.m, "unitaries"));
    }
    net.alphas = complex_vector(field(j, "alphas"), net.m, "alphas");
    const auto w = field(j, "weights").get<std::vector<double>>();
    net.weights = Eigen::Map<const RVector>(w.data(),
                                            static_cast<Eigen::Index>(w.size()));
    if (j.contains("seed")) net.seed = j.at("seed").get<std::uint64_t>();
    net.validate();
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("json: malformed network: ") + e.what());
  }
}

Json to_json(const GeneratorSpec& spec) {
  Json j;
  j["p"] = spec.p;
  Json k = Json::array();
  for (const Complex& c : spec.kappas) {
    k.push_back(c.real());
    k.push_back(c.imag());
  }
  j["kappas"] = std::move(k);
  return j;
}

GeneratorSpec generator_from_json(const Json& j) {
  try {
    GeneratorSpec spec;
    spec.p = field(j, "p").get<int>();
    if (spec.p < 1) throw DomainError("json: generator order must be >= 1");
    const CVector k = complex_vector(field(j, "kappas"), spec.p + 1, "kappas");
    spec.kappas.assign(k.data(), k.data() + k.size());
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("json: malformed generator: ") + e.what());
  }
}

Json to_json(const MomentTable& table) {
  Json j;
  j["max_order"] = table.max_order();
  j["leakage"] = table.leakage();
  Json entries = Json::array();
  for (int d = 0; d <= table.max_total(); ++d) {
    for (int s = 0; s <= d; ++s) {
      const Complex v = table(d - s, s);
      entries.push_back(Json::array({d - s, s, v.real(), v.imag()}));
    }
  }
  j["moments"] = std::move(entries);
  return j;
}

Json to_json(const PowerReport& report) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["m_force"] = report.m_force;
  j["coefficient"] = report.coefficient;
  j["asymptotic_power"] = report.asymptotic_power;
  j["p"] = report.p;
  j["m"] = report.m;
  j["topology"] = std::string(to_string(report.topology));
  j["alpha_sq"] = report.alpha_sq;
  Json samples = Json::array();
  for (const auto& [a2, adv] : report.samples) {
    samples.push_back(Json::array({a2, adv}));
  }
  j["samples"] = std::move(samples);
  j["phi_star"] = report.phi_star;
  j["theta_star"] = report.theta_star;
  j["network"] = to_json(report.achieving_network);
  return j;
}

Json to_json(const QfiMatrix& fisher) {
  Json j;
  j["values"] = real_matrix(fisher.values);
  if (fisher.normal_ordered.size() > 0) {
    j["normal_ordered"] = real_matrix(fisher.normal_ordered);
    j["classical_part"] = real_matrix(fisher.classical_part);
  }
  return j;
}

}  // namespace qmpower
