#pragma once

// JSON forms used by the CLI and regression fixtures. Complex arrays are
// interleaved [re, im, re, im, ...]; matrices are row-major. Keys are emitted
// in a fixed order.

#include <nlohmann/json.hpp>

#include "qmpower/fock.hpp"
#include "qmpower/generator.hpp"
#include "qmpower/moments.hpp"
#include "qmpower/network.hpp"
#include "qmpower/qfi.hpp"

namespace qmpower {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "qmpower/1";

Json to_json(const QuantumState& state);
QuantumState state_from_json(const Json& j);

Json to_json(const NetworkConfig& network);
NetworkConfig network_from_json(const Json& j);

Json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const Json& j);

Json to_json(const MomentTable& table);

// {m_force, coefficient, asymptotic_power, p, m, topology, alpha_sq,
//  samples, phi_star}
Json to_json(const PowerReport& report);

Json to_json(const QfiMatrix& fisher);

}  // namespace qmpower
