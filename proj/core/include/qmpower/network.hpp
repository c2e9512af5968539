#pragma once

// Passive linear networks feeding the nonclassical mode a_0 and m-1 coherent
// modes into the m phase-encoding modes b_k.
//
// Serial topology stores one cumulative unitary U_k per parameter; parameter k
// is imprinted on b_k = sum_j (U_k)_{kj} a_j. Parallel topology uses a single
// unitary U and b_k = sum_j U_{kj} a_j. In both cases alphas[0] is the
// displacement applied to the nonclassical mode and counts toward the classical
// budget |alpha|^2 = sum_j |alphas[j]|^2.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qmpower/generator.hpp"
#include "qmpower/types.hpp"

namespace qmpower {

enum class Topology { serial, parallel };

std::string_view to_string(Topology topology);
Topology parse_topology(std::string_view text);

struct NetworkConfig {
  Topology topology = Topology::parallel;
  int m = 1;
  std::vector<CMatrix> unitaries;
  CVector alphas;
  RVector weights;
  std::optional<std::uint64_t> seed;

  // Throws DomainError on shape mismatch, non-unitary matrices or weights
  // whose absolute values do not sum to one.
  void validate() const;

  const CMatrix& unitary_for(int k) const;
  // Coefficients of b_k in the input modes.
  CVector mode_row(int k) const;
  // u_{k0}: coupling of b_k to the nonclassical mode.
  Complex coupling(int k) const;
  // f_k = sum_j u_{kj} alpha_j.
  Complex amplitude(int k) const;
  // [b_j, b_k^dagger]; delta_jk for the parallel topology.
  Complex commutator(int j, int k) const;
  double alpha_sq() const;
};

RVector uniform_weights(int m);
// Throws DomainError unless sum |w_j| = 1 within 1e-10.
void validate_weights(const RVector& w);
double weights_sq(const RVector& w);  // |w|^2
double weights_max(const RVector& w);  // max |w_j|

// z = sum_j w_j conj(u_{j0}) f_j.
Complex compute_z(const NetworkConfig& network);
// Generator-aware amplitude
//   z = sum_u w_u conj(u_{u0}) sum_j kappa_j (p-j) conj(f_u)^{p-j-1} f_u^j.
// Reduces to compute_z for the phase generator.
Complex compute_z(const NetworkConfig& network, const GeneratorSpec& spec);

// |alpha|^2 |w|^4 / w_max^2 and |alpha|^2 |w|^4.
double serial_bound(const RVector& w, double alpha_sq);
double parallel_bound(const RVector& w, double alpha_sq);
double topology_bound(Topology topology, const RVector& w, double alpha_sq);

// Closed-form networks reaching the bounds above with arg z = phi_target.
// Same-sign weights only for the serial construction; mixed-sign weights
// fall back to numeric_optimize_z and throw CertificationFailure if the bound
// cannot be certified.
NetworkConfig optimal_serial_network(const RVector& w, double alpha_sq,
                                     double phi_target = 0.0);
NetworkConfig optimal_parallel_network(const RVector& w, double alpha_sq,
                                       double phi_target = 0.0);

// All classical energy is put into a_0 and every b_k picks up a_0 with
// coupling e^{i coupling_phase} (serial) or only b_0 does (parallel). The
// displacement is chosen so that arg f_k = amplitude_phase.
NetworkConfig routed_network(Topology topology, const RVector& w,
                             double alpha_sq, double amplitude_phase,
                             double coupling_phase);

// Haar-random unitaries and a uniformly random point on the amplitude sphere
// of radius sqrt(alpha_sq). Deterministic per seed.
NetworkConfig sample_random_network(int m, Topology topology, double alpha_sq,
                                    const RVector& w, std::uint64_t seed);

// Unitary whose first column is the unit vector v.
CMatrix unitary_with_first_column(const CVector& v);
// Unitary whose k-th row is the unit row vector r.
CMatrix unitary_with_row(int k, const CVector& r);
bool is_unitary(const CMatrix& u, double tol = kUnitaryTol);

struct OptimizerOptions {
  int max_steps = 100000;         // coordinate line searches
  double tolerance = 1e-12;       // per-sweep improvement of |z|^2 / alpha_sq
  int grid_points = 16;           // coarse scan before golden refinement
  double angle_tolerance = 1e-10;
};

struct OptimizationResult {
  NetworkConfig network;
  double objective = 0.0;          // final |z|^2
  std::vector<double> trace;       // |z|^2 after each sweep, starting value first
  int steps = 0;
  bool converged = false;
  bool hit_step_cap = false;
};

// Coordinate ascent on |z|^2 over the network unitaries (right-multiplied by
// Givens rotations and diagonal phases) and the amplitude sphere. Each accepted
// move strictly increases the objective. The amplitudes are finally rotated
// so that arg z = phi_target.
OptimizationResult numeric_optimize_z(const NetworkConfig& initial,
                                      double phi_target = 0.0,
                                      const OptimizerOptions& options = {});

}  // namespace qmpower
