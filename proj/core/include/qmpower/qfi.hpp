#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qmpower/fock.hpp"
#include "qmpower/generator.hpp"
#include "qmpower/moments.hpp"
#include "qmpower/network.hpp"
#include "qmpower/types.hpp"

namespace qmpower {

// Multi-parameter Fisher information F_jk = 4 Re[<G_j G_k> - <G_j><G_k>].
//
// normal_ordered holds :F_jk:, four times the normally ordered covariance,
// and classical_part = values - normal_ordered. For the parallel phase
// scheme the classical part is diag(4 <n_j>); for serial networks it carries
// the off-diagonal commutators [b_j, b_k^dagger] as well.
// Matrices produced by the brute-force oracle only fill `values`.
struct QfiMatrix {
  RMatrix values;
  RMatrix normal_ordered;
  RMatrix classical_part;

  int m() const noexcept { return static_cast<int>(values.rows()); }
};

// 4 (<G^2> - <G>^2). Throws DomainError for a mixed state or a non-Hermitian
// generator.
double pure_qfi(const QuantumState& state, const ModeOperator& generator);

// 2 sum_{l_i + l_j > 1e-12} (l_i - l_j)^2 / (l_i + l_j) |<i|G|j>|^2.
double sld_qfi(const QuantumState& state, const ModeOperator& generator);

// Exact finite-amplitude QFI matrix of the scheme with every b_k expanded as
// u_{k0} a_0 + f_k into single-mode moments, all orders kept. For a mixed
// input this is the covariance form, an upper bound on its QFI matrix.
QfiMatrix scheme_qfi_matrix(const QuantumState& state,
                            const NetworkConfig& network,
                            const GeneratorSpec& spec);
QfiMatrix scheme_qfi_matrix(const MomentTable& moments,
                            const NetworkConfig& network,
                            const GeneratorSpec& spec);
QfiMatrix phase_qfi_matrix(const QuantumState& state,
                           const NetworkConfig& network);

struct WeightedQfi {
  double value;           // F_w = sum_jk w_j F_jk w_k
  double variance_bound;  // |w|^4 / F_w per repetition; +inf if F_w <= 0
  bool attainable;        // false when F_w <= 0
};

WeightedQfi weighted_qfi(const RMatrix& fisher, const RVector& w);
WeightedQfi weighted_qfi(const QfiMatrix& fisher, const RVector& w);

// :F_w: / |w|^4 using only the normally ordered part.
double advantage(const QfiMatrix& fisher, const RVector& w);
double advantage(const QuantumState& state, const NetworkConfig& network,
                 const RVector& w,
                 const GeneratorSpec& spec = GeneratorSpec::phase());

struct ThetaCoefficient {
  double value;  // max_theta |sum_j kappa_j (p-j) e^{i(2j+1-p) theta}|^2
  double theta;  // smallest maximizer in [0, 2 pi)
};

// Evaluates the coefficient sum at a given angle.
Complex theta_sum(const GeneratorSpec& spec, double theta);
// 1024-point scan followed by golden-section refinement.
ThetaCoefficient theta_coefficient(const GeneratorSpec& spec);

// M^F = 4 max_phi :V(X_phi):, with the maximizing quadrature angle.
struct ForcePower {
  double value;
  double phi;
};
ForcePower force_power(const QuantumState& state);

// max_phi F_SLD(rho, X_phi) - 2 on a phi grid with golden refinement. Equals
// force_power for pure states; for mixtures it is the convex-roof value and
// can be smaller than force_power.
ForcePower sld_force_power(const QuantumState& state);

struct PowerReport {
  int p = 0;
  int m = 1;
  Topology topology = Topology::serial;
  double alpha_sq = 0.0;
  double m_force = 0.0;
  double coefficient = 0.0;
  double asymptotic_power = 0.0;
  double phi_star = 0.0;
  double theta_star = 0.0;
  std::vector<std::pair<double, double>> samples;  // (|alpha|^2, advantage)
  NetworkConfig achieving_network;
};

// coefficient = 2 m_eff^2 alpha_sq^{p-1} theta_coefficient(spec), m_eff = m
// (serial) or 1 (parallel), uniform weights.
double power_coefficient(const GeneratorSpec& spec, int m, double alpha_sq,
                         Topology topology);

// Uniform-weight network reaching the asymptotic power for `spec`: the
// amplitude phase is the theta maximizer and arg z is aligned with the
// state's maximal quadrature phi_star.
NetworkConfig achieving_network(const GeneratorSpec& spec, int m,
                                double alpha_sq, Topology topology,
                                double phi_star);

// Asymptotic power plus the finite-amplitude advantage of the achieving
// network at alpha_sq (and at any extra sample points).
PowerReport asymptotic_power(const QuantumState& state,
                             const GeneratorSpec& spec, int m, double alpha_sq,
                             Topology topology,
                             std::span<const double> extra_samples = {});

}  // namespace qmpower
