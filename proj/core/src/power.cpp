#include <algorithm>
#include <cmath>

#include "qmpower/errors.hpp"
#include "qmpower/qfi.hpp"

namespace qmpower {

ForcePower force_power(const QuantumState& state) {
  const QuadratureVariance v = max_normally_ordered_variance(state);
  return {4.0 * v.value, v.phi};
}

ForcePower sld_force_power(const QuantumState& state) {
  constexpr int kGrid = 64;
  const double step = kPi / kGrid;
  auto f = [&](double phi) {
    return sld_qfi(state, ModeOperator::quadrature(phi, state.dim()));
  };
  double best_phi = 0.0;
  double best = f(0.0);
  for (int g = 1; g < kGrid; ++g) {
    const double v = f(g * step);
    if (v > best) {
      best = v;
      best_phi = g * step;
    }
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_phi - step;
  double hi = best_phi + step;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double v = f(mid);
  if (v > best) {
    best = v;
    best_phi = std::fmod(mid + kPi, kPi);
  }
  return {best - 2.0, best_phi};
}

double power_coefficient(const GeneratorSpec& spec, int m, double alpha_sq,
                         Topology topology) {
  spec.validate();
  if (m < 1) throw DomainError("power_coefficient: m must be >= 1");
  if (!(alpha_sq > 0.0)) {
    throw DomainError("power_coefficient: alpha_sq must be positive");
  }
  const double m_eff = topology == Topology::serial ? m : 1.0;
  return 2.0 * m_eff * m_eff * std::pow(alpha_sq, spec.p - 1) *
         theta_coefficient(spec).value;
}

NetworkConfig achieving_network(const GeneratorSpec& spec, int m,
                                double alpha_sq, Topology topology,
                                double phi_star) {
  const ThetaCoefficient theta = theta_coefficient(spec);
  const double coupling_phase =
      std::arg(theta_sum(spec, theta.theta)) - phi_star;
  const RVector w = uniform_weights(m);
  if (topology == Topology::parallel && spec.p == 2) {
    // spreading the amplitude over all modes is free for quadratic generators
    NetworkConfig net;
    net.topology = Topology::parallel;
    net.m = m;
    net.weights = w;
    net.unitaries.resize(1);
    const CVector f = CVector::Constant(m, std::polar(std::sqrt(alpha_sq / m),
                                                      theta.theta));
    CVector column = CVector::Constant(m, std::polar(std::sqrt(1.0 / m),
                                                     coupling_phase));
    net.unitaries[0] = unitary_with_first_column(column);
    net.alphas = net.unitaries[0].adjoint() * f;
    net.validate();
    return net;
  }
  return routed_network(topology, w, alpha_sq, theta.theta, coupling_phase);
}

PowerReport asymptotic_power(const QuantumState& state,
                             const GeneratorSpec& spec, int m, double alpha_sq,
                             Topology topology,
                             std::span<const double> extra_samples) {
  spec.validate();
  PowerReport report;
  report.p = spec.p;
  report.m = m;
  report.topology = topology;
  report.alpha_sq = alpha_sq;
  report.coefficient = power_coefficient(spec, m, alpha_sq, topology);
  const ForcePower fp = force_power(state);
  report.m_force = fp.value;
  report.phi_star = fp.phi;
  report.theta_star = theta_coefficient(spec).theta;
  report.asymptotic_power = report.coefficient * report.m_force;
  report.achieving_network =
      achieving_network(spec, m, alpha_sq, topology, fp.phi);

  std::vector<double> points(extra_samples.begin(), extra_samples.end());
  points.push_back(alpha_sq);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const MomentTable table = build_table(state, spec.p);
  const RVector w = uniform_weights(m);
  for (double a2 : points) {
    if (!(a2 > 0.0)) {
      throw DomainError("asymptotic_power: sample alpha_sq must be positive");
    }
    const NetworkConfig net = a2 == alpha_sq
                                  ? report.achieving_network
                                  : achieving_network(spec, m, a2, topology,
                                                      fp.phi);
    report.samples.emplace_back(
        a2, advantage(scheme_qfi_matrix(table, net, spec), w));
  }
  return report;
}

}  // namespace qmpower
