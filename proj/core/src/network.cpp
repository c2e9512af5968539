#include "qmpower/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qmpower/errors.hpp"

namespace qmpower {

std::string_view to_string(Topology topology) {
  return topology == Topology::serial ? "serial" : "parallel";
}

Topology parse_topology(std::string_view text) {
  if (text == "serial") return Topology::serial;
  if (text == "parallel") return Topology::parallel;
  throw DomainError("unknown topology '" + std::string(text) +
                    "' (expected serial|parallel)");
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix eye = CMatrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - eye).cwiseAbs().maxCoeff() <= tol;
}

void validate_weights(const RVector& w) {
  if (w.size() == 0) throw DomainError("weights: empty weight vector");
  if (!w.allFinite()) throw DomainError("weights: non-finite entry");
  const double l1 = w.cwiseAbs().sum();
  if (std::abs(l1 - 1.0) > kWeightSumTol) {
    std::ostringstream os;
    os << "weights: sum |w_j| = " << l1 << ", expected 1";
    throw DomainError(os.str());
  }
}

RVector uniform_weights(int m) {
  if (m < 1) throw DomainError("uniform_weights: m must be >= 1");
  return RVector::Constant(m, 1.0 / m);
}

double weights_sq(const RVector& w) { return w.squaredNorm(); }

double weights_max(const RVector& w) { return w.cwiseAbs().maxCoeff(); }

void NetworkConfig::validate() const {
  if (m < 1) throw DomainError("NetworkConfig: m must be >= 1");
  const std::size_t expected = topology == Topology::serial ? m : 1;
  if (unitaries.size() != expected) {
    std::ostringstream os;
    os << "NetworkConfig: " << to_string(topology) << " topology needs "
       << expected << " unitaries, got " << unitaries.size();
    throw DomainError(os.str());
  }
  for (const auto& u : unitaries) {
    if (u.rows() != m || u.cols() != m) {
      throw DomainError("NetworkConfig: unitary has wrong shape");
    }
    if (!is_unitary(u)) {
      throw DomainError("NetworkConfig: matrix is not unitary within 1e-10");
    }
  }
  if (alphas.size() != m) {
    throw DomainError("NetworkConfig: need one coherent amplitude per mode");
  }
  if (!alphas.allFinite()) {
    throw DomainError("NetworkConfig: non-finite coherent amplitude");
  }
  if (weights.size() != m) {
    throw DomainError("NetworkConfig: need one weight per parameter");
  }
  validate_weights(weights);
}

const CMatrix& NetworkConfig::unitary_for(int k) const {
  return topology == Topology::serial ? unitaries.at(k) : unitaries.at(0);
}

CVector NetworkConfig::mode_row(int k) const {
  return unitary_for(k).row(k).transpose();
}

Complex NetworkConfig::coupling(int k) const { return unitary_for(k)(k, 0); }

Complex NetworkConfig::amplitude(int k) const {
  return (unitary_for(k).row(k) * alphas)(0);
}

Complex NetworkConfig::commutator(int j, int k) const {
  return (unitary_for(j).row(j) * unitary_for(k).row(k).adjoint())(0);
}

double NetworkConfig::alpha_sq() const { return alphas.squaredNorm(); }

Complex compute_z(const NetworkConfig& network) {
  Complex z = 0.0;
  for (int j = 0; j < network.m; ++j) {
    z += network.weights(j) * std::conj(network.coupling(j)) *
         network.amplitude(j);
  }
  return z;
}

Complex compute_z(const NetworkConfig& network, const GeneratorSpec& spec) {
  spec.validate();
  const int p = spec.p;
  Complex z = 0.0;
  for (int u = 0; u < network.m; ++u) {
    const Complex f = network.amplitude(u);
    Complex inner = 0.0;
    for (int j = 0; j < p; ++j) {
      Complex term = spec.kappas[j] * static_cast<double>(p - j);
      for (int t = 0; t < p - j - 1; ++t) term *= std::conj(f);
      for (int t = 0; t < j; ++t) term *= f;
      inner += term;
    }
    z += network.weights(u) * std::conj(network.coupling(u)) * inner;
  }
  return z;
}

double serial_bound(const RVector& w, double alpha_sq) {
  const double wmax = weights_max(w);
  const double w2 = weights_sq(w);
  return alpha_sq * w2 * w2 / (wmax * wmax);
}

double parallel_bound(const RVector& w, double alpha_sq) {
  const double w2 = weights_sq(w);
  return alpha_sq * w2 * w2;
}

double topology_bound(Topology topology, const RVector& w, double alpha_sq) {
  return topology == Topology::serial ? serial_bound(w, alpha_sq)
                                      : parallel_bound(w, alpha_sq);
}

CMatrix unitary_with_first_column(const CVector& v) {
  const auto n = v.size();
  if (n == 0 || std::abs(v.norm() - 1.0) > 1e-12) {
    throw DomainError("unitary_with_first_column: need a unit vector");
  }
  const Complex phase =
      std::abs(v(0)) > 0.0 ? v(0) / std::abs(v(0)) : Complex(1.0, 0.0);
  CVector diff = v;
  diff(0) -= phase;
  CMatrix reflector = CMatrix::Identity(n, n);
  const double len = diff.norm();
  if (len > 1e-14) {
    const CVector u = diff / len;
    reflector -= 2.0 * u * u.adjoint();
  }
  // reflector * e_0 = conj(phase) * v
  reflector.col(0) *= phase;
  return reflector;
}

CMatrix unitary_with_row(int k, const CVector& r) {
  CMatrix u = unitary_with_first_column(r.conjugate()).adjoint();
  if (k != 0) u.row(0).swap(u.row(k));
  return u;
}

namespace {

void require_budget(double alpha_sq) {
  if (!(alpha_sq > 0.0) || !std::isfinite(alpha_sq)) {
    throw DomainError("network: alpha_sq must be positive");
  }
}

// Serial network with b_k = e^{i c} (rho_k a_0 + sqrt(1 - rho_k^2) a_{k'}) and
// all classical energy in a_0.
NetworkConfig serial_from_couplings(const RVector& weights,
                                    const RVector& rho, double alpha_sq,
                                    Complex displacement,
                                    double coupling_phase) {
  const auto m = static_cast<int>(weights.size());
  NetworkConfig net;
  net.topology = Topology::serial;
  net.m = m;
  net.weights = weights;
  net.alphas = CVector::Zero(m);
  net.alphas(0) = displacement;
  const Complex c = std::polar(1.0, coupling_phase);
  for (int k = 0; k < m; ++k) {
    CVector row = CVector::Zero(m);
    row(0) = c * rho(k);
    const double rest = std::sqrt(std::max(0.0, 1.0 - rho(k) * rho(k)));
    if (rest > 0.0) row(k == 0 ? 1 : k) = c * rest;
    net.unitaries.push_back(unitary_with_row(k, row));
  }
  (void)alpha_sq;
  return net;
}

NetworkConfig parallel_spread(const RVector& w, double alpha_sq,
                              double amplitude_phase, double coupling_phase) {
  const auto m = static_cast<int>(w.size());
  CVector column(m);
  CVector f(m);
  const double amp = std::sqrt(alpha_sq);
  for (int j = 0; j < m; ++j) {
    const double mag = std::sqrt(std::abs(w(j)));
    column(j) = std::polar(mag, coupling_phase);
    const double sign = w(j) < 0.0 ? -1.0 : 1.0;
    f(j) = std::polar(sign * mag * amp, amplitude_phase);
  }
  NetworkConfig net;
  net.topology = Topology::parallel;
  net.m = m;
  net.weights = w;
  net.unitaries.push_back(unitary_with_first_column(column));
  net.alphas = net.unitaries.front().adjoint() * f;
  return net;
}

}  // namespace

NetworkConfig optimal_serial_network(const RVector& w, double alpha_sq,
                                     double phi_target) {
  validate_weights(w);
  require_budget(alpha_sq);
  const bool nonneg = (w.array() >= 0.0).all();
  const bool nonpos = (w.array() <= 0.0).all();
  const double wmax = weights_max(w);
  const RVector rho = (w.cwiseAbs() / wmax).cwiseSqrt();

  if (nonneg || nonpos) {
    const double sign = nonneg ? 1.0 : -1.0;
    const Complex disp = std::polar(sign * std::sqrt(alpha_sq), phi_target);
    NetworkConfig net = serial_from_couplings(w, rho, alpha_sq, disp, 0.0);
    net.validate();
    return net;
  }

  // Mixed signs: no closed form; ascend from the |w| construction.
  const Complex disp = std::polar(std::sqrt(alpha_sq), phi_target);
  NetworkConfig seed = serial_from_couplings(w, rho, alpha_sq, disp, 0.0);
  const double bound = serial_bound(w, alpha_sq);
  OptimizationResult result = numeric_optimize_z(seed, phi_target);
  if (result.objective < bound * (1.0 - 1e-8)) {
    std::ostringstream os;
    os << "optimal_serial_network: best |z|^2 = " << result.objective
       << " below bound " << bound;
    throw CertificationFailure(os.str(), result.objective, bound);
  }
  return result.network;
}

NetworkConfig optimal_parallel_network(const RVector& w, double alpha_sq,
                                       double phi_target) {
  validate_weights(w);
  require_budget(alpha_sq);
  NetworkConfig net = parallel_spread(w, alpha_sq, phi_target, 0.0);
  net.validate();
  return net;
}

NetworkConfig routed_network(Topology topology, const RVector& w,
                             double alpha_sq, double amplitude_phase,
                             double coupling_phase) {
  validate_weights(w);
  require_budget(alpha_sq);
  const auto m = static_cast<int>(w.size());
  const Complex disp =
      std::polar(std::sqrt(alpha_sq), amplitude_phase - coupling_phase);
  NetworkConfig net;
  if (topology == Topology::serial) {
    net = serial_from_couplings(w, RVector::Ones(m), alpha_sq, disp,
                                coupling_phase);
  } else {
    net.topology = Topology::parallel;
    net.m = m;
    net.weights = w;
    CMatrix u = CMatrix::Identity(m, m);
    u(0, 0) = std::polar(1.0, coupling_phase);
    net.unitaries.push_back(std::move(u));
    net.alphas = CVector::Zero(m);
    net.alphas(0) = disp;
  }
  net.validate();
  return net;
}

namespace {

CMatrix haar_unitary(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < m; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

}  // namespace

NetworkConfig sample_random_network(int m, Topology topology, double alpha_sq,
                                    const RVector& w, std::uint64_t seed) {
  if (m < 1) throw DomainError("sample_random_network: m must be >= 1");
  if (w.size() != m) {
    throw DomainError("sample_random_network: weight vector size != m");
  }
  validate_weights(w);
  require_budget(alpha_sq);
  std::mt19937_64 rng(seed);
  NetworkConfig net;
  net.topology = topology;
  net.m = m;
  net.weights = w;
  net.seed = seed;
  const int count = topology == Topology::serial ? m : 1;
  for (int k = 0; k < count; ++k) net.unitaries.push_back(haar_unitary(m, rng));
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector a(m);
  for (int j = 0; j < m; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    a(j) = Complex(re, im);
  }
  net.alphas = a / a.norm() * std::sqrt(alpha_sq);
  return net;
}

}  // namespace qmpower
