#include "qmpower/oracle.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qmpower/errors.hpp"

namespace qmpower {
namespace {

long ipow(int base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<int> digits(long index, int m, int d) {
  std::vector<int> n(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    n[i] = static_cast<int>(index % d);
    index /= d;
  }
  return n;
}

// H = i log U, so that exp(-i H) = U.
CMatrix mode_hamiltonian(const CMatrix& u) {
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& q = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  CMatrix d = CMatrix::Zero(u.rows(), u.cols());
  for (int i = 0; i < u.rows(); ++i) d(i, i) = -std::arg(t(i, i));
  CMatrix h = q * d * q.adjoint();
  return 0.5 * (h + h.adjoint());
}

// Fock-basis populations of each input mode, padded well beyond the bulk.
std::vector<std::vector<double>> mode_populations(const QuantumState& state,
                                                  const NetworkConfig& net) {
  std::vector<std::vector<double>> pops;
  const Complex a0 = net.alphas(0);
  const double b = std::abs(a0);
  const int pad = static_cast<int>(
      std::ceil(b * b + 2.0 * b * std::sqrt(state.dim()) + 12.0 * b)) + 24;
  const QuantumState shifted =
      apply_displacement(state, a0, state.dim() + pad);
  std::vector<double> p0(static_cast<std::size_t>(shifted.dim()));
  for (int n = 0; n < shifted.dim(); ++n) p0[n] = shifted.population(n);
  pops.push_back(std::move(p0));
  for (int l = 1; l < net.m; ++l) {
    const double mean = std::norm(net.alphas(l));
    const double a = std::sqrt(mean);
    const int len = static_cast<int>(std::ceil(mean + 14.0 * a)) + 40;
    std::vector<double> p(static_cast<std::size_t>(len), 0.0);
    for (int n = 0; n < len; ++n) {
      if (mean == 0.0) {
        p[n] = n == 0 ? 1.0 : 0.0;
        continue;
      }
      p[n] = std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
    }
    pops.push_back(std::move(p));
  }
  return pops;
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

void require_supported(const QuantumState& state, const NetworkConfig& net) {
  net.validate();
  if (!state.is_pure()) {
    throw DomainError("oracle: only pure input states are simulated");
  }
  if (net.m > kMaxOracleModes) {
    std::ostringstream os;
    os << "oracle: m = " << net.m << " exceeds the limit of "
       << kMaxOracleModes << " modes";
    throw DomainError(os.str());
  }
}

// Population with total photon number above `limit`.
double total_tail(const CVector& psi, int m, int d, int limit) {
  double tail = 0.0;
  for (long idx = 0; idx < psi.size(); ++idx) {
    int total = 0;
    long rest = idx;
    for (int i = 0; i < m; ++i) {
      total += static_cast<int>(rest % d);
      rest /= d;
    }
    if (total > limit) tail += std::norm(psi(idx));
  }
  return tail;
}

}  // namespace

MultimodeUnitary::MultimodeUnitary(const CMatrix& mode_unitary,
                                   int per_mode_dim) {
  const int m = static_cast<int>(mode_unitary.rows());
  const int d = per_mode_dim;
  size_ = ipow(d, m);
  const CMatrix h = mode_hamiltonian(mode_unitary);

  // Only sectors that fit completely inside the cutoff are transformed;
  // the rest is left alone and must carry negligible population.
  std::map<int, std::vector<int>> by_total;
  for (long idx = 0; idx < size_; ++idx) {
    const auto n = digits(idx, m, d);
    int total = 0;
    for (int v : n) total += v;
    if (total <= d - 1) by_total[total].push_back(static_cast<int>(idx));
  }
  for (auto& [total, indices] : by_total) {
    const auto dim = static_cast<int>(indices.size());
    std::map<int, int> position;
    for (int i = 0; i < dim; ++i) position[indices[i]] = i;
    CMatrix block = CMatrix::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
      const auto n = digits(indices[col], m, d);
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
          if (h(j, k) == Complex(0.0, 0.0)) continue;
          if (j == k) {
            block(col, col) += h(j, j) * static_cast<double>(n[j]);
            continue;
          }
          if (n[k] == 0) continue;
          auto target = n;
          target[k] -= 1;
          target[j] += 1;
          long idx = 0;
          for (int i = m - 1; i >= 0; --i) idx = idx * d + target[i];
          const double amp = std::sqrt(static_cast<double>(n[k]) * target[j]);
          block(position.at(static_cast<int>(idx)), col) += h(j, k) * amp;
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(block);
    sectors_.push_back({std::move(indices), eig.eigenvectors(),
                        eig.eigenvalues()});
  }
}

CVector MultimodeUnitary::transform(const CVector& state, bool adjoint) const {
  if (state.size() != size_) {
    throw DomainError("MultimodeUnitary: state has the wrong dimension");
  }
  CVector out = state;
  const double sign = adjoint ? 1.0 : -1.0;
  for (const Sector& sec : sectors_) {
    const auto n = static_cast<int>(sec.indices.size());
    CVector x(n);
    for (int i = 0; i < n; ++i) x(i) = state(sec.indices[i]);
    CVector y = sec.vectors.adjoint() * x;
    for (int i = 0; i < n; ++i) y(i) *= std::polar(1.0, sign * sec.energies(i));
    x = sec.vectors * y;
    for (int i = 0; i < n; ++i) out(sec.indices[i]) = x(i);
  }
  return out;
}

CVector MultimodeUnitary::apply(const CVector& state) const {
  return transform(state, false);
}

CVector MultimodeUnitary::apply_adjoint(const CVector& state) const {
  return transform(state, true);
}

const MultimodeUnitary& MultimodeState::stage_for(int k) const {
  return stages.size() == 1 ? *stages.front() : *stages.at(k);
}

CVector MultimodeState::output(int k) const {
  return stage_for(k).apply(amplitudes);
}

int choose_per_mode_dim(const QuantumState& state, const NetworkConfig& network,
                        int generator_order) {
  require_supported(state, network);
  const auto pops = mode_populations(state, network);
  std::vector<double> total = pops.front();
  for (std::size_t l = 1; l < pops.size(); ++l) total = convolve(total, pops[l]);
  double mass = 0.0;
  for (double v : total) mass += v;
  const double missing = std::max(0.0, 1.0 - mass);

  for (int d = std::max(12, generator_order + 2);; ++d) {
    if (ipow(d, network.m) > kMaxOracleSpace) {
      std::ostringstream os;
      os << "oracle: input needs a per-mode cutoff above " << d - 1
         << " which exceeds the simulation size limit";
      throw DomainError(os.str());
    }
    const int limit = d - 1 - generator_order;
    double tail = missing;
    for (std::size_t n = static_cast<std::size_t>(limit) + 1; n < total.size();
         ++n) {
      tail += total[n];
    }
    if (tail < 1e-14) return d;
  }
}

MultimodeState simulate_scheme(const QuantumState& state,
                               const NetworkConfig& network, int per_mode_dim,
                               int generator_order) {
  require_supported(state, network);
  const int m = network.m;
  const int d = per_mode_dim;
  if (d < generator_order + 2) {
    throw DomainError("simulate_scheme: per-mode cutoff too small");
  }
  if (ipow(d, m) > kMaxOracleSpace) {
    throw DomainError("simulate_scheme: simulation space too large");
  }

  CVector psi = apply_displacement(state, network.alphas(0), d).amplitudes();
  for (int l = 1; l < m; ++l) {
    const CVector c = make_coherent(network.alphas(l), d).amplitudes();
    CVector next(psi.size() * d);
    // mode l is the slowest digit so far
    for (int n = 0; n < d; ++n) {
      next.segment(n * psi.size(), psi.size()) = c(n) * psi;
    }
    psi = std::move(next);
  }
  const double tail = total_tail(psi, m, d, d - 1 - generator_order);
  if (tail > kLeakageBound) {
    std::ostringstream os;
    os << "simulate_scheme: population " << tail
       << " above the usable photon number for cutoff " << d;
    throw LeakageError(os.str());
  }

  MultimodeState multi;
  multi.m = m;
  multi.per_mode_dim = d;
  multi.amplitudes = std::move(psi);
  for (const CMatrix& u : network.unitaries) {
    multi.stages.push_back(std::make_shared<const MultimodeUnitary>(u, d));
  }
  return multi;
}

CVector apply_on_mode(const CVector& state, const CMatrix& op, int mode, int m,
                      int per_mode_dim) {
  const int d = per_mode_dim;
  if (state.size() != ipow(d, m) || op.rows() != d || op.cols() != d ||
      mode < 0 || mode >= m) {
    throw DomainError("apply_on_mode: shape mismatch");
  }
  const long stride = ipow(d, mode);
  const long block = stride * d;
  CVector out = CVector::Zero(state.size());
  CVector x(d);
  for (long outer = 0; outer < state.size(); outer += block) {
    for (long inner = 0; inner < stride; ++inner) {
      const long base = outer + inner;
      for (int n = 0; n < d; ++n) x(n) = state(base + n * stride);
      const CVector y = op * x;
      for (int n = 0; n < d; ++n) out(base + n * stride) = y(n);
    }
  }
  return out;
}

CMatrix reduced_density(const CVector& state, int mode, int m,
                        int per_mode_dim) {
  const int d = per_mode_dim;
  if (state.size() != ipow(d, m) || mode < 0 || mode >= m) {
    throw DomainError("reduced_density: shape mismatch");
  }
  const long stride = ipow(d, mode);
  const long block = stride * d;
  CMatrix rho = CMatrix::Zero(d, d);
  CVector x(d);
  for (long outer = 0; outer < state.size(); outer += block) {
    for (long inner = 0; inner < stride; ++inner) {
      const long base = outer + inner;
      for (int n = 0; n < d; ++n) x(n) = state(base + n * stride);
      rho += x * x.adjoint();
    }
  }
  return rho;
}

QfiMatrix brute_qfi_matrix(const MultimodeState& multi,
                           const GeneratorSpec& spec) {
  const int m = multi.m;
  const CMatrix k = generator_matrix(spec, multi.per_mode_dim).matrix();
  std::vector<CVector> phis;
  std::vector<double> means;
  for (int j = 0; j < m; ++j) {
    const MultimodeUnitary& stage = multi.stage_for(j);
    CVector out = stage.apply(multi.amplitudes);
    out = apply_on_mode(out, k, j, m, multi.per_mode_dim);
    phis.push_back(stage.apply_adjoint(out));
    means.push_back(multi.amplitudes.dot(phis.back()).real());
  }
  QfiMatrix fisher;
  fisher.values = RMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double f =
          4.0 * (phis[i].dot(phis[j]).real() - means[i] * means[j]);
      fisher.values(i, j) = fisher.values(j, i) = f;
    }
  }
  return fisher;
}

}  // namespace qmpower
