#include "qmpower/qfi.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qmpower/errors.hpp"

namespace qmpower {
namespace {

using Poly = std::vector<Complex>;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// (x y + f)^n as coefficients of y^r.
Poly binomial_poly(Complex x, Complex f, int n) {
  Poly out(static_cast<std::size_t>(n + 1));
  Complex xp = 1.0;
  for (int r = 0; r <= n; ++r) {
    Complex fp = 1.0;
    for (int t = 0; t < n - r; ++t) fp *= f;
    out[r] = binomial(n, r) * xp * fp;
    xp *= x;
  }
  return out;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Complex(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Single-mode picture of b_u: coupling x to a_0 plus the c-number f.
struct Mode {
  Complex x;
  Complex f;
};

// <B_u^dag^s B_v^dag^t B_u^j B_v^k>, normally ordered, in terms of a_0
// moments. Vacuum modes drop out of normally ordered products.
Complex normal_product(const MomentTable& table, const Mode& u, const Mode& v,
                       int s, int t, int j, int k) {
  const Poly create = multiply(binomial_poly(std::conj(u.x), std::conj(u.f), s),
                               binomial_poly(std::conj(v.x), std::conj(v.f), t));
  const Poly annihilate =
      multiply(binomial_poly(u.x, u.f, j), binomial_poly(v.x, v.f, k));
  Complex sum = 0.0;
  for (std::size_t r = 0; r < create.size(); ++r) {
    if (create[r] == Complex(0.0, 0.0)) continue;
    for (std::size_t q = 0; q < annihilate.size(); ++q) {
      if (annihilate[q] == Complex(0.0, 0.0)) continue;
      sum += create[r] * annihilate[q] *
             table(static_cast<int>(r), static_cast<int>(q));
    }
  }
  return sum;
}

Complex generator_mean(const MomentTable& table, const Mode& u,
                       const GeneratorSpec& spec) {
  const Mode none{0.0, 0.0};
  Complex mean = 0.0;
  for (int j = 0; j <= spec.p; ++j) {
    if (spec.kappas[j] == Complex(0.0, 0.0)) continue;
    mean += spec.kappas[j] *
            normal_product(table, u, none, spec.p - j, 0, j, 0);
  }
  return mean;
}

}  // namespace

double pure_qfi(const QuantumState& state, const ModeOperator& generator) {
  if (!state.is_pure()) throw DomainError("pure_qfi: state is mixed");
  if (!generator.is_hermitian()) {
    throw DomainError("pure_qfi: generator is not Hermitian");
  }
  if (generator.dim() != state.dim()) {
    throw DomainError("pure_qfi: generator and state dims differ");
  }
  const CVector& psi = state.amplitudes();
  const CVector g = generator.matrix() * psi;
  const double mean = psi.dot(g).real();
  const double second = g.squaredNorm();
  return 4.0 * (second - mean * mean);
}

double sld_qfi(const QuantumState& state, const ModeOperator& generator) {
  if (!generator.is_hermitian()) {
    throw DomainError("sld_qfi: generator is not Hermitian");
  }
  if (generator.dim() != state.dim()) {
    throw DomainError("sld_qfi: generator and state dims differ");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(state.density());
  const RVector& l = eig.eigenvalues();
  const CMatrix g = eig.eigenvectors().adjoint() * generator.matrix() *
                    eig.eigenvectors();
  double f = 0.0;
  for (int i = 0; i < l.size(); ++i) {
    for (int j = 0; j < l.size(); ++j) {
      const double s = l(i) + l(j);
      if (s <= 1e-12) continue;
      const double d = l(i) - l(j);
      f += d * d / s * std::norm(g(i, j));
    }
  }
  return 2.0 * f;
}

QfiMatrix scheme_qfi_matrix(const MomentTable& table,
                            const NetworkConfig& network,
                            const GeneratorSpec& spec) {
  network.validate();
  spec.validate();
  const int p = spec.p;
  if (table.max_order() < p) {
    std::ostringstream os;
    os << "scheme_qfi_matrix: moment table of order " << table.max_order()
       << " cannot carry a generator of order " << p;
    throw OrderError(os.str());
  }
  const int m = network.m;
  std::vector<Mode> modes;
  std::vector<Complex> means;
  for (int u = 0; u < m; ++u) {
    modes.push_back({network.coupling(u), network.amplitude(u)});
    means.push_back(generator_mean(table, modes.back(), spec));
  }

  QfiMatrix out;
  out.values = RMatrix::Zero(m, m);
  out.normal_ordered = RMatrix::Zero(m, m);
  for (int u = 0; u < m; ++u) {
    for (int v = u; v < m; ++v) {
      const Complex c = network.commutator(u, v);
      Complex full = 0.0;
      Complex normal = 0.0;
      for (int j = 0; j <= p; ++j) {
        if (spec.kappas[j] == Complex(0.0, 0.0)) continue;
        const int s = p - j;
        for (int k = 0; k <= p; ++k) {
          if (spec.kappas[k] == Complex(0.0, 0.0)) continue;
          const int t = p - k;
          const Complex kk = spec.kappas[j] * spec.kappas[k];
          // B_u^j B_v^dag^t = sum_l C(j,l) C(t,l) l! c^l B_v^dag^{t-l} B_u^{j-l}
          Complex cl = 1.0;
          for (int l = 0; l <= std::min(j, t); ++l) {
            const Complex term =
                binomial(j, l) * binomial(t, l) * factorial(l) * cl *
                normal_product(table, modes[u], modes[v], s, t - l, j - l, k);
            full += kk * term;
            if (l == 0) normal += kk * term;
            cl *= c;
          }
        }
      }
      const Complex mm = means[u] * means[v];
      out.values(u, v) = out.values(v, u) = 4.0 * (full - mm).real();
      out.normal_ordered(u, v) = out.normal_ordered(v, u) =
          4.0 * (normal - mm).real();
    }
  }
  out.classical_part = out.values - out.normal_ordered;
  return out;
}

QfiMatrix scheme_qfi_matrix(const QuantumState& state,
                            const NetworkConfig& network,
                            const GeneratorSpec& spec) {
  spec.validate();
  return scheme_qfi_matrix(build_table(state, spec.p), network, spec);
}

QfiMatrix phase_qfi_matrix(const QuantumState& state,
                           const NetworkConfig& network) {
  return scheme_qfi_matrix(state, network, GeneratorSpec::phase());
}

WeightedQfi weighted_qfi(const RMatrix& fisher, const RVector& w) {
  if (fisher.rows() != w.size() || fisher.cols() != w.size()) {
    throw DomainError("weighted_qfi: weight vector does not match matrix");
  }
  const double value = w.dot(fisher * w);
  const double w2 = w.squaredNorm();
  if (value <= 0.0) {
    return {value, std::numeric_limits<double>::infinity(), false};
  }
  return {value, w2 * w2 / value, true};
}

WeightedQfi weighted_qfi(const QfiMatrix& fisher, const RVector& w) {
  return weighted_qfi(fisher.values, w);
}

double advantage(const QfiMatrix& fisher, const RVector& w) {
  if (fisher.normal_ordered.rows() != w.size()) {
    throw DomainError("advantage: weight vector does not match matrix");
  }
  const double w2 = w.squaredNorm();
  return w.dot(fisher.normal_ordered * w) / (w2 * w2);
}

double advantage(const QuantumState& state, const NetworkConfig& network,
                 const RVector& w, const GeneratorSpec& spec) {
  return advantage(scheme_qfi_matrix(state, network, spec), w);
}

Complex theta_sum(const GeneratorSpec& spec, double theta) {
  spec.validate();
  Complex s = 0.0;
  for (int j = 0; j < spec.p; ++j) {
    s += spec.kappas[j] * static_cast<double>(spec.p - j) *
         std::polar(1.0, (2 * j + 1 - spec.p) * theta);
  }
  return s;
}

ThetaCoefficient theta_coefficient(const GeneratorSpec& spec) {
  spec.validate();
  constexpr int kGrid = 1024;
  const double step = 2.0 * kPi / kGrid;
  auto f = [&](double t) { return std::norm(theta_sum(spec, t)); };
  double best_t = 0.0;
  double best = f(0.0);
  // ties within rounding keep the smaller angle
  auto better = [](double v, double ref) {
    return v > ref + 1e-14 * std::max(1.0, std::abs(ref));
  };
  for (int g = 1; g < kGrid; ++g) {
    const double v = f(g * step);
    if (better(v, best)) {
      best = v;
      best_t = g * step;
    }
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_t - step;
  double hi = best_t + step;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-12) {
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
  const double t_ref = 0.5 * (lo + hi);
  const double v_ref = f(t_ref);
  if (better(v_ref, best)) {
    best = v_ref;
    best_t = std::fmod(t_ref + 2.0 * kPi, 2.0 * kPi);
  }
  return {best, best_t};
}

}  // namespace qmpower
