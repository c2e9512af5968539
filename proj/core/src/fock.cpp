#include "qmpower/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmpower/errors.hpp"
#include "qmpower/moments.hpp"

namespace qmpower {
namespace {

std::string leakage_message(const char* what, double leakage) {
  std::ostringstream os;
  os << what << ": truncation leakage " << leakage << " exceeds bound "
     << kLeakageBound << " (increase dim)";
  return os.str();
}

double top_two_pure(const CVector& c) {
  const auto n = c.size();
  double pop = 0.0;
  for (Eigen::Index i = std::max<Eigen::Index>(0, n - 2); i < n; ++i) {
    pop += std::norm(c(i));
  }
  return pop;
}

double top_two_mixed(const CMatrix& rho) {
  const auto n = rho.rows();
  double pop = 0.0;
  for (Eigen::Index i = std::max<Eigen::Index>(0, n - 2); i < n; ++i) {
    pop += rho(i, i).real();
  }
  return pop;
}

// Normalizes a truncated amplitude vector whose untruncated norm is one.
QuantumState finish_pure(const char* what, CVector c, double prior_leakage) {
  const double kept = c.squaredNorm();
  const double lost = std::max(0.0, 1.0 - kept);
  c /= std::sqrt(kept);
  const double leakage = prior_leakage + lost + top_two_pure(c);
  if (leakage > kLeakageBound) {
    throw LeakageError(leakage_message(what, leakage));
  }
  return QuantumState::pure(std::move(c), leakage);
}

QuantumState finish_mixed(const char* what, CMatrix rho, double prior_leakage) {
  const double kept = rho.trace().real();
  const double lost = std::max(0.0, 1.0 - kept);
  rho /= kept;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double leakage = prior_leakage + lost + top_two_mixed(rho);
  if (leakage > kLeakageBound) {
    throw LeakageError(leakage_message(what, leakage));
  }
  return QuantumState::mixed(std::move(rho), leakage);
}

void require_dim(int dim, int minimum, const char* what) {
  if (dim < minimum) {
    std::ostringstream os;
    os << what << ": dim must be >= " << minimum << ", got " << dim;
    throw DomainError(os.str());
  }
}

// Amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n < dim.
CVector coherent_amplitudes(Complex amplitude, int dim) {
  CVector c = CVector::Zero(dim);
  const double mod = std::abs(amplitude);
  if (mod == 0.0) {
    c(0) = 1.0;
    return c;
  }
  const double arg = std::arg(amplitude);
  const double log_mod = std::log(mod);
  for (int n = 0; n < dim; ++n) {
    const double log_mag =
        -0.5 * mod * mod + n * log_mod - 0.5 * std::lgamma(n + 1.0);
    c(n) = std::polar(std::exp(log_mag), n * arg);
  }
  return c;
}

// Hermitian generator i (beta a^dagger - beta^* a) on `dim` levels.
CMatrix displacement(Complex beta, int dim) {
  CMatrix a = ModeOperator::annihilation(dim).matrix();
  const Complex i(0.0, 1.0);
  CMatrix h = i * (beta * a.adjoint() - std::conj(beta) * a);
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  CVector phases = (-i * eig.eigenvalues().cast<Complex>()).array().exp();
  return eig.eigenvectors() * phases.asDiagonal() *
         eig.eigenvectors().adjoint();
}

}  // namespace

QuantumState::QuantumState(Kind kind, int dim, CVector amplitudes,
                           CMatrix density, double leakage)
    : kind_(kind),
      dim_(dim),
      amplitudes_(std::move(amplitudes)),
      density_(std::move(density)),
      leakage_(leakage) {}

QuantumState QuantumState::pure(CVector amplitudes, double leakage) {
  const auto dim = static_cast<int>(amplitudes.size());
  require_dim(dim, 1, "QuantumState::pure");
  const double norm_sq = amplitudes.squaredNorm();
  if (!std::isfinite(norm_sq) || std::abs(norm_sq - 1.0) > kPureNormTol) {
    std::ostringstream os;
    os << "QuantumState::pure: squared norm " << norm_sq << " is not 1";
    throw DomainError(os.str());
  }
  if (!(leakage >= 0.0)) throw DomainError("QuantumState: negative leakage");
  return QuantumState(Kind::pure, dim, std::move(amplitudes), CMatrix(),
                      leakage);
}

QuantumState QuantumState::mixed(CMatrix density, double leakage) {
  if (density.rows() != density.cols()) {
    throw DomainError("QuantumState::mixed: density matrix must be square");
  }
  const auto dim = static_cast<int>(density.rows());
  require_dim(dim, 1, "QuantumState::mixed");
  if ((density - density.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw DomainError("QuantumState::mixed: density matrix is not Hermitian");
  }
  const Complex tr = density.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "QuantumState::mixed: trace " << tr.real() << " is not 1";
    throw DomainError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(density, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kEigenvalueSlack) {
    throw DomainError("QuantumState::mixed: density matrix is not positive");
  }
  if (!(leakage >= 0.0)) throw DomainError("QuantumState: negative leakage");
  return QuantumState(Kind::mixed, dim, CVector(), std::move(density),
                      leakage);
}

const CVector& QuantumState::amplitudes() const {
  if (!is_pure()) {
    throw DomainError("QuantumState::amplitudes: state is mixed");
  }
  return amplitudes_;
}

CMatrix QuantumState::density() const {
  if (is_pure()) return amplitudes_ * amplitudes_.adjoint();
  return density_;
}

Complex QuantumState::element(int i, int j) const {
  if (is_pure()) return amplitudes_(i) * std::conj(amplitudes_(j));
  return density_(i, j);
}

double QuantumState::population(int n) const {
  if (n < 0 || n >= dim_) return 0.0;
  return is_pure() ? std::norm(amplitudes_(n)) : density_(n, n).real();
}

double QuantumState::energy() const {
  double e = 0.0;
  for (int n = 1; n < dim_; ++n) e += n * population(n);
  return e;
}

ModeOperator::ModeOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DomainError("ModeOperator: matrix must be square and non-empty");
  }
}

ModeOperator ModeOperator::annihilation(int dim) {
  require_dim(dim, 1, "ModeOperator::annihilation");
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return ModeOperator(std::move(a));
}

ModeOperator ModeOperator::creation(int dim) {
  return ModeOperator(annihilation(dim).matrix().adjoint());
}

ModeOperator ModeOperator::number(int dim) {
  require_dim(dim, 1, "ModeOperator::number");
  CMatrix n = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return ModeOperator(std::move(n));
}

ModeOperator ModeOperator::quadrature(double phi, int dim) {
  const CMatrix a = annihilation(dim).matrix();
  const Complex e = std::polar(1.0, -phi);
  CMatrix x = (e * a + std::conj(e) * a.adjoint()) / std::sqrt(2.0);
  return ModeOperator(std::move(x));
}

bool ModeOperator::is_hermitian(double tol) const {
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

double top_population(const QuantumState& state, int levels) {
  double pop = 0.0;
  for (int n = std::max(0, state.dim() - levels); n < state.dim(); ++n) {
    pop += state.population(n);
  }
  return pop;
}

QuantumState make_vacuum(int dim) {
  require_dim(dim, 1, "make_vacuum");
  CVector c = CVector::Zero(dim);
  c(0) = 1.0;
  return finish_pure("make_vacuum", std::move(c), 0.0);
}

QuantumState make_coherent(Complex amplitude, int dim) {
  require_dim(dim, 2, "make_coherent");
  return finish_pure("make_coherent", coherent_amplitudes(amplitude, dim),
                     0.0);
}

QuantumState make_squeezed_vacuum(double r, double squeeze_phase, int dim) {
  require_dim(dim, 2, "make_squeezed_vacuum");
  if (!std::isfinite(r)) throw DomainError("make_squeezed_vacuum: r not finite");
  CVector c = CVector::Zero(dim);
  const Complex ratio = std::polar(std::tanh(r), squeeze_phase);
  c(0) = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n + 2 < dim; ++n) {
    const double k = static_cast<double>(n);
    c(2 * n + 2) = c(2 * n) * ratio * std::sqrt((2 * k + 1) / (2 * k + 2));
  }
  return finish_pure("make_squeezed_vacuum", std::move(c), 0.0);
}

QuantumState make_fock(int n, int dim) {
  require_dim(dim, 1, "make_fock");
  if (n < 0 || n >= dim) {
    throw DomainError("make_fock: level outside the truncated basis");
  }
  CVector c = CVector::Zero(dim);
  c(n) = 1.0;
  return finish_pure("make_fock", std::move(c), 0.0);
}

QuantumState make_cat(Complex amplitude, int parity, int dim) {
  require_dim(dim, 2, "make_cat");
  if (parity != 1 && parity != -1) {
    throw DomainError("make_cat: parity must be +1 or -1");
  }
  const double norm_sq =
      2.0 * (1.0 + parity * std::exp(-2.0 * std::norm(amplitude)));
  if (norm_sq < 1e-12) {
    throw DomainError("make_cat: odd cat is not normalizable at this amplitude");
  }
  CVector c = coherent_amplitudes(amplitude, dim);
  for (int n = 0; n < dim; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    c(n) *= (1.0 + parity * sign) / std::sqrt(norm_sq);
  }
  return finish_pure("make_cat", std::move(c), 0.0);
}

QuantumState make_thermal(double mean_photons, int dim) {
  require_dim(dim, 2, "make_thermal");
  if (!(mean_photons >= 0.0)) {
    throw DomainError("make_thermal: mean photon number must be >= 0");
  }
  CMatrix rho = CMatrix::Zero(dim, dim);
  const double q = mean_photons / (1.0 + mean_photons);
  double weight = 1.0 / (1.0 + mean_photons);
  for (int n = 0; n < dim; ++n) {
    rho(n, n) = weight;
    weight *= q;
  }
  return finish_mixed("make_thermal", std::move(rho), 0.0);
}

QuantumState make_mixture(std::span<const WeightedState> components) {
  if (components.empty()) throw DomainError("make_mixture: no components");
  const int dim = components.front().state.dim();
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight > 0.0)) {
      throw DomainError("make_mixture: weights must be positive");
    }
    if (c.state.dim() != dim) {
      throw DomainError("make_mixture: dimension mismatch");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw DomainError("make_mixture: weights must sum to 1");
  }
  CMatrix rho = CMatrix::Zero(dim, dim);
  double leakage = 0.0;
  for (const auto& c : components) {
    rho += c.weight * c.state.density();
    leakage += c.weight * c.state.leakage();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return QuantumState::mixed(std::move(rho), leakage);
}

QuantumState resize(const QuantumState& state, int dim) {
  require_dim(dim, 1, "resize");
  const int keep = std::min(dim, state.dim());
  if (state.is_pure()) {
    CVector c = CVector::Zero(dim);
    c.head(keep) = state.amplitudes().head(keep);
    return finish_pure("resize", std::move(c), state.leakage());
  }
  CMatrix rho = CMatrix::Zero(dim, dim);
  rho.topLeftCorner(keep, keep) = state.density().topLeftCorner(keep, keep);
  return finish_mixed("resize", std::move(rho), state.leakage());
}

QuantumState apply_displacement(const QuantumState& state, Complex beta,
                                int out_dim) {
  if (out_dim == 0) out_dim = state.dim();
  require_dim(out_dim, 2, "apply_displacement");
  if (beta == Complex(0.0, 0.0)) return resize(state, out_dim);

  const int base = std::max(state.dim(), out_dim);
  const double b = std::abs(beta);
  const int work = base + static_cast<int>(std::ceil(
                              b * b + 2.0 * b * std::sqrt(double(base)) +
                              12.0 * b)) +
                   24;
  const CMatrix d = displacement(beta, work);

  if (state.is_pure()) {
    CVector c = CVector::Zero(work);
    c.head(state.dim()) = state.amplitudes();
    const CVector moved = d * c;
    return finish_pure("apply_displacement", moved.head(out_dim),
                       state.leakage());
  }
  CMatrix rho = CMatrix::Zero(work, work);
  rho.topLeftCorner(state.dim(), state.dim()) = state.density();
  const CMatrix moved = d * rho * d.adjoint();
  return finish_mixed("apply_displacement",
                      moved.topLeftCorner(out_dim, out_dim), state.leakage());
}

Complex expectation(const QuantumState& state, const ModeOperator& op) {
  if (op.dim() != state.dim()) {
    throw DomainError("expectation: operator and state dimensions differ");
  }
  if (state.is_pure()) {
    const CVector& c = state.amplitudes();
    return c.dot(op.matrix() * c);
  }
  return (state.density() * op.matrix()).trace();
}

double normally_ordered_variance(const QuantumState& state, double phi) {
  const Complex a1 = normal_moment(state, 0, 1);
  const Complex a2 = normal_moment(state, 0, 2);
  const double n = normal_moment(state, 1, 1).real();
  const Complex spread = a2 - a1 * a1;
  return n - std::norm(a1) + (spread * std::polar(1.0, -2.0 * phi)).real();
}

QuadratureVariance max_normally_ordered_variance(const QuantumState& state) {
  const Complex a1 = normal_moment(state, 0, 1);
  const Complex a2 = normal_moment(state, 0, 2);
  const double n = normal_moment(state, 1, 1).real();
  const Complex spread = a2 - a1 * a1;
  double phi = 0.0;
  if (std::abs(spread) > 0.0) {
    phi = 0.5 * std::arg(spread);
    if (phi < 0.0) phi += kPi;
    if (phi >= kPi) phi -= kPi;
  }
  return {n - std::norm(a1) + std::abs(spread), phi};
}

}  // namespace qmpower
