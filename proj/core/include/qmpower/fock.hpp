#pragma once

// Truncated Fock-space states and single-mode operators.
//
// A QuantumState lives on the basis |0>, ..., |dim-1>. Every constructor
// records the truncation leakage it incurred (norm lost to the truncated tail
// plus the population of the top two retained levels) and refuses to build a
// state whose leakage exceeds kLeakageBound.

#include <span>
#include <vector>

#include "qmpower/types.hpp"

namespace qmpower {

class QuantumState {
 public:
  enum class Kind { pure, mixed };

  // Validates normalization (and Hermiticity/positivity for mixed input).
  static QuantumState pure(CVector amplitudes, double leakage = 0.0);
  static QuantumState mixed(CMatrix density, double leakage = 0.0);

  int dim() const noexcept { return dim_; }
  Kind kind() const noexcept { return kind_; }
  bool is_pure() const noexcept { return kind_ == Kind::pure; }
  double leakage() const noexcept { return leakage_; }

  // Pure states only.
  const CVector& amplitudes() const;
  // Density matrix; pure states are promoted to |psi><psi|.
  CMatrix density() const;
  // rho_{ij} without materializing the full matrix for pure states.
  Complex element(int i, int j) const;

  // Mean photon number <a^dagger a>.
  double energy() const;
  // Population of Fock level n.
  double population(int n) const;

 private:
  QuantumState(Kind kind, int dim, CVector amplitudes, CMatrix density,
               double leakage);

  Kind kind_;
  int dim_;
  CVector amplitudes_;
  CMatrix density_;
  double leakage_;
};

// Dense single-mode operator on a truncated basis.
class ModeOperator {
 public:
  explicit ModeOperator(CMatrix matrix);

  static ModeOperator annihilation(int dim);
  static ModeOperator creation(int dim);
  static ModeOperator number(int dim);
  // X_phi = (a e^{-i phi} + a^dagger e^{i phi}) / sqrt(2)
  static ModeOperator quadrature(double phi, int dim);

  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  bool is_hermitian(double tol = kHermitianTol) const;

 private:
  CMatrix matrix_;
};

struct WeightedState {
  double weight;
  QuantumState state;
};

// Population in the top `levels` Fock levels.
double top_population(const QuantumState& state, int levels = 2);

QuantumState make_vacuum(int dim);
QuantumState make_coherent(Complex amplitude, int dim);
// Two-photon expansion with <a^2> = e^{i squeeze_phase} sinh r cosh r, so the
// anti-squeezed quadrature is X_{squeeze_phase/2}.
QuantumState make_squeezed_vacuum(double r, double squeeze_phase, int dim);
QuantumState make_fock(int n, int dim);
// (|alpha> + parity |-alpha>) normalized with the exact overlap term.
QuantumState make_cat(Complex amplitude, int parity, int dim);
QuantumState make_thermal(double mean_photons, int dim);
QuantumState make_mixture(std::span<const WeightedState> components);

// D(beta) state D(beta)^dagger, computed on a padded basis and truncated to
// `out_dim` (defaults to the input dimension).
QuantumState apply_displacement(const QuantumState& state, Complex beta,
                                int out_dim = 0);

// Re-embeds a state into a different truncation (zero padding or cutting).
QuantumState resize(const QuantumState& state, int dim);

Complex expectation(const QuantumState& state, const ModeOperator& op);

struct QuadratureVariance {
  double value;  // max_phi :V(X_phi):
  double phi;    // maximizing phi in [0, pi)
};

// :V(X_phi): = V(X_phi) - 1/2 evaluated from first and second moments.
double normally_ordered_variance(const QuantumState& state, double phi);

// Closed form: <n> - |<a>|^2 + |<a^2> - <a>^2|, phi* = arg(<a^2>-<a>^2)/2.
QuadratureVariance max_normally_ordered_variance(const QuantumState& state);

}  // namespace qmpower
