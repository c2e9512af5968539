#pragma once

// Brute-force multimode simulator on the truncated tensor-product Fock space.
// Independent of the moment expansion: the network is applied as the exact
// Fock-space unitary exp(-i sum_jk H_jk a_j^dagger a_k) with H = i log U, and
// QFI matrices are covariances of the full-space generators.

#include <memory>
#include <vector>

#include "qmpower/fock.hpp"
#include "qmpower/generator.hpp"
#include "qmpower/network.hpp"
#include "qmpower/qfi.hpp"
#include "qmpower/types.hpp"

namespace qmpower {

inline constexpr int kMaxOracleModes = 3;
inline constexpr long kMaxOracleSpace = 1L << 16;

// Fock-space image of a mode unitary. Block diagonal in total photon number;
// each block is exponentiated through its Hermitian eigendecomposition.
class MultimodeUnitary {
 public:
  MultimodeUnitary(const CMatrix& mode_unitary, int per_mode_dim);

  CVector apply(const CVector& state) const;
  CVector apply_adjoint(const CVector& state) const;

 private:
  struct Sector {
    std::vector<int> indices;
    CMatrix vectors;
    RVector energies;
  };

  CVector transform(const CVector& state, bool adjoint) const;

  long size_;
  std::vector<Sector> sectors_;
};

struct MultimodeState {
  int m = 1;
  int per_mode_dim = 1;
  // Input product state: D(alpha_0) rho on mode 0, coherent states elsewhere.
  CVector amplitudes;
  // One entry per parameter (serial) or a single shared entry (parallel).
  std::vector<std::shared_ptr<const MultimodeUnitary>> stages;

  long size() const noexcept { return static_cast<long>(amplitudes.size()); }
  const MultimodeUnitary& stage_for(int k) const;
  // State whose mode k is the phase-encoding mode b_k.
  CVector output(int k) const;
};

// Smallest per-mode cutoff (>= 12) for which the total photon-number tail of
// the input, shifted by the generator order, stays below 1e-14.
int choose_per_mode_dim(const QuantumState& state,
                        const NetworkConfig& network, int generator_order = 2);

// Throws DomainError for mixed states or m > 3, LeakageError if the cutoff
// cannot hold the input photon-number distribution.
MultimodeState simulate_scheme(const QuantumState& state,
                               const NetworkConfig& network, int per_mode_dim,
                               int generator_order = 2);

// Applies a single-mode matrix to mode `mode` of a multimode vector.
CVector apply_on_mode(const CVector& state, const CMatrix& op, int mode, int m,
                      int per_mode_dim);

// Reduced density matrix of one mode.
CMatrix reduced_density(const CVector& state, int mode, int m,
                        int per_mode_dim);

// F_jk = 4 Re[<G_j G_k> - <G_j><G_k>] with G_k = W_k^dagger K(a_k) W_k.
// Only QfiMatrix::values is populated.
QfiMatrix brute_qfi_matrix(const MultimodeState& multi,
                           const GeneratorSpec& spec);

}  // namespace qmpower
