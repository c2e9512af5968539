#pragma once

#include <vector>

#include "qmpower/fock.hpp"
#include "qmpower/types.hpp"

namespace qmpower {

// K = sum_{j=0}^{p} kappa_j a^{dagger (p-j)} a^j. Only the top-order terms
// of a normally ordered generator matter for the large-amplitude power.
struct GeneratorSpec {
  int p = 2;
  std::vector<Complex> kappas{0.0, 1.0, 0.0};

  // Throws DomainError unless kappa_j = conj(kappa_{p-j}) within 1e-12 and
  // at least one coefficient is nonzero.
  void validate() const;

  // a^dagger a
  static GeneratorSpec phase();
  // a^{dagger 2} a^2
  static GeneratorSpec kerr();
  // X_phi = (e^{i phi} a^dagger + e^{-i phi} a) / sqrt(2)
  static GeneratorSpec force(double phi = 0.0);
  static GeneratorSpec real(std::vector<double> kappas);
};

bool operator==(const GeneratorSpec& a, const GeneratorSpec& b);

// Dense matrix of K on a truncated basis. The truncated ladder operators are
// exact on states supported below dim - p.
ModeOperator generator_matrix(const GeneratorSpec& spec, int dim);

}  // namespace qmpower
