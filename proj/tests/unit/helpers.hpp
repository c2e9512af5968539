#pragma once

#include <cmath>
#include <random>

#include "qmpower/fock.hpp"

namespace qmtest {

using namespace qmpower;

// Random pure state supported on the first `support` levels of `dim`.
inline QuantumState random_pure(std::mt19937_64& rng, int support, int dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  CVector c = CVector::Zero(dim);
  for (int i = 0; i < support; ++i) c(i) = Complex(n(rng), n(rng));
  c.normalize();
  return QuantumState::pure(c);
}

inline QuantumState random_mixture(std::mt19937_64& rng, int support,
                                   int dim) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  const double p = u(rng);
  WeightedState parts[] = {{p, random_pure(rng, support, dim)},
                           {1.0 - p, random_pure(rng, support, dim)}};
  return make_mixture(parts);
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace qmtest
