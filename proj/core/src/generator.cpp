#include "qmpower/generator.hpp"

#include <cmath>
#include <sstream>

#include "qmpower/errors.hpp"

namespace qmpower {

void GeneratorSpec::validate() const {
  if (p < 1) {
    throw DomainError("GeneratorSpec: order p must be >= 1");
  }
  if (static_cast<int>(kappas.size()) != p + 1) {
    std::ostringstream os;
    os << "GeneratorSpec: expected " << p + 1 << " coefficients, got "
       << kappas.size();
    throw DomainError(os.str());
  }
  bool any = false;
  for (int j = 0; j <= p; ++j) {
    if (std::abs(kappas[j] - std::conj(kappas[p - j])) > 1e-12) {
      throw DomainError(
          "GeneratorSpec: not Hermitian (kappa_j != conj(kappa_{p-j}))");
    }
    any = any || kappas[j] != Complex(0.0, 0.0);
  }
  if (!any) throw DomainError("GeneratorSpec: all coefficients are zero");
}

GeneratorSpec GeneratorSpec::phase() { return {2, {0.0, 1.0, 0.0}}; }

GeneratorSpec GeneratorSpec::kerr() { return {4, {0.0, 0.0, 1.0, 0.0, 0.0}}; }

GeneratorSpec GeneratorSpec::force(double phi) {
  const double s = 1.0 / std::sqrt(2.0);
  return {1, {std::polar(s, phi), std::polar(s, -phi)}};
}

GeneratorSpec GeneratorSpec::real(std::vector<double> kappas) {
  if (kappas.empty()) throw DomainError("GeneratorSpec::real: no coefficients");
  GeneratorSpec spec;
  spec.p = static_cast<int>(kappas.size()) - 1;
  spec.kappas.assign(kappas.begin(), kappas.end());
  spec.validate();
  return spec;
}

bool operator==(const GeneratorSpec& a, const GeneratorSpec& b) {
  return a.p == b.p && a.kappas == b.kappas;
}

ModeOperator generator_matrix(const GeneratorSpec& spec, int dim) {
  spec.validate();
  const CMatrix a = ModeOperator::annihilation(dim).matrix();
  const CMatrix ad = a.adjoint();
  // powers[k] = a^k, dagger_powers[k] = a^dagger^k
  std::vector<CMatrix> powers{CMatrix::Identity(dim, dim)};
  std::vector<CMatrix> dagger_powers{CMatrix::Identity(dim, dim)};
  for (int k = 1; k <= spec.p; ++k) {
    powers.push_back(powers.back() * a);
    dagger_powers.push_back(dagger_powers.back() * ad);
  }
  CMatrix k = CMatrix::Zero(dim, dim);
  for (int j = 0; j <= spec.p; ++j) {
    if (spec.kappas[j] == Complex(0.0, 0.0)) continue;
    k += spec.kappas[j] * dagger_powers[spec.p - j] * powers[j];
  }
  return ModeOperator(std::move(k));
}

}  // namespace qmpower
