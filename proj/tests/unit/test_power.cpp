#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "qmpower/errors.hpp"
#include "qmpower/qfi.hpp"

using namespace qmpower;

namespace {

double grid_max(const GeneratorSpec& spec, int points) {
  double best = 0.0;
  for (int g = 0; g < points; ++g) {
    best = std::max(best, std::norm(theta_sum(spec, 2.0 * kPi * g / points)));
  }
  return best;
}

}  // namespace

TEST(Theta, NamedGenerators) {
  const auto phase = theta_coefficient(GeneratorSpec::phase());
  EXPECT_NEAR(phase.value, 1.0, 1e-14);
  EXPECT_EQ(phase.theta, 0.0);
  const auto kerr = theta_coefficient(GeneratorSpec::kerr());
  EXPECT_NEAR(kerr.value, 4.0, 1e-13);
  EXPECT_EQ(kerr.theta, 0.0);
  EXPECT_NEAR(theta_coefficient(GeneratorSpec::force(0.3)).value, 0.5, 1e-14);
}

TEST(Theta, MatchesDenseGrid) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int p : {2, 3, 4, 5}) {
    GeneratorSpec spec;
    spec.p = p;
    spec.kappas.assign(p + 1, 0.0);
    for (int j = 0; j <= p / 2; ++j) {
      const Complex k(n(rng), j == p - j ? 0.0 : n(rng));
      spec.kappas[j] = k;
      spec.kappas[p - j] = std::conj(k);
    }
    const auto tc = theta_coefficient(spec);
    const double grid = grid_max(spec, 1000000);
    EXPECT_GE(tc.value, grid - 1e-9 * grid);
    EXPECT_NEAR(tc.value, grid, 1e-8 * grid);
    EXPECT_NEAR(std::norm(theta_sum(spec, tc.theta)), tc.value, 1e-12 * tc.value);
    EXPECT_GE(tc.theta, 0.0);
    EXPECT_LT(tc.theta, 2.0 * kPi);
  }
}

TEST(Theta, NonNegativeRealSpecsGiveHalfOrderSquared) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p : {2, 3, 4, 6}) {
    std::vector<double> k(p + 1);
    for (int j = 0; j <= p / 2; ++j) k[j] = k[p - j] = u(rng);
    double sum = 0.0;
    for (double v : k) sum += v;
    for (double& v : k) v /= sum;
    EXPECT_NEAR(theta_coefficient(GeneratorSpec::real(k)).value,
                p * p / 4.0, 1e-10);
  }
}

// With mixed signs the value at theta = 0 is still (p/2)^2 but other angles
// can do better: |S|^2 = 13.25 - 5c - 6c^2 with c = cos 2theta.
TEST(Theta, MixedSignSpecsCanExceedHalfOrderSquared) {
  const auto spec = GeneratorSpec::real({1.0, -0.5, -0.5, 1.0});
  EXPECT_NEAR(std::norm(theta_sum(spec, 0.0)), 2.25, 1e-14);
  const auto tc = theta_coefficient(spec);
  EXPECT_NEAR(std::norm(theta_sum(spec, kPi / 2)), 12.25, 1e-12);
  EXPECT_NEAR(tc.value, 343.0 / 24.0, 1e-10);
  EXPECT_NEAR(std::cos(2.0 * tc.theta), -5.0 / 12.0, 1e-8);
}

TEST(Power, ForcePower) {
  EXPECT_NEAR(force_power(make_squeezed_vacuum(0.5, 0.0, 80)).value,
              2.0 * (std::exp(1.0) - 1.0), 1e-12);
  EXPECT_NEAR(force_power(make_fock(1, 12)).value, 4.0, 1e-14);
  EXPECT_NEAR(force_power(make_coherent(2.0, 60)).value, 0.0, 1e-11);
}

TEST(Power, SldForcePowerAgreesForPureStates) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = qmtest::random_pure(rng, 5, 14);
    const auto a = force_power(psi);
    const auto b = sld_force_power(psi);
    EXPECT_NEAR(a.value, b.value, 1e-8 * std::max(1.0, std::abs(a.value)));
  }
}

TEST(Power, SldForcePowerIsBelowMomentFormForMixtures) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = qmtest::random_mixture(rng, 5, 14);
    EXPECT_LE(sld_force_power(rho).value, force_power(rho).value + 1e-9);
  }
  // thermal light has no quadrature advantage at all once convex roofed
  EXPECT_LT(sld_force_power(make_thermal(0.3, 60)).value, 0.0);
  EXPECT_NEAR(force_power(make_thermal(0.3, 60)).value, 1.2, 1e-12);
}

TEST(Power, Coefficient) {
  const auto phase = GeneratorSpec::phase();
  EXPECT_NEAR(power_coefficient(phase, 2, 100.0, Topology::serial), 800.0,
              1e-10);
  EXPECT_NEAR(power_coefficient(phase, 2, 100.0, Topology::parallel), 200.0,
              1e-10);
  EXPECT_NEAR(power_coefficient(GeneratorSpec::kerr(), 1, 10.0,
                                Topology::parallel),
              8000.0, 1e-8);
  EXPECT_THROW(power_coefficient(phase, 1, 0.0, Topology::serial), DomainError);
  EXPECT_THROW(power_coefficient(phase, 0, 1.0, Topology::serial), DomainError);
}

TEST(Power, ReportForFockKerr) {
  const auto rep = asymptotic_power(make_fock(1, 30), GeneratorSpec::kerr(), 1,
                                    10.0, Topology::parallel);
  EXPECT_NEAR(rep.asymptotic_power, 32000.0, 1e-7);
  EXPECT_NEAR(rep.m_force, 4.0, 1e-14);
  ASSERT_EQ(rep.samples.size(), 1u);
  EXPECT_EQ(rep.samples[0].first, 10.0);
}

TEST(Power, PhaseLawsApproachedAtLargeAmplitude) {
  const auto sq = make_squeezed_vacuum(0.5, 0.0, 80);
  const double e = sq.energy();
  for (Topology topo : {Topology::serial, Topology::parallel}) {
    for (int m : {1, 2, 3}) {
      const auto rep =
          asymptotic_power(sq, GeneratorSpec::phase(), m, 1e4 * e, topo);
      EXPECT_NEAR(rep.samples[0].second / rep.asymptotic_power, 1.0, 1e-3);
    }
  }
}

TEST(Power, AchievingNetworkAlignsWithMaximalQuadrature) {
  const auto sq = make_squeezed_vacuum(0.5, 1.4, 80);
  const auto fp = force_power(sq);
  for (Topology topo : {Topology::serial, Topology::parallel}) {
    const auto net = achieving_network(GeneratorSpec::phase(), 3, 50.0, topo,
                                       fp.phi);
    EXPECT_NEAR(std::arg(compute_z(net, GeneratorSpec::phase())), fp.phi, 1e-10);
    EXPECT_NEAR(net.alpha_sq(), 50.0, 1e-9);
  }
}

TEST(Power, ExtraSamplesAreSortedAndUnique) {
  const double extra[] = {50.0, 10.0, 50.0};
  const auto rep = asymptotic_power(make_squeezed_vacuum(0.3, 0.0, 60),
                                    GeneratorSpec::phase(), 2, 20.0,
                                    Topology::serial, extra);
  ASSERT_EQ(rep.samples.size(), 3u);
  EXPECT_EQ(rep.samples[0].first, 10.0);
  EXPECT_EQ(rep.samples[1].first, 20.0);
  EXPECT_EQ(rep.samples[2].first, 50.0);
}

TEST(Power, MixedStateReportUsesMomentForm) {
  std::mt19937_64 rng(40);
  const auto rho = qmtest::random_mixture(rng, 5, 30);
  const auto rep = asymptotic_power(rho, GeneratorSpec::phase(), 2, 100.0,
                                    Topology::serial);
  EXPECT_EQ(rep.m_force, 4.0 * max_normally_ordered_variance(rho).value);
  EXPECT_EQ(rep.asymptotic_power, rep.coefficient * rep.m_force);
}
