#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "qmpower/errors.hpp"
#include "qmpower/oracle.hpp"

using namespace qmpower;
using qmtest::rel_diff;

namespace {

NetworkConfig beam_splitter_network() {
  NetworkConfig net;
  net.topology = Topology::parallel;
  net.m = 2;
  CMatrix u(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  u << s, s, -s, s;
  net.unitaries = {u};
  net.alphas = CVector::Zero(2);
  net.alphas(1) = 1.0;
  net.weights = uniform_weights(2);
  return net;
}

}  // namespace

TEST(Oracle, IdentityNetworkLeavesStateAlone) {
  std::mt19937_64 rng(1);
  const auto psi = qmtest::random_pure(rng, 4, 12);
  NetworkConfig net = routed_network(Topology::parallel, uniform_weights(1),
                                     1.0, 0.0, 0.0);
  net.alphas(0) = 0.0;
  const auto multi = simulate_scheme(psi, net, 12);
  EXPECT_NEAR((multi.output(0) - psi.amplitudes()).norm(), 0.0, 1e-12);
}

TEST(Oracle, BeamSplitterMakesTwoCoherentStates) {
  const auto net = beam_splitter_network();
  const int d = 16;
  const auto multi = simulate_scheme(make_vacuum(d), net, d);
  const CVector out = multi.output(0);
  EXPECT_NEAR(out.norm(), 1.0, 1e-8);
  for (int mode = 0; mode < 2; ++mode) {
    const CMatrix rho = reduced_density(out, mode, 2, d);
    const Complex beta = net.unitaries[0](mode, 1) * 1.0;
    const CVector c = make_coherent(beta, d).amplitudes();
    const double fidelity = (c.adjoint() * rho * c)(0, 0).real();
    EXPECT_NEAR(fidelity, 1.0, 1e-6);
  }
}

TEST(Oracle, NormIsPreservedThroughSerialStages) {
  const auto net = sample_random_network(2, Topology::serial, 1.5,
                                         uniform_weights(2), 3);
  const auto sq = make_squeezed_vacuum(0.3, 0.0, 30);
  const int d = choose_per_mode_dim(sq, net);
  const auto multi = simulate_scheme(sq, net, d);
  EXPECT_NEAR(multi.amplitudes.norm(), 1.0, 1e-8);
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(multi.output(k).norm(), 1.0, 1e-8);
}

TEST(Oracle, ApplyOnModeMatchesKronecker) {
  const int d = 4;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  CVector psi(d * d);
  for (int i = 0; i < d * d; ++i) psi(i) = Complex(n(rng), n(rng));
  const CMatrix a = ModeOperator::annihilation(d).matrix();
  // mode 0 is the fast index
  CMatrix on0 = CMatrix::Zero(d * d, d * d);
  CMatrix on1 = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        on0(i + k * d, j + k * d) = a(i, j);
        on1(k + i * d, k + j * d) = a(i, j);
      }
    }
  }
  EXPECT_NEAR((apply_on_mode(psi, a, 0, 2, d) - on0 * psi).norm(), 0.0, 1e-12);
  EXPECT_NEAR((apply_on_mode(psi, a, 1, 2, d) - on1 * psi).norm(), 0.0, 1e-12);
}

TEST(Oracle, CoherentInputsGiveClassicalFisher) {
  const auto net = sample_random_network(2, Topology::parallel, 2.0,
                                         uniform_weights(2), 8);
  const auto vac = make_vacuum(20);
  const auto multi = simulate_scheme(vac, net, choose_per_mode_dim(vac, net));
  const auto f = brute_qfi_matrix(multi, GeneratorSpec::phase());
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const double want = j == k ? 4.0 * std::norm(net.amplitude(j)) : 0.0;
      EXPECT_NEAR(f.values(j, k), want, 1e-8);
    }
  }
}

TEST(Oracle, AgreesWithMomentEngineOnSqueezedInput) {
  NetworkConfig net = sample_random_network(2, Topology::serial, 2.25,
                                            uniform_weights(2), 6);
  net.alphas = CVector::Zero(2);
  net.alphas(0) = 1.5;
  const auto sq = make_squeezed_vacuum(0.3, 0.0, 40);
  const auto multi = simulate_scheme(sq, net, choose_per_mode_dim(sq, net));
  const auto brute = brute_qfi_matrix(multi, GeneratorSpec::phase());
  const auto moments = phase_qfi_matrix(sq, net);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(brute.values(j, k), moments.values(j, k),
                  1e-8 * moments.values.cwiseAbs().maxCoeff());
    }
  }
  EXPECT_LT((brute.values - brute.values.transpose()).cwiseAbs().maxCoeff(),
            1e-8);
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(brute.values);
  EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-8);
}

TEST(Oracle, AgreesWithMomentEngineForKerr) {
  const auto sq = make_squeezed_vacuum(0.2, 0.0, 40);
  const auto net = routed_network(Topology::parallel, uniform_weights(1), 4.0,
                                  0.0, 0.0);
  const auto multi =
      simulate_scheme(sq, net, choose_per_mode_dim(sq, net, 4), 4);
  const double brute = brute_qfi_matrix(multi, GeneratorSpec::kerr()).values(0, 0);
  EXPECT_LT(rel_diff(brute, 2273.535534340529), 1e-6);
}

TEST(Oracle, RandomTwoModeCasesAgree) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 6; ++trial) {
    const auto psi = qmtest::random_pure(rng, 4, 16);
    const Topology topo = trial % 2 ? Topology::serial : Topology::parallel;
    const auto net =
        sample_random_network(2, topo, 1.0, uniform_weights(2), rng());
    const auto multi = simulate_scheme(psi, net, choose_per_mode_dim(psi, net));
    const auto brute = brute_qfi_matrix(multi, GeneratorSpec::phase());
    const auto moments = phase_qfi_matrix(psi, net);
    const double scale = moments.values.cwiseAbs().maxCoeff();
    EXPECT_LT((brute.values - moments.values).cwiseAbs().maxCoeff() / scale,
              1e-7);
  }
}

TEST(Oracle, Preconditions) {
  const auto net3 = sample_random_network(4, Topology::parallel, 1.0,
                                          uniform_weights(4), 0);
  EXPECT_THROW(simulate_scheme(make_vacuum(10), net3, 10), DomainError);
  const auto net = sample_random_network(2, Topology::parallel, 1.0,
                                         uniform_weights(2), 0);
  EXPECT_THROW(simulate_scheme(make_thermal(0.1, 20), net, 12), DomainError);
  EXPECT_THROW(simulate_scheme(make_vacuum(10), net, 300), DomainError);
  const auto bright = sample_random_network(2, Topology::parallel, 60.0,
                                            uniform_weights(2), 0);
  EXPECT_THROW(simulate_scheme(make_vacuum(10), bright, 12), LeakageError);
}

TEST(Oracle, CutoffGrowsWithAmplitude) {
  const auto vac = make_vacuum(10);
  const auto dim = [&](double a2) {
    return choose_per_mode_dim(
        vac, sample_random_network(2, Topology::parallel, a2,
                                   uniform_weights(2), 1));
  };
  EXPECT_GE(dim(0.1), 12);
  EXPECT_LT(dim(0.5), dim(20.0));
}
