// Copyright 2026 The ptel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "ptel/amplitude.hpp"
#include "ptel/fisher.hpp"

namespace ptel {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Permanent, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 7; ++n) {
    for (int t = 0; t < 3; ++t) {
      const ComplexMatrix m = testing::random_matrix(n, rng);
      const Complex want = testing::brute_force_permanent(m);
      EXPECT_LE(std::abs(permanent(m) - want), 1e-11 * std::max(1.0, std::abs(want))) << "n=" << n;
    }
  }
}

TEST(Permanent, SmallCases) {
  EXPECT_EQ(permanent(ComplexMatrix(0, 0)), Complex(1.0));
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  EXPECT_NEAR(std::abs(permanent(m) - Complex(10.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(permanent(ComplexMatrix::Ones(4, 4)) - Complex(24.0)), 0.0, 1e-12);
}

TEST(Permanent, Limits) {
  EXPECT_THROW(permanent(ComplexMatrix::Ones(13, 13)), LimitExceeded);
  EXPECT_THROW(permanent(ComplexMatrix::Ones(2, 3)), std::invalid_argument);
}

TEST(OutputAmplitude, RejectsBadInputs) {
  CircuitSpec spec;
  spec.n_photons = 2;
  const TelescopeCircuit c = build_telescope_circuit(spec);
  const std::vector<int> ports{0, 1};
  EXPECT_THROW(output_amplitude(c.unitary, ports, FockConfiguration{1, 0, 0, 0, 0, 0}),
               PhotonNumberMismatch);
  EXPECT_THROW(output_amplitude(c.unitary, ports, FockConfiguration{1, 1}), std::invalid_argument);
  const std::vector<int> twice{0, 0};
  EXPECT_THROW(output_amplitude(c.unitary, twice, FockConfiguration{1, 1, 0, 0, 0, 0}),
               std::invalid_argument);
}

TEST(TwoPhotonFringe, CrossReceiverProbabilities) {
  // Detector order a1, a2, b1, b2.
  for (int i = 0; i < 25; ++i) {
    const double phi = 2.0 * kPi * i / 25.0 + 0.01;
    CircuitSpec spec;
    spec.n_photons = 2;
    spec.signal_phase = phi;
    const ProbabilityDistribution d = detection_distribution(spec);
    const double minus = (1.0 - std::cos(phi)) / 8.0;
    const double plus = (1.0 + std::cos(phi)) / 8.0;
    EXPECT_NEAR(d.probability(FockConfiguration{1, 0, 0, 1}), minus, 1e-12);
    EXPECT_NEAR(d.probability(FockConfiguration{0, 1, 1, 0}), minus, 1e-12);
    EXPECT_NEAR(d.probability(FockConfiguration{0, 1, 0, 1}), plus, 1e-12);
    EXPECT_NEAR(d.probability(FockConfiguration{1, 0, 1, 0}), plus, 1e-12);
    for (const auto& e : d.entries()) {
      if (e.config[0] + e.config[1] != 1) EXPECT_NEAR(e.derivative, 0.0, 1e-13);
    }
  }
}

TEST(Oracle, AgreesWithPermanents) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 4; ++t) {
      CircuitSpec spec;
      spec.n_photons = n;
      spec.signal_phase = 2 * kPi * u(rng);
      spec.instrument_phase = 2 * kPi * u(rng);
      spec.loss_probability = t == 0 ? 0.0 : u(rng);
      const ProbabilityDistribution perm = permanent_distribution(spec);
      const ProbabilityDistribution orc = oracle_distribution(spec);
      ASSERT_EQ(perm.size(), orc.size());
      for (std::size_t i = 0; i < perm.size(); ++i) {
        ASSERT_EQ(perm.entries()[i].config, orc.entries()[i].config);
        EXPECT_NEAR(perm.entries()[i].probability, orc.entries()[i].probability, 1e-10);
        EXPECT_NEAR(perm.entries()[i].derivative, orc.entries()[i].derivative, 1e-10);
      }
    }
  }
}

TEST(Oracle, StarAbsentAndStarLoss) {
  CircuitSpec spec;
  spec.n_photons = 3;
  spec.loss_probability = 0.3;
  spec.signal_phase = 0.8;
  spec.star_present = false;
  const ProbabilityDistribution a = permanent_distribution(spec);
  const ProbabilityDistribution b = oracle_distribution(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a.entries()[i].probability, b.entries()[i].probability, 1e-12);
    EXPECT_EQ(a.entries()[i].derivative, 0.0);
  }
  spec.star_present = true;
  spec.star_loss_probability = 0.25;
  const ProbabilityDistribution c = permanent_distribution(spec);
  const ProbabilityDistribution d = oracle_distribution(spec);
  ASSERT_EQ(c.size(), d.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(c.entries()[i].probability, d.entries()[i].probability, 1e-12);
  }
}

TEST(Oracle, Limit) {
  CircuitSpec spec;
  spec.n_photons = 5;
  EXPECT_THROW(oracle_distribution(spec), LimitExceeded);
}

TEST(SplitAmplitude, ReassemblesDirectAmplitude) {
  CircuitSpec spec;
  spec.n_photons = 3;
  spec.loss_probability = 0.2;
  spec.instrument_phase = 0.3;
  const PhaseSplitCircuit split(spec);
  const std::vector<FockConfiguration> configs{{1, 0, 0, 1, 0, 1, 0, 0, 0, 0},
                                               {0, 1, 0, 0, 1, 0, 0, 0, 0, 1},
                                               {0, 0, 0, 2, 0, 0, 1, 0, 0, 0}};
  for (double phi : {0.0, 0.7, 2.1, 4.4}) {
    CircuitSpec at = spec;
    at.signal_phase = phi;
    const TelescopeCircuit c = build_telescope_circuit(at);
    for (const auto& cfg : configs) {
      const Complex direct = output_amplitude(c.unitary, c.input_ports, cfg);
      EXPECT_NEAR(std::abs(split.split(cfg).at(phi) - direct), 0.0, 1e-14);
    }
  }
  spec.star_present = false;
  const AmplitudePair p = split_amplitude(spec, FockConfiguration{0, 1, 0, 0, 1, 0, 0, 0, 0, 0});
  EXPECT_EQ(p.a1, Complex(0.0));
}

TEST(Distribution, NormalisedAndDerivativeSumsToZero) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 2; n <= 5; ++n) {
    for (double p : {0.0, 0.25, 0.9}) {
      CircuitSpec spec;
      spec.n_photons = n;
      spec.loss_probability = p;
      spec.signal_phase = 2 * kPi * u(rng);
      const ProbabilityDistribution d = detection_distribution(spec);
      EXPECT_NEAR(d.total_probability(), 1.0, 1e-10);
      EXPECT_NEAR(d.total_derivative(), 0.0, 1e-10);
      for (const auto& e : d.entries()) EXPECT_GE(e.probability, 0.0);
    }
  }
  CircuitSpec spec;
  spec.n_photons = 3;
  spec.loss_probability = 0.4;
  EXPECT_NEAR(permanent_distribution(spec).total_probability(), 1.0, 1e-12);
}

TEST(Distribution, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 2; n <= 5; ++n) {
    for (int t = 0; t < 2; ++t) {
      CircuitSpec spec;
      spec.n_photons = n;
      spec.loss_probability = u(rng);
      spec.signal_phase = 2 * kPi * u(rng);
      spec.instrument_phase = 2 * kPi * u(rng);
      const ProbabilityDistribution d = detection_distribution(spec);
      const std::vector<double> fd = testing::finite_difference(spec, 1e-6);
      for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d.entries()[i].derivative, fd[i], 1e-7);
    }
  }
}

TEST(Distribution, MarginalOfFullDistributionIsDetection) {
  CircuitSpec spec;
  spec.n_photons = 3;
  spec.loss_probability = 0.5;
  spec.signal_phase = 1.7;
  const ProbabilityDistribution full = permanent_distribution(spec).marginal(6);
  const ProbabilityDistribution det = detection_distribution(spec);
  for (const auto& e : full.entries()) {
    EXPECT_NEAR(e.probability, det.probability(e.config), 1e-13) << e.config.to_string();
  }
}

}  // namespace
}  // namespace ptel
