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

#ifndef PTEL_FISHER_HPP
#define PTEL_FISHER_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ptel/circuit.hpp"
#include "ptel/distribution.hpp"

namespace ptel {

/// Raised when two routes to the same quantity disagree, or a distribution is
/// internally inconsistent.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probabilities at or below this are treated as structurally zero.
inline constexpr double kProbabilityFloor = 1e-14;
/// Tolerance for the direct vs weighted-sum Fisher reconciliation.
inline constexpr double kDecompositionTolerance = 1e-10;

/// Contribution of the outcomes with `detected` photons.
struct FisherTerm {
  int detected = 0;
  double q = 0.0;        // probability of detecting that many photons
  double f_prime = 0.0;  // Fisher information of the renormalised conditionals
  /// Binomial prediction (1-p)^{D-1} p^k C(N-1, k), set when it applies.
  std::optional<double> q_closed_form;
};

struct FisherResult {
  double value = 0.0;
  std::vector<FisherTerm> breakdown;

  int n_photons = 0;
  double phase = 0.0;
  double loss_probability = 0.0;
  std::optional<double> epsilon;  // unset unless a thermal source is modelled
  bool lossless = false;
  /// Only for fisher_with_loss: the weighted-sum route value.
  std::optional<double> decomposition_value;
};

/// Detector-mode distribution with the loss ancillas summed out and the signal
/// phase kept symbolic. Every detector configuration with 0..N_in photons is
/// present, including the all-zero outcome.
PhaseResolvedDistribution resolve_detection_distribution(const CircuitSpec& spec);

/// resolve_detection_distribution evaluated at spec.signal_phase.
ProbabilityDistribution detection_distribution(const CircuitSpec& spec);

/// sum_d (dP_d)^2 / P_d over outcomes with P_d above kProbabilityFloor.
double fisher_information(const ProbabilityDistribution& dist);

/// One outcome's thermal Fisher contribution eps^2 (dP_B)^2 / ((1-eps) P_A + eps P_B)
/// evaluated from the fringe form of P_B, with P_A the (phase-independent)
/// star-absent probability of the same outcome.
///
/// With z = e^{i phi}, write z * cross = |c| e^{i t} so that
/// P_B = V + 2|c| (1 + cos t), V = base - 2|c| >= 0, and dP_B = -2|c| sin t.
/// At the zeros of a full-visibility fringe ((1-eps) P_A + eps V = 0) the
/// ratio is replaced by its limit 2 eps |c| (1 - cos t), so the Fisher
/// information is continuous in the phase. Phase-independent outcomes
/// contribute nothing.
double fisher_term(const PhaseResolvedEntry& present, double absent_probability,
                   std::complex<double> z, double epsilon);

/// Fisher information of a phase-resolved distribution (epsilon = 1, no P_A).
double fisher_information(const PhaseResolvedDistribution& dist, double phase);

/// Groups outcomes by photon number and returns q_D and F'_D per group.
std::vector<FisherTerm> fisher_breakdown(const ProbabilityDistribution& dist);

/// Binomial probability of detecting `detected` of n photons when only the n-1
/// ground photons can be lost.
double detection_probability_closed_form(int n_photons, int detected, double loss_probability);

/// Thermal-source Fisher information
///   F = sum_d eps^2 (dP_B)^2 / ((1 - eps) P_A + eps P_B)
/// for the no-star (absent) and one-star (present) distributions over the same
/// detector alphabet.
double thermal_fisher_information(const ProbabilityDistribution& absent,
                                  const ProbabilityDistribution& present, double epsilon);

FisherResult fisher_lossless(int n_photons, double phase);
FisherResult fisher_with_loss(int n_photons, double phase, double loss_probability);
FisherResult fisher_thermal(int n_photons, double phase, double loss_probability, double epsilon);

/// Star-absent and star-present detection distributions at fixed loss, kept
/// phase-resolved so the thermal Fisher information can be evaluated at many
/// phases without recomputing any amplitudes.
class ThermalModel {
 public:
  ThermalModel(int n_photons, double loss_probability);

  int n_photons() const { return n_photons_; }
  double loss_probability() const { return loss_probability_; }
  const PhaseResolvedDistribution& absent() const { return absent_; }
  const PhaseResolvedDistribution& present() const { return present_; }

  double fisher(double phase, double epsilon) const;
  /// Fisher information with a certain star photon (epsilon = 1).
  double fisher_present(double phase) const;

  /// P_T = (1 - eps) P_A + eps P_B, still phase-resolved.
  PhaseResolvedDistribution mixture(double epsilon) const;

 private:
  double absent_probability(std::size_t present_index) const;

  int n_photons_;
  double loss_probability_;
  PhaseResolvedDistribution absent_;
  PhaseResolvedDistribution present_;
  // For every entry of present_, the index of the same configuration in
  // absent_, or -1.
  std::vector<int> absent_index_;
};

}  // namespace ptel

#endif  // PTEL_FISHER_HPP
