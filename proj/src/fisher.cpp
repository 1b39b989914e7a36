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

#include "ptel/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/binomial.hpp>

#include "ptel/amplitude.hpp"
#include "ptel/numeric.hpp"

namespace ptel {

namespace {

// Each loss ancilla pair (c_s, d_s) is fed by source s alone, so it can hold
// at most one photon; every other loss configuration has amplitude exactly 0.
bool loss_configuration_reachable(const ModeLayout& layout, const FockConfiguration& loss) {
  const int offset = layout.detector_count();
  for (int s = 1; s <= layout.n_photons(); ++s) {
    if (s == 1 && !layout.has_star_loss_modes()) continue;
    if (loss[layout.c(s) - offset] + loss[layout.d(s) - offset] > 1) return false;
  }
  return true;
}

void check_phase(double phase) {
  if (!std::isfinite(phase)) throw std::invalid_argument("phase must be finite");
}

}  // namespace

PhaseResolvedDistribution resolve_detection_distribution(const CircuitSpec& spec) {
  const PhaseSplitCircuit circuit(spec);
  const ModeLayout layout = spec.layout();
  const int injected = static_cast<int>(circuit.at_zero().input_ports.size());
  const bool lossless = spec.loss_probability == 0.0 && spec.star_loss_probability == 0.0;

  std::vector<FockConfiguration> detector_configs;
  std::vector<std::vector<FockConfiguration>> loss_configs(injected + 1);
  for (int detected = 0; detected <= injected; ++detected) {
    auto batch = enumerate_configurations(detected, layout.detector_count());
    detector_configs.insert(detector_configs.end(), batch.begin(), batch.end());
    const int lost = injected - detected;
    if (lossless && lost > 0) continue;  // no amplitude can reach a loss ancilla
    for (auto& loss : enumerate_configurations(lost, layout.loss_count())) {
      if (loss_configuration_reachable(layout, loss)) loss_configs[lost].push_back(std::move(loss));
    }
  }
  std::sort(detector_configs.begin(), detector_configs.end());

  auto entries = parallel_map<PhaseResolvedEntry>(detector_configs.size(), [&](std::size_t i) {
    const FockConfiguration& det = detector_configs[i];
    CompensatedSum base;
    CompensatedSum cross_re, cross_im;
    for (const auto& loss : loss_configs[injected - det.total()]) {
      const AmplitudePair pair = circuit.split(det.concat(loss));
      base += std::norm(pair.a0) + std::norm(pair.a1);
      const Complex c = std::conj(pair.a0) * pair.a1;
      cross_re += c.real();
      cross_im += c.imag();
    }
    return PhaseResolvedEntry{det, base.value(), Complex(cross_re.value(), cross_im.value())};
  });
  return PhaseResolvedDistribution(spec.n_photons, layout.detector_count(), spec.star_present,
                                   std::move(entries));
}

ProbabilityDistribution detection_distribution(const CircuitSpec& spec) {
  return resolve_detection_distribution(spec).at(spec.signal_phase);
}

double fisher_information(const ProbabilityDistribution& dist) {
  CompensatedSum f;
  for (const auto& e : dist.entries()) {
    if (e.probability > kProbabilityFloor) f += e.derivative * e.derivative / e.probability;
  }
  return f.value();
}

double fisher_term(const PhaseResolvedEntry& present, double absent_probability,
                   std::complex<double> z, double epsilon) {
  const double m = std::abs(present.cross);
  if (m == 0.0) return 0.0;  // phase-independent outcome (or identically zero)
  const std::complex<double> w = z * present.cross;  // |c| e^{i t}
  double visibility_gap = present.base - 2.0 * m;
  // Fringes whose minimum is zero up to roundoff.
  if (visibility_gap < 1e-12 * present.base) visibility_gap = 0.0;
  const double offset = (1.0 - epsilon) * absent_probability + epsilon * visibility_gap;
  if (offset == 0.0) return 2.0 * epsilon * (m - w.real());
  const double derivative = -2.0 * w.imag();
  return epsilon * epsilon * derivative * derivative /
         (offset + 2.0 * epsilon * (m + w.real()));
}

double fisher_information(const PhaseResolvedDistribution& dist, double phase) {
  const std::complex<double> z = std::polar(1.0, phase);
  CompensatedSum f;
  for (const auto& e : dist.entries()) f += fisher_term(e, 0.0, z, 1.0);
  return f.value();
}

std::vector<FisherTerm> fisher_breakdown(const ProbabilityDistribution& dist) {
  int max_detected = 0;
  for (const auto& e : dist.entries()) max_detected = std::max(max_detected, e.config.total());

  std::vector<CompensatedSum> q(max_detected + 1);
  for (const auto& e : dist.entries()) q[e.config.total()] += e.probability;

  std::vector<CompensatedSum> f(max_detected + 1);
  for (const auto& e : dist.entries()) {
    const double qd = q[e.config.total()].value();
    if (qd <= kProbabilityFloor || e.probability <= kProbabilityFloor) continue;
    const double r = e.probability / qd;
    const double dr = e.derivative / qd;
    f[e.config.total()] += dr * dr / r;
  }

  std::vector<FisherTerm> out;
  for (int d = 0; d <= max_detected; ++d) out.push_back({d, q[d].value(), f[d].value(), {}});
  return out;
}

double detection_probability_closed_form(int n_photons, int detected, double loss_probability) {
  if (detected < 1 || detected > n_photons) return 0.0;
  const int lost = n_photons - detected;
  const double binom = boost::math::binomial_coefficient<double>(n_photons - 1, lost);
  const double weighted = std::pow(1.0 - loss_probability, detected - 1) *
                          std::pow(loss_probability, lost) * binom;
  // The same weight written with the lost-photon count as exponent.
  const double by_lost = std::pow(1.0 - loss_probability, n_photons - 1 - lost) *
                         std::pow(loss_probability, lost) * binom;
  if (weighted != by_lost) throw ConsistencyError("detection weight forms disagree");
  return weighted;
}

double thermal_fisher_information(const ProbabilityDistribution& absent,
                                  const ProbabilityDistribution& present, double epsilon) {
  for (const auto& e : absent.entries()) {
    if (std::abs(e.derivative) > 1e-12) {
      throw ConsistencyError("star-absent distribution depends on the phase at " +
                             e.config.to_string());
    }
  }
  CompensatedSum f;
  for (const auto& e : present.entries()) {
    const double pa = absent.probability(e.config);
    const double den = (1.0 - epsilon) * pa + epsilon * e.probability;
    if (den < kProbabilityFloor) {
      if (std::abs(e.derivative) < kProbabilityFloor) continue;
      throw ConsistencyError("zero thermal probability with nonzero derivative at " +
                             e.config.to_string());
    }
    f += epsilon * epsilon * e.derivative * e.derivative / den;
  }
  return f.value();
}

namespace {

CircuitSpec model_spec(int n_photons, double loss_probability, bool star_present) {
  CircuitSpec spec{.n_photons = n_photons, .loss_probability = loss_probability,
                   .star_present = star_present};
  spec.validate();
  return spec;
}

// Decomposition by photon number: group outcomes by detected photon number,
// renormalise each group to r = P / q_D and take the Fisher information of the
// conditionals.
std::vector<FisherTerm> resolved_breakdown(const PhaseResolvedDistribution& dist, double phase) {
  const std::complex<double> z = std::polar(1.0, phase);
  int max_detected = 0;
  for (const auto& e : dist.entries()) max_detected = std::max(max_detected, e.config.total());
  std::vector<CompensatedSum> q(max_detected + 1);
  for (const auto& e : dist.entries()) q[e.config.total()] += std::max(0.0, e.probability(z));

  std::vector<CompensatedSum> f(max_detected + 1);
  for (const auto& e : dist.entries()) {
    const double qd = q[e.config.total()].value();
    if (qd <= kProbabilityFloor) continue;
    const PhaseResolvedEntry conditional{e.config, e.base / qd, e.cross / qd};
    f[e.config.total()] += fisher_term(conditional, 0.0, z, 1.0);
  }
  std::vector<FisherTerm> out;
  for (int d = 0; d <= max_detected; ++d) out.push_back({d, q[d].value(), f[d].value(), {}});
  return out;
}

}  // namespace

FisherResult fisher_lossless(int n_photons, double phase) {
  check_phase(phase);
  const auto dist = resolve_detection_distribution(model_spec(n_photons, 0.0, true));
  FisherResult out;
  out.value = fisher_information(dist, phase);
  out.breakdown = resolved_breakdown(dist, phase);
  out.n_photons = n_photons;
  out.phase = phase;
  out.lossless = true;
  return out;
}

FisherResult fisher_with_loss(int n_photons, double phase, double loss_probability) {
  check_phase(phase);
  const auto dist = resolve_detection_distribution(model_spec(n_photons, loss_probability, true));

  FisherResult out;
  out.value = fisher_information(dist, phase);
  out.breakdown = resolved_breakdown(dist, phase);
  CompensatedSum weighted;
  for (auto& term : out.breakdown) {
    term.q_closed_form = detection_probability_closed_form(n_photons, term.detected,
                                                           loss_probability);
    weighted += term.q * term.f_prime;
  }
  out.decomposition_value = weighted.value();
  if (std::abs(out.value - *out.decomposition_value) > kDecompositionTolerance) {
    throw ConsistencyError("direct Fisher information " + std::to_string(out.value) +
                           " disagrees with the weighted sum " +
                           std::to_string(*out.decomposition_value));
  }
  out.n_photons = n_photons;
  out.phase = phase;
  out.loss_probability = loss_probability;
  out.lossless = loss_probability == 0.0;
  return out;
}

FisherResult fisher_thermal(int n_photons, double phase, double loss_probability,
                            double epsilon) {
  check_phase(phase);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("fisher_thermal: epsilon must be in (0, 1], got " +
                                std::to_string(epsilon));
  }
  const ThermalModel model(n_photons, loss_probability);

  FisherResult out;
  out.value = model.fisher(phase, epsilon);
  out.breakdown = resolved_breakdown(model.mixture(epsilon), phase);
  out.n_photons = n_photons;
  out.phase = phase;
  out.loss_probability = loss_probability;
  out.epsilon = epsilon;
  out.lossless = loss_probability == 0.0;
  return out;
}

ThermalModel::ThermalModel(int n_photons, double loss_probability)
    : n_photons_(n_photons),
      loss_probability_(loss_probability),
      absent_(resolve_detection_distribution(model_spec(n_photons, loss_probability, false))),
      present_(resolve_detection_distribution(model_spec(n_photons, loss_probability, true))) {
  for (const auto& e : absent_.entries()) {
    if (std::abs(e.cross) > 1e-12) {
      throw ConsistencyError("star-absent distribution depends on the phase at " +
                             e.config.to_string());
    }
  }
  const auto& a = absent_.entries();
  absent_index_.reserve(present_.entries().size());
  std::size_t j = 0;
  for (const auto& e : present_.entries()) {
    while (j < a.size() && a[j].config < e.config) ++j;
    absent_index_.push_back(j < a.size() && a[j].config == e.config ? static_cast<int>(j) : -1);
  }
}

double ThermalModel::absent_probability(std::size_t present_index) const {
  const int j = absent_index_[present_index];
  return j >= 0 ? absent_.entries()[j].base : 0.0;
}

double ThermalModel::fisher(double phase, double epsilon) const {
  const std::complex<double> z = std::polar(1.0, phase);
  const auto& present = present_.entries();
  CompensatedSum f;
  for (std::size_t i = 0; i < present.size(); ++i) {
    f += fisher_term(present[i], absent_probability(i), z, epsilon);
  }
  return f.value();
}

PhaseResolvedDistribution ThermalModel::mixture(double epsilon) const {
  std::vector<PhaseResolvedEntry> mixed;
  mixed.reserve(present_.entries().size());
  for (std::size_t i = 0; i < present_.entries().size(); ++i) {
    const auto& e = present_.entries()[i];
    mixed.push_back({e.config, (1.0 - epsilon) * absent_probability(i) + epsilon * e.base,
                     epsilon * e.cross});
  }
  return PhaseResolvedDistribution(n_photons_, present_.mode_count(), true, std::move(mixed));
}

double ThermalModel::fisher_present(double phase) const { return fisher(phase, 1.0); }

}  // namespace ptel
