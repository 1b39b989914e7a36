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

#include "ptel/distribution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ptel/numeric.hpp"

namespace ptel {

ProbabilityDistribution::ProbabilityDistribution(int n_photons, int mode_count, bool star_present,
                                                 std::vector<ProbabilityEntry> entries)
    : n_photons_(n_photons),
      mode_count_(mode_count),
      star_present_(star_present),
      entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (static_cast<int>(entries_[i].config.size()) != mode_count_) {
      throw std::invalid_argument("ProbabilityDistribution: configuration has wrong mode count");
    }
    if (i > 0 && !(entries_[i - 1].config < entries_[i].config)) {
      throw std::invalid_argument("ProbabilityDistribution: entries not strictly increasing");
    }
  }
}

const ProbabilityEntry* ProbabilityDistribution::find(const FockConfiguration& config) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), config,
                             [](const ProbabilityEntry& e, const FockConfiguration& c) {
                               return e.config < c;
                             });
  if (it == entries_.end() || it->config != config) return nullptr;
  return &*it;
}

double ProbabilityDistribution::probability(const FockConfiguration& config) const {
  const ProbabilityEntry* e = find(config);
  return e ? e->probability : 0.0;
}

double ProbabilityDistribution::total_probability() const {
  CompensatedSum s;
  for (const auto& e : entries_) s += e.probability;
  return s.value();
}

double ProbabilityDistribution::total_derivative() const {
  CompensatedSum s;
  for (const auto& e : entries_) s += e.derivative;
  return s.value();
}

ProbabilityDistribution ProbabilityDistribution::marginal(int kept_modes) const {
  if (kept_modes < 1 || kept_modes > mode_count_) {
    throw std::invalid_argument("ProbabilityDistribution::marginal: bad mode count");
  }
  std::map<FockConfiguration, std::pair<CompensatedSum, CompensatedSum>> acc;
  for (const auto& e : entries_) {
    auto& slot = acc[e.config.prefix(kept_modes)];
    slot.first += e.probability;
    slot.second += e.derivative;
  }
  std::vector<ProbabilityEntry> out;
  out.reserve(acc.size());
  for (const auto& [config, sums] : acc) {
    out.push_back({config, sums.first.value(), sums.second.value()});
  }
  return ProbabilityDistribution(n_photons_, kept_modes, star_present_, std::move(out));
}

PhaseResolvedDistribution::PhaseResolvedDistribution(int n_photons, int mode_count,
                                                     bool star_present,
                                                     std::vector<PhaseResolvedEntry> entries)
    : n_photons_(n_photons),
      mode_count_(mode_count),
      star_present_(star_present),
      entries_(std::move(entries)) {}

ProbabilityDistribution PhaseResolvedDistribution::at(double phase) const {
  const std::complex<double> z = std::polar(1.0, phase);
  std::vector<ProbabilityEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    // Clamp tiny negative roundoff on structurally zero outcomes.
    out.push_back({e.config, std::max(0.0, e.probability(z)), e.derivative(z)});
  }
  return ProbabilityDistribution(n_photons_, mode_count_, star_present_, std::move(out));
}

}  // namespace ptel
