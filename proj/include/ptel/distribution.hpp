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

#ifndef PTEL_DISTRIBUTION_HPP
#define PTEL_DISTRIBUTION_HPP

#include <complex>
#include <vector>

#include "ptel/fock.hpp"

namespace ptel {

struct ProbabilityEntry {
  FockConfiguration config;
  double probability = 0.0;
  double derivative = 0.0;  // d probability / d phi
};

/// Outcome distribution with its phase derivative. Entries are kept in strictly
/// increasing lexicographic order of their configurations.
class ProbabilityDistribution {
 public:
  ProbabilityDistribution(int n_photons, int mode_count, bool star_present,
                          std::vector<ProbabilityEntry> entries);

  int n_photons() const { return n_photons_; }
  int mode_count() const { return mode_count_; }
  bool star_present() const { return star_present_; }
  const std::vector<ProbabilityEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// nullptr if the configuration is absent.
  const ProbabilityEntry* find(const FockConfiguration& config) const;
  double probability(const FockConfiguration& config) const;

  double total_probability() const;
  double total_derivative() const;

  /// Sums out every mode past the first `kept_modes`.
  ProbabilityDistribution marginal(int kept_modes) const;

 private:
  int n_photons_;
  int mode_count_;
  bool star_present_;
  std::vector<ProbabilityEntry> entries_;
};

/// A detection distribution with the phase left symbolic.
///
/// Every output amplitude is affine in z = e^{i phi}, A = a0 + z a1, so each
/// outcome probability is P(phi) = base + 2 Re(z * cross) with
/// base = sum |a0|^2 + |a1|^2 and cross = sum conj(a0) a1 over the summed-out
/// loss configurations.
struct PhaseResolvedEntry {
  FockConfiguration config;
  double base = 0.0;
  std::complex<double> cross;

  double probability(std::complex<double> z) const { return base + 2.0 * std::real(z * cross); }
  double derivative(std::complex<double> z) const { return -2.0 * std::imag(z * cross); }
};

class PhaseResolvedDistribution {
 public:
  PhaseResolvedDistribution(int n_photons, int mode_count, bool star_present,
                            std::vector<PhaseResolvedEntry> entries);

  int n_photons() const { return n_photons_; }
  int mode_count() const { return mode_count_; }
  bool star_present() const { return star_present_; }
  const std::vector<PhaseResolvedEntry>& entries() const { return entries_; }

  ProbabilityDistribution at(double phase) const;

 private:
  int n_photons_;
  int mode_count_;
  bool star_present_;
  std::vector<PhaseResolvedEntry> entries_;
};

}  // namespace ptel

#endif  // PTEL_DISTRIBUTION_HPP
