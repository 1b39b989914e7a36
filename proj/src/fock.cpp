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

#include "ptel/fock.hpp"

#include <numeric>
#include <sstream>

namespace ptel {

ModeLayout::ModeLayout(int n_photons, bool star_loss_modes)
    : n_photons_(n_photons), star_loss_modes_(star_loss_modes) {
  if (n_photons < 2) {
    throw std::invalid_argument("ModeLayout: need at least 2 photons, got " +
                                std::to_string(n_photons));
  }
  if (n_photons > 8) {
    throw std::invalid_argument("ModeLayout: at most 8 photons supported, got " +
                                std::to_string(n_photons));
  }
}

void ModeLayout::check_source(int source) const {
  if (source < 1 || source > n_photons_) {
    throw std::out_of_range("ModeLayout: source index " + std::to_string(source) +
                            " outside 1.." + std::to_string(n_photons_));
  }
}

int ModeLayout::a(int source) const {
  check_source(source);
  return source - 1;
}

int ModeLayout::b(int source) const {
  check_source(source);
  return n_photons_ + source - 1;
}

int ModeLayout::c(int source) const {
  check_source(source);
  if (source == 1) {
    if (!star_loss_modes_) throw std::out_of_range("ModeLayout: star source has no loss ancilla");
    return 4 * n_photons_ - 2;
  }
  return 2 * n_photons_ + source - 2;
}

int ModeLayout::d(int source) const {
  check_source(source);
  if (source == 1) {
    if (!star_loss_modes_) throw std::out_of_range("ModeLayout: star source has no loss ancilla");
    return 4 * n_photons_ - 1;
  }
  return 3 * n_photons_ - 1 + source - 2;
}

std::string ModeLayout::label(int mode) const {
  const int n = n_photons_;
  if (mode < 0 || mode >= mode_count()) throw std::out_of_range("ModeLayout: bad mode index");
  if (mode < n) return "a" + std::to_string(mode + 1);
  if (mode < 2 * n) return "b" + std::to_string(mode - n + 1);
  if (mode < 3 * n - 1) return "c" + std::to_string(mode - 2 * n + 2);
  if (mode < 4 * n - 2) return "d" + std::to_string(mode - 3 * n + 3);
  return mode == 4 * n - 2 ? "c1" : "d1";
}

std::vector<std::string> ModeLayout::detector_labels() const {
  std::vector<std::string> out;
  for (int m = 0; m < detector_count(); ++m) out.push_back(label(m));
  return out;
}

FockConfiguration::FockConfiguration(std::vector<Count> counts) : counts_(std::move(counts)) {
  total_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

FockConfiguration::FockConfiguration(std::initializer_list<int> counts) {
  counts_.reserve(counts.size());
  for (int c : counts) {
    if (c < 0 || c > 255) throw std::invalid_argument("FockConfiguration: count out of range");
    counts_.push_back(static_cast<Count>(c));
    total_ += c;
  }
}

FockConfiguration FockConfiguration::prefix(std::size_t n) const {
  return FockConfiguration(std::vector<Count>(counts_.begin(), counts_.begin() + n));
}

FockConfiguration FockConfiguration::concat(const FockConfiguration& tail) const {
  std::vector<Count> joined = counts_;
  joined.insert(joined.end(), tail.counts_.begin(), tail.counts_.end());
  return FockConfiguration(std::move(joined));
}

std::string FockConfiguration::to_string() const {
  std::ostringstream os;
  os << '|';
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) os << ',';
    os << int(counts_[i]);
  }
  os << '>';
  return os.str();
}

boost::multiprecision::cpp_int configuration_count(int photons, int modes) {
  using boost::multiprecision::cpp_int;
  if (photons < 0 || modes < 1) return 0;
  // C(D+m-1, D) built incrementally; each partial product is itself a binomial.
  cpp_int result = 1;
  for (int i = 1; i <= photons; ++i) {
    result *= modes - 1 + i;
    result /= i;
  }
  return result;
}

std::vector<FockConfiguration> enumerate_configurations(int photons, int modes,
                                                        const EnumerationLimits& limits) {
  if (photons < 0) throw std::invalid_argument("enumerate_configurations: negative photon count");
  if (modes < 1) throw std::invalid_argument("enumerate_configurations: need at least one mode");
  if (modes > limits.max_modes) {
    throw LimitExceeded("enumerate_configurations: modes=" + std::to_string(modes) +
                        " exceeds max_modes=" + std::to_string(limits.max_modes));
  }
  if (photons > 255) {
    throw LimitExceeded("enumerate_configurations: photons=" + std::to_string(photons) +
                        " exceeds per-mode count range 255");
  }
  const auto count = configuration_count(photons, modes);
  if (count > limits.max_configurations) {
    throw LimitExceeded("enumerate_configurations: C(D+m-1,D)=" + count.str() +
                        " exceeds max_configurations=" +
                        std::to_string(limits.max_configurations));
  }

  std::vector<FockConfiguration> out;
  out.reserve(count.convert_to<std::size_t>());

  // Lexicographic successor on compositions: starting from (0,..,0,D), find the
  // rightmost position i < m-1 that can grow while some later position is
  // nonzero, bump it, and dump the remaining mass at the end.
  std::vector<FockConfiguration::Count> c(modes, 0);
  c[modes - 1] = static_cast<FockConfiguration::Count>(photons);
  while (true) {
    out.emplace_back(c);
    int i = modes - 2;
    int tail = c[modes - 1];
    while (i >= 0 && tail == 0) {
      tail += c[i];
      --i;
    }
    if (i < 0) break;
    // positions i+1..m-1 hold `tail` photons in total, at least one of them.
    ++c[i];
    for (int j = i + 1; j < modes; ++j) c[j] = 0;
    c[modes - 1] = static_cast<FockConfiguration::Count>(tail - 1);
  }
  return out;
}

}  // namespace ptel
