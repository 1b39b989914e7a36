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

#ifndef PTEL_FOCK_HPP
#define PTEL_FOCK_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ptel {

/// Raised when an enumeration request exceeds the configured size limits.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mode bookkeeping for the two-receiver telescope with N sources.
///
/// Modes are indexed as
///   a_1..a_N   -> 0 .. N-1        (receiver R detectors)
///   b_1..b_N   -> N .. 2N-1       (receiver L detectors)
///   c_2..c_N   -> 2N .. 3N-2      (loss ancillas on the R line)
///   d_2..d_N   -> 3N-1 .. 4N-3    (loss ancillas on the L line)
/// and, only when the optional star-path loss is enabled, c_1 and d_1 are
/// appended at 4N-2 and 4N-1.
class ModeLayout {
 public:
  explicit ModeLayout(int n_photons, bool star_loss_modes = false);

  int n_photons() const { return n_photons_; }
  bool has_star_loss_modes() const { return star_loss_modes_; }

  int detector_count() const { return 2 * n_photons_; }
  int loss_count() const { return 2 * (n_photons_ - 1) + (star_loss_modes_ ? 2 : 0); }
  int mode_count() const { return detector_count() + loss_count(); }

  // Source indices are 1-based to match the physical labelling S_1..S_N.
  int a(int source) const;
  int b(int source) const;
  int c(int source) const;
  int d(int source) const;

  /// Input row for source S_j: the photon enters on the a_j port.
  int input_port(int source) const { return a(source); }

  std::string label(int mode) const;
  std::vector<std::string> detector_labels() const;

 private:
  void check_source(int source) const;

  int n_photons_;
  bool star_loss_modes_;
};

/// Occupation numbers over a declared set of modes.
class FockConfiguration {
 public:
  using Count = std::uint8_t;

  FockConfiguration() = default;
  explicit FockConfiguration(std::vector<Count> counts);
  FockConfiguration(std::initializer_list<int> counts);

  const std::vector<Count>& counts() const { return counts_; }
  std::size_t size() const { return counts_.size(); }
  int total() const { return total_; }
  int operator[](std::size_t i) const { return counts_[i]; }

  /// First `n` modes as a new configuration.
  FockConfiguration prefix(std::size_t n) const;
  /// Concatenation `*this ++ tail`.
  FockConfiguration concat(const FockConfiguration& tail) const;

  std::string to_string() const;

  friend bool operator==(const FockConfiguration& x, const FockConfiguration& y) {
    return x.counts_ == y.counts_;
  }
  friend std::strong_ordering operator<=>(const FockConfiguration& x,
                                          const FockConfiguration& y) {
    return x.counts_ <=> y.counts_;
  }

 private:
  std::vector<Count> counts_;
  int total_ = 0;
};

struct EnumerationLimits {
  int max_modes = 64;
  std::uint64_t max_configurations = 10'000'000;
};

/// Number of weak compositions of `photons` into `modes` parts, C(D+m-1, D).
boost::multiprecision::cpp_int configuration_count(int photons, int modes);

/// All weak compositions of `photons` into `modes` parts, strictly increasing
/// in lexicographic order (so the first is (0,...,0,D) and the last (D,0,...,0)).
std::vector<FockConfiguration> enumerate_configurations(
    int photons, int modes, const EnumerationLimits& limits = {});

}  // namespace ptel

#endif  // PTEL_FOCK_HPP
