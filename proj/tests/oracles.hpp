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

// Independent reference implementations shared by the unit tests.

#ifndef PTEL_TESTS_ORACLES_HPP
#define PTEL_TESTS_ORACLES_HPP

#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "ptel/circuit.hpp"
#include "ptel/fisher.hpp"

namespace ptel::testing {

/// Permanent as the sum over all permutations.
inline Complex brute_force_permanent(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    Complex term = 1.0;
    for (int i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void compositions(int photons, int modes, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
  if (modes == 1) {
    prefix.push_back(photons);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 0; k <= photons; ++k) {
    prefix.push_back(k);
    compositions(photons - k, modes - 1, prefix, out);
    prefix.pop_back();
  }
}

/// Weak compositions by recursion on the first part, smallest first.
inline std::vector<std::vector<int>> recursive_compositions(int photons, int modes) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  compositions(photons, modes, prefix, out);
  return out;
}

/// Central difference of every detection probability in the signal phase.
inline std::vector<double> finite_difference(const CircuitSpec& spec, double h) {
  CircuitSpec up = spec;
  CircuitSpec down = spec;
  up.signal_phase += h;
  down.signal_phase -= h;
  const ProbabilityDistribution pu = detection_distribution(up);
  const ProbabilityDistribution pd = detection_distribution(down);
  std::vector<double> out(pu.size());
  for (std::size_t i = 0; i < pu.size(); ++i) {
    out[i] = (pu.entries()[i].probability - pd.entries()[i].probability) / (2.0 * h);
  }
  return out;
}

inline ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

}  // namespace ptel::testing

#endif  // PTEL_TESTS_ORACLES_HPP
