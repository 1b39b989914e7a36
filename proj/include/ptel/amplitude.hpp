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

#ifndef PTEL_AMPLITUDE_HPP
#define PTEL_AMPLITUDE_HPP

#include <complex>
#include <span>
#include <stdexcept>

#include "ptel/circuit.hpp"
#include "ptel/distribution.hpp"
#include "ptel/fock.hpp"

namespace ptel {

class PhotonNumberMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxPermanentDim = 12;
inline constexpr int kMaxOraclePhotons = 4;

/// Exact permanent by Ryser's inclusion-exclusion formula visited in Gray-code
/// order, O(2^n n). Throws LimitExceeded above kMaxPermanentDim.
Complex permanent(const ComplexMatrix& m);

/// <config| U |single photons on input_ports>, with the multi-photon output
/// normalisation 1/sqrt(prod d_j!).
Complex output_amplitude(const UnitaryMatrix& u, std::span<const int> input_ports,
                         const FockConfiguration& config);

/// Output amplitude split as A(phi) = a0 + e^{i phi} a1.
struct AmplitudePair {
  Complex a0;
  Complex a1;

  Complex at(double phase) const { return a0 + std::polar(1.0, phase) * a1; }
};

/// The telescope circuit evaluated at phi = 0 and phi = pi with every other
/// parameter held, so that each amplitude can be split exactly as
/// a0 = (A(0) + A(pi)) / 2, a1 = (A(0) - A(pi)) / 2.
class PhaseSplitCircuit {
 public:
  explicit PhaseSplitCircuit(const CircuitSpec& spec);

  const CircuitSpec& spec() const { return spec_; }
  const TelescopeCircuit& at_zero() const { return zero_; }

  AmplitudePair split(const FockConfiguration& config) const;

 private:
  CircuitSpec spec_;
  TelescopeCircuit zero_;
  TelescopeCircuit pi_;
};

AmplitudePair split_amplitude(const CircuitSpec& spec, const FockConfiguration& config);

/// Distribution over every mode (detectors and loss ancillas) via permanents,
/// evaluated at spec.signal_phase.
ProbabilityDistribution permanent_distribution(const CircuitSpec& spec);

/// Independent reference: multiplies out the product of the per-source linear
/// forms in creation operators and reads probabilities off the collected
/// monomials. Limited to kMaxOraclePhotons photons.
ProbabilityDistribution oracle_distribution(const CircuitSpec& spec);

}  // namespace ptel

#endif  // PTEL_AMPLITUDE_HPP
