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

#ifndef PTEL_CIRCUIT_HPP
#define PTEL_CIRCUIT_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ptel/fock.hpp"

namespace ptel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Raised when a matrix that must be unitary is not (to 1e-12 entrywise).
class NotUnitary : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mode transfer matrix of a passive linear-optical network.
///
/// Row i holds the image of the input creation operator: a_i^dag maps to
/// sum_k T(i, k) a_k^dag. Composition of layers applied in order L1, L2, ...
/// is therefore the product T1 * T2 * ...
class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Throws NotUnitary if U U^dag deviates from identity by more than kTolerance.
  explicit UnitaryMatrix(ComplexMatrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  /// Largest entrywise deviation of U U^dag from identity.
  static double unitarity_defect(const ComplexMatrix& m);

 private:
  ComplexMatrix entries_;
};

/// Discrete Fourier block with entry (n, k) = omega^{n k} / sqrt(n_modes),
/// omega = exp(2 pi i / n_modes) and n, k counted from 1.
UnitaryMatrix build_qft_block(int n_modes);

struct CircuitSpec {
  int n_photons = 2;
  double signal_phase = 0.0;      // phi, carried on the b_1 branch of the star splitter
  double instrument_phase = 0.0;  // adjustable phase shifter on a_1
  double loss_probability = 0.0;  // p = 1 - eta^2 on every ground-photon line
  bool star_present = true;
  /// Optional loss on the star path; adds c_1/d_1 ancillas. Off by default.
  double star_loss_probability = 0.0;

  ModeLayout layout() const { return ModeLayout(n_photons, star_loss_probability > 0.0); }
  /// Only phi + instrument_phase is observable.
  double total_phase() const { return signal_phase + instrument_phase; }

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

struct TelescopeCircuit {
  UnitaryMatrix unitary;
  /// Input rows, one per injected photon, ordered by source index.
  std::vector<int> input_ports;
};

/// Full interferometer over all physical and loss modes:
///   L1  50:50 split of every source into (a_n, b_n), e^{i phi} on b_1
///   L2  e^{-i phi_inst} on a_1, so that the star pair sees phi + phi_inst
///   L3  loss couplers a_n<->c_n, b_n<->d_n with transmissivity sqrt(1-p), n >= 2
///   L4  identical QFT blocks on (a_1..a_N) and (b_1..b_N)
TelescopeCircuit build_telescope_circuit(const CircuitSpec& spec);

}  // namespace ptel

#endif  // PTEL_CIRCUIT_HPP
