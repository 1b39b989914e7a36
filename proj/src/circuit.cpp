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

#include "ptel/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ptel {

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw NotUnitary("UnitaryMatrix: matrix is not square");
  const double defect = unitarity_defect(entries_);
  if (!(defect <= kTolerance)) {
    throw NotUnitary("UnitaryMatrix: |U U^dag - I| = " + std::to_string(defect));
  }
}

double UnitaryMatrix::unitarity_defect(const ComplexMatrix& m) {
  const ComplexMatrix g = m * m.adjoint();
  return (g - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

UnitaryMatrix build_qft_block(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("build_qft_block: need n >= 1");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_modes));
  ComplexMatrix q(n_modes, n_modes);
  for (int n = 1; n <= n_modes; ++n) {
    for (int k = 1; k <= n_modes; ++k) {
      // Reduce the exponent mod n before taking the angle to keep entries exact.
      const int e = (n * k) % n_modes;
      q(n - 1, k - 1) = std::polar(norm, 2.0 * std::numbers::pi * e / n_modes);
    }
  }
  return UnitaryMatrix(std::move(q));
}

void CircuitSpec::validate() const {
  if (n_photons < 2 || n_photons > 8) {
    throw std::invalid_argument("CircuitSpec: n_photons must be in [2, 8], got " +
                                std::to_string(n_photons));
  }
  if (!(loss_probability >= 0.0 && loss_probability <= 1.0)) {
    throw std::invalid_argument("CircuitSpec: loss probability must be in [0, 1], got " +
                                std::to_string(loss_probability));
  }
  if (!(star_loss_probability >= 0.0 && star_loss_probability <= 1.0)) {
    throw std::invalid_argument("CircuitSpec: star loss probability must be in [0, 1]");
  }
  if (!std::isfinite(signal_phase) || !std::isfinite(instrument_phase)) {
    throw std::invalid_argument("CircuitSpec: phases must be finite");
  }
}

namespace {

// Two-mode coupler acting as x -> t x + r y, y -> -r x + t y.
void apply_coupler(ComplexMatrix& layer, int x, int y, double t, double r) {
  layer(x, x) = t;
  layer(x, y) = r;
  layer(y, x) = -r;
  layer(y, y) = t;
}

}  // namespace

TelescopeCircuit build_telescope_circuit(const CircuitSpec& spec) {
  spec.validate();
  const ModeLayout layout = spec.layout();
  const int n = layout.n_photons();
  const int dim = layout.mode_count();
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

  ComplexMatrix split = id;
  const double h = 1.0 / std::sqrt(2.0);
  for (int s = 1; s <= n; ++s) {
    const Complex phase = s == 1 ? std::polar(1.0, spec.signal_phase) : Complex(1.0);
    const int a = layout.a(s), b = layout.b(s);
    split(a, a) = h;
    split(a, b) = h * phase;
    split(b, a) = h;
    split(b, b) = -h * phase;
  }

  ComplexMatrix shifter = id;
  shifter(layout.a(1), layout.a(1)) = std::polar(1.0, -spec.instrument_phase);

  ComplexMatrix loss = id;
  const double t = std::sqrt(1.0 - spec.loss_probability);
  const double r = std::sqrt(spec.loss_probability);
  for (int s = 2; s <= n; ++s) {
    apply_coupler(loss, layout.a(s), layout.c(s), t, r);
    apply_coupler(loss, layout.b(s), layout.d(s), t, r);
  }
  if (layout.has_star_loss_modes()) {
    const double ts = std::sqrt(1.0 - spec.star_loss_probability);
    const double rs = std::sqrt(spec.star_loss_probability);
    apply_coupler(loss, layout.a(1), layout.c(1), ts, rs);
    apply_coupler(loss, layout.b(1), layout.d(1), ts, rs);
  }

  ComplexMatrix qft = id;
  const ComplexMatrix block = build_qft_block(n).entries();
  qft.block(layout.a(1), layout.a(1), n, n) = block;
  qft.block(layout.b(1), layout.b(1), n, n) = block;

  TelescopeCircuit out{UnitaryMatrix(split * shifter * loss * qft), {}};
  for (int s = spec.star_present ? 1 : 2; s <= n; ++s) out.input_ports.push_back(layout.input_port(s));
  return out;
}

}  // namespace ptel
