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

#ifndef PTEL_TELESCOPE_HPP
#define PTEL_TELESCOPE_HPP

#include <optional>
#include <vector>

namespace ptel {

/// Micro-arcseconds per radian, (180 / pi) * 3600 * 1e6.
double microarcseconds_per_radian();

/// Physical operating point of the two-receiver telescope.
struct TelescopeScenario {
  int n_photons = 2;
  double epsilon = 0.01;              // star photons per mode
  double wavelength = 628e-9;         // m
  double attenuation_length = 1e4;    // m, fibre 1/e length L0
  double alpha = 4.0;                 // baseline in units of L0
  double instrument_phase = 0.0;      // rad

  double wavenumber() const;          // 2 pi / lambda
  double baseline() const;            // alpha * L0
  double transmissivity() const;      // e^{-alpha/4}: each photon covers L/2
  double loss_probability() const;    // 1 - e^{-alpha/2}
  /// Source phase for a small off-axis angle theta (rad).
  double source_phase(double theta) const;

  void validate() const;
};

/// p = 1 - e^{-alpha/2}. Throws std::invalid_argument for alpha < 0.
double loss_probability(double alpha);

/// Angular error 1 / (k L sqrt(F)) converted to micro-arcseconds, with F the
/// thermal-source Fisher information at the instrument phase (on-axis source).
/// Returns +infinity when F vanishes.
double resolution(const TelescopeScenario& scenario);

/// Same conversion for a given Fisher value.
double resolution_from_fisher(double fisher, double wavenumber, double baseline);

struct AlphaWindow {
  double lo = 1.0;
  double hi = 12.0;
};

struct CurvePoint {
  double alpha = 0.0;
  double phase = 0.0;   // best instrument phase at this alpha, in [0, pi]
  double fisher = 0.0;
  double delta_theta = 0.0;  // micro-arcseconds
};

struct ResolutionResult {
  double delta_theta_min = 0.0;  // micro-arcseconds
  double alpha_opt = 0.0;
  double phi_opt = 0.0;          // rad, representative in [0, pi]
  double fisher_at_opt = 0.0;
  /// The coarse-grid minimum sat on an end of the alpha window.
  bool boundary_minimum = false;
  /// The Fisher information varies by less than 1e-9 (relative) across the
  /// phase grid at the optimum, so phi_opt is not unique.
  bool phase_degenerate = false;
  std::vector<CurvePoint> curve;  // filled when requested
};

struct OptimizerSettings {
  double alpha_step = 0.05;
  double phase_step_fraction = 1.0 / 360.0;  // coarse phase step in units of pi
  double alpha_tolerance = 1e-3;
  double phase_tolerance = 1e-4;
  bool keep_curve = false;
  /// Use this loss probability at every alpha instead of 1 - e^{-alpha/2}.
  std::optional<double> loss_override;
};

/// Best instrument phase for a fixed loss: coarse grid over [0, 2 pi) then a
/// golden-section refinement; the returned phase is folded into [0, pi].
struct PhaseOptimum {
  double phase = 0.0;
  double fisher = 0.0;
  bool degenerate = false;
};
PhaseOptimum optimize_phase(int n_photons, double loss_probability, double epsilon,
                            const OptimizerSettings& settings = {});

/// Minimises the resolution over alpha in `window`, maximising the Fisher
/// information over the instrument phase at every alpha.
ResolutionResult optimize(int n_photons, double epsilon, double wavelength,
                          double attenuation_length, AlphaWindow window = {},
                          const OptimizerSettings& settings = {});

/// Resolution at the per-alpha optimal phase, ordered as `alphas`.
std::vector<CurvePoint> resolution_curve(int n_photons, double epsilon, double wavelength,
                                         double attenuation_length,
                                         const std::vector<double>& alphas,
                                         const OptimizerSettings& settings = {});

}  // namespace ptel

#endif  // PTEL_TELESCOPE_HPP
