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

#include "ptel/telescope.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ptel/fisher.hpp"
#include "ptel/numeric.hpp"

namespace ptel {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Golden-section search for a maximum of f on [lo, hi], assumed unimodal there.
template <typename Fn>
double golden_maximize(Fn&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tolerance) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 >= f2 ? x1 : x2;
}

double fold_phase(double phase) {
  phase = std::fmod(phase, kTwoPi);
  if (phase < 0.0) phase += kTwoPi;
  return phase > std::numbers::pi ? kTwoPi - phase : phase;
}

PhaseOptimum best_phase(const ThermalModel& model, double epsilon,
                        const OptimizerSettings& settings) {
  const int points = static_cast<int>(std::lround(2.0 / settings.phase_step_fraction));
  const double step = kTwoPi / points;
  std::vector<double> grid(points);
  int best = 0;
  for (int j = 0; j < points; ++j) {
    grid[j] = model.fisher(j * step, epsilon);
    if (grid[j] > grid[best]) best = j;
  }
  const double peak = grid[best];
  if (!(peak > 0.0)) return {0.0, 0.0, true};
  // Ties (to roundoff) go to the smallest phase.
  for (int j = 0; j < best; ++j) {
    if (grid[j] >= peak * (1.0 - 1e-12)) {
      best = j;
      break;
    }
  }

  int plateau = 0;
  for (double f : grid) {
    if (f >= peak * (1.0 - 1e-9)) ++plateau;
  }

  const double center = best * step;
  if (plateau > points / 2) return {fold_phase(center), peak, true};
  const double phase = golden_maximize([&](double x) { return model.fisher(x, epsilon); },
                                       center - step, center + step, settings.phase_tolerance);
  const double refined = model.fisher(phase, epsilon);
  if (refined < peak) return {fold_phase(center), peak, false};
  return {fold_phase(phase), refined, false};
}

struct AlphaSample {
  double alpha = 0.0;
  PhaseOptimum phase;
  double delta_theta = 0.0;
};

AlphaSample evaluate_alpha(int n_photons, double epsilon, double wavenumber,
                           double attenuation_length, double alpha,
                           const OptimizerSettings& settings) {
  const ThermalModel model(n_photons, settings.loss_override.value_or(loss_probability(alpha)));
  AlphaSample s;
  s.alpha = alpha;
  s.phase = best_phase(model, epsilon, settings);
  s.delta_theta = resolution_from_fisher(s.phase.fisher, wavenumber, alpha * attenuation_length);
  return s;
}

void check_physical(double epsilon, double wavelength, double attenuation_length) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must be in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  if (!(attenuation_length > 0.0)) {
    throw std::invalid_argument("attenuation length must be positive");
  }
}

}  // namespace

double microarcseconds_per_radian() { return 180.0 / std::numbers::pi * 3600.0 * 1e6; }

double TelescopeScenario::wavenumber() const { return kTwoPi / wavelength; }
double TelescopeScenario::baseline() const { return alpha * attenuation_length; }
double TelescopeScenario::transmissivity() const { return std::exp(-alpha / 4.0); }
double TelescopeScenario::loss_probability() const { return ptel::loss_probability(alpha); }
double TelescopeScenario::source_phase(double theta) const {
  return wavenumber() * baseline() * theta;
}

void TelescopeScenario::validate() const {
  if (n_photons < 2 || n_photons > 8) {
    throw std::invalid_argument("n_photons must be in [2, 8], got " + std::to_string(n_photons));
  }
  check_physical(epsilon, wavelength, attenuation_length);
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be a finite non-negative number");
  }
  if (!std::isfinite(instrument_phase)) throw std::invalid_argument("phase must be finite");
}

double loss_probability(double alpha) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("loss_probability: alpha must be >= 0, got " +
                                std::to_string(alpha));
  }
  return -std::expm1(-alpha / 2.0);
}

double resolution_from_fisher(double fisher, double wavenumber, double baseline) {
  if (!(fisher > 0.0) || !(baseline > 0.0)) return std::numeric_limits<double>::infinity();
  return microarcseconds_per_radian() / (wavenumber * baseline * std::sqrt(fisher));
}

double resolution(const TelescopeScenario& scenario) {
  scenario.validate();
  const ThermalModel model(scenario.n_photons, scenario.loss_probability());
  const double fisher = model.fisher(scenario.instrument_phase, scenario.epsilon);
  return resolution_from_fisher(fisher, scenario.wavenumber(), scenario.baseline());
}

PhaseOptimum optimize_phase(int n_photons, double loss_probability, double epsilon,
                            const OptimizerSettings& settings) {
  return best_phase(ThermalModel(n_photons, loss_probability), epsilon, settings);
}

std::vector<CurvePoint> resolution_curve(int n_photons, double epsilon, double wavelength,
                                         double attenuation_length,
                                         const std::vector<double>& alphas,
                                         const OptimizerSettings& settings) {
  check_physical(epsilon, wavelength, attenuation_length);
  const double k = kTwoPi / wavelength;
  return parallel_map<CurvePoint>(alphas.size(), [&](std::size_t i) {
    const AlphaSample s =
        evaluate_alpha(n_photons, epsilon, k, attenuation_length, alphas[i], settings);
    return CurvePoint{s.alpha, s.phase.phase, s.phase.fisher, s.delta_theta};
  });
}

ResolutionResult optimize(int n_photons, double epsilon, double wavelength,
                          double attenuation_length, AlphaWindow window,
                          const OptimizerSettings& settings) {
  check_physical(epsilon, wavelength, attenuation_length);
  if (!(window.lo > 0.0 && window.hi <= 20.0 && window.lo < window.hi)) {
    throw std::invalid_argument("optimize: alpha window must satisfy 0 < lo < hi <= 20");
  }
  std::vector<double> alphas;
  const int steps = static_cast<int>(std::floor((window.hi - window.lo) / settings.alpha_step + 1e-9));
  for (int i = 0; i <= steps; ++i) alphas.push_back(window.lo + i * settings.alpha_step);
  if (window.hi - alphas.back() > 1e-9) alphas.push_back(window.hi);

  const auto curve =
      resolution_curve(n_photons, epsilon, wavelength, attenuation_length, alphas, settings);
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].delta_theta < curve[best].delta_theta) best = i;
  }

  ResolutionResult out;
  out.boundary_minimum = best == 0 || best + 1 == curve.size();
  const double k = kTwoPi / wavelength;
  const double lo = alphas[best == 0 ? 0 : best - 1];
  const double hi = alphas[best + 1 == alphas.size() ? best : best + 1];
  const double alpha = golden_maximize(
      [&](double a) {
        return -evaluate_alpha(n_photons, epsilon, k, attenuation_length, a, settings).delta_theta;
      },
      lo, hi, settings.alpha_tolerance);

  AlphaSample s = evaluate_alpha(n_photons, epsilon, k, attenuation_length, alpha, settings);
  if (s.delta_theta > curve[best].delta_theta) {
    s = evaluate_alpha(n_photons, epsilon, k, attenuation_length, alphas[best], settings);
  }
  out.delta_theta_min = s.delta_theta;
  out.alpha_opt = s.alpha;
  out.phi_opt = s.phase.phase;
  out.fisher_at_opt = s.phase.fisher;
  out.phase_degenerate = s.phase.degenerate;
  if (settings.keep_curve) out.curve = curve;
  return out;
}

}  // namespace ptel
