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

#include "ptel/amplitude.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "ptel/numeric.hpp"

namespace ptel {

Complex permanent(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("permanent: matrix must be square");
  if (n > kMaxPermanentDim) {
    throw LimitExceeded("permanent: dimension " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxPermanentDim));
  }
  if (n == 0) return 1.0;

  // perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} A(i, j)
  std::vector<Complex> row_sums(n, 0.0);
  Complex total = 0.0;
  std::uint32_t gray = 0;
  const std::uint32_t subsets = 1u << n;
  for (std::uint32_t k = 1; k < subsets; ++k) {
    const int col = std::countr_zero(k);
    const std::uint32_t bit = 1u << col;
    gray ^= bit;
    const double dir = (gray & bit) ? 1.0 : -1.0;
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) {
      row_sums[i] += dir * m(i, col);
      prod *= row_sums[i];
    }
    total += (std::popcount(gray) & 1) ? -prod : prod;
  }
  return (n & 1) ? -total : total;
}

Complex output_amplitude(const UnitaryMatrix& u, std::span<const int> input_ports,
                         const FockConfiguration& config) {
  if (static_cast<int>(config.size()) != u.dim()) {
    throw std::invalid_argument("output_amplitude: configuration covers " +
                                std::to_string(config.size()) + " modes, circuit has " +
                                std::to_string(u.dim()));
  }
  const int n = static_cast<int>(input_ports.size());
  if (config.total() != n) {
    throw PhotonNumberMismatch("output_amplitude: configuration holds " +
                               std::to_string(config.total()) + " photons but " +
                               std::to_string(n) + " are injected");
  }
  for (int i = 0; i < n; ++i) {
    if (input_ports[i] < 0 || input_ports[i] >= u.dim()) {
      throw std::invalid_argument("output_amplitude: input port out of range");
    }
    for (int j = 0; j < i; ++j) {
      if (input_ports[i] == input_ports[j]) {
        throw std::invalid_argument("output_amplitude: input ports must be distinct");
      }
    }
  }

  ComplexMatrix sub(n, n);
  double factorials = 1.0;
  int col = 0;
  for (int mode = 0; mode < u.dim(); ++mode) {
    for (int rep = 0; rep < config[mode]; ++rep) {
      factorials *= rep + 1;
      for (int r = 0; r < n; ++r) sub(r, col) = u(input_ports[r], mode);
      ++col;
    }
  }
  return permanent(sub) / std::sqrt(factorials);
}

namespace {

CircuitSpec with_signal_phase(CircuitSpec spec, double phase) {
  spec.signal_phase = phase;
  return spec;
}

}  // namespace

PhaseSplitCircuit::PhaseSplitCircuit(const CircuitSpec& spec)
    : spec_(spec),
      zero_(build_telescope_circuit(with_signal_phase(spec, 0.0))),
      pi_(build_telescope_circuit(with_signal_phase(spec, std::numbers::pi))) {}

AmplitudePair PhaseSplitCircuit::split(const FockConfiguration& config) const {
  const Complex at0 = output_amplitude(zero_.unitary, zero_.input_ports, config);
  if (!spec_.star_present) return {at0, 0.0};
  const Complex atpi = output_amplitude(pi_.unitary, pi_.input_ports, config);
  return {(at0 + atpi) / 2.0, (at0 - atpi) / 2.0};
}

AmplitudePair split_amplitude(const CircuitSpec& spec, const FockConfiguration& config) {
  return PhaseSplitCircuit(spec).split(config);
}

ProbabilityDistribution permanent_distribution(const CircuitSpec& spec) {
  const PhaseSplitCircuit circuit(spec);
  const ModeLayout layout = spec.layout();
  const int photons = static_cast<int>(circuit.at_zero().input_ports.size());
  const auto configs = enumerate_configurations(photons, layout.mode_count());
  const Complex z = std::polar(1.0, spec.signal_phase);

  auto entries = parallel_map<ProbabilityEntry>(configs.size(), [&](std::size_t i) {
    const AmplitudePair pair = circuit.split(configs[i]);
    const Complex amp = pair.a0 + z * pair.a1;
    const double deriv = 2.0 * std::real(std::conj(amp) * Complex(0.0, 1.0) * z * pair.a1);
    return ProbabilityEntry{configs[i], std::norm(amp), deriv};
  });
  return ProbabilityDistribution(spec.n_photons, layout.mode_count(), spec.star_present,
                                 std::move(entries));
}

namespace {

// A polynomial in the creation operators whose coefficients are themselves
// affine in z = e^{i phi}: coefficient = c0 + z c1.
struct ZAffine {
  Complex c0;
  Complex c1;
};
using Monomials = std::map<std::vector<int>, ZAffine>;

struct LinearTerm {
  int mode;
  ZAffine coefficient;
};

// The single-photon state each source emits after propagation, written down
// term by term from the physical description rather than from the circuit
// matrix.
std::vector<std::vector<LinearTerm>> source_forms(const CircuitSpec& spec) {
  const ModeLayout layout = spec.layout();
  const int n = layout.n_photons();
  const double split = 1.0 / std::sqrt(2.0);
  const double fourier = 1.0 / std::sqrt(static_cast<double>(n));
  const double eta = std::sqrt(1.0 - spec.loss_probability);
  const double leak = std::sqrt(spec.loss_probability);
  const double eta_star = std::sqrt(1.0 - spec.star_loss_probability);
  const double leak_star = std::sqrt(spec.star_loss_probability);
  const Complex inst = std::polar(1.0, -spec.instrument_phase);

  std::vector<std::vector<LinearTerm>> forms;
  for (int s = spec.star_present ? 1 : 2; s <= n; ++s) {
    std::vector<LinearTerm> form;
    const bool star = s == 1;
    const double t = star ? eta_star : eta;
    for (int k = 1; k <= n; ++k) {
      const Complex w = std::polar(fourier, 2.0 * std::numbers::pi * ((s * k) % n) / n);
      const Complex on_a = split * t * w * (star ? inst : Complex(1.0));
      const Complex on_b = split * t * w;
      form.push_back({layout.a(k), {on_a, 0.0}});
      form.push_back({layout.b(k), star ? ZAffine{0.0, on_b} : ZAffine{on_b, 0.0}});
    }
    const double r = star ? leak_star : leak;
    if (r > 0.0) {
      form.push_back({layout.c(s), {split * r * (star ? inst : Complex(1.0)), 0.0}});
      form.push_back({layout.d(s), star ? ZAffine{0.0, split * r} : ZAffine{split * r, 0.0}});
    }
    forms.push_back(std::move(form));
  }
  return forms;
}

}  // namespace

ProbabilityDistribution oracle_distribution(const CircuitSpec& spec) {
  spec.validate();
  const ModeLayout layout = spec.layout();
  const int photons = spec.star_present ? spec.n_photons : spec.n_photons - 1;
  if (photons > kMaxOraclePhotons) {
    throw LimitExceeded("oracle_distribution: " + std::to_string(photons) +
                        " photons exceeds the expansion limit " +
                        std::to_string(kMaxOraclePhotons));
  }
  const int modes = layout.mode_count();

  Monomials poly;
  poly[std::vector<int>(modes, 0)] = {1.0, 0.0};
  for (const auto& form : source_forms(spec)) {
    Monomials next;
    for (const auto& [exponents, coeff] : poly) {
      for (const auto& term : form) {
        std::vector<int> e = exponents;
        ++e[term.mode];
        // z appears at most once in the whole product (only the star form
        // carries it), so z^2 terms cannot arise.
        const ZAffine& t = term.coefficient;
        ZAffine& slot = next[e];
        slot.c0 += coeff.c0 * t.c0;
        slot.c1 += coeff.c0 * t.c1 + coeff.c1 * t.c0;
      }
    }
    poly = std::move(next);
  }

  const Complex z = std::polar(1.0, spec.signal_phase);
  std::vector<ProbabilityEntry> entries;
  for (const auto& config : enumerate_configurations(photons, modes)) {
    std::vector<int> key(config.counts().begin(), config.counts().end());
    auto it = poly.find(key);
    ZAffine c{0.0, 0.0};
    if (it != poly.end()) c = it->second;
    // (a^dag)^d |0> = sqrt(d!) |d>
    double norm = 1.0;
    for (int d : key) norm *= std::tgamma(d + 1.0);
    const double scale = std::sqrt(norm);
    const Complex a0 = c.c0 * scale, a1 = c.c1 * scale;
    const Complex amp = a0 + z * a1;
    const double deriv = 2.0 * std::real(std::conj(amp) * Complex(0.0, 1.0) * z * a1);
    entries.push_back({config, std::norm(amp), deriv});
  }
  return ProbabilityDistribution(spec.n_photons, modes, spec.star_present, std::move(entries));
}

}  // namespace ptel
