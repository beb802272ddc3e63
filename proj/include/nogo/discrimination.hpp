// Copyright 2026 The nogo Authors
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

#ifndef NOGO_DISCRIMINATION_HPP
#define NOGO_DISCRIMINATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nogo/linalg.hpp"
#include "nogo/rng.hpp"
#include "nogo/states.hpp"

namespace nogo {

inline constexpr double kUnambiguityTolerance = 1e-9;
inline constexpr double kPovmTolerance = 1e-10;

/// Unambiguous discrimination POVM restricted to the span of the hypotheses.
/// E_j = s |r_j><r_j| for the reciprocal vectors r_j and a single scale s
/// chosen as large as E_0 = P_span - sum_j E_j >= 0 allows.
struct USDMeasurement {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> elements;
    ComplexMatrix inconclusive;
    ComplexMatrix span_projector;
    double scale = 0.0;

    std::size_t size() const noexcept {
        return elements.size();
    }
};

/// Throws LinearlyDependentInput when the hypotheses are dependent: no
/// measurement can then identify each of them with nonzero probability.
USDMeasurement build_usd(const StateSet &hypotheses);

/// Projector onto span{s_i}: A G^{-1} A^H.
ComplexMatrix span_projector(const StateSet &states);

/// Tr(E_j rho_j) per hypothesis. Throws MeasurementMismatch when `m` was not
/// built for these hypotheses.
std::vector<double> success_probabilities(const USDMeasurement &m, const StateSet &hypotheses);

/// Born distribution over outcomes; index 0 is inconclusive, index k the
/// k-th hypothesis (1-based). Negative roundoff is clamped to zero and the
/// distribution renormalized when its sum is within 1e-9 of one.
std::vector<double> outcome_probabilities(const USDMeasurement &m, const PureState &state);

/// A single measurement shot; returns 0 for inconclusive.
std::size_t measure_once(const USDMeasurement &m, const PureState &state, Rng &rng);

struct DiscriminationOutcome {
    std::uint64_t trials = 0;
    /// counts[0] inconclusive, counts[k] label k.
    std::vector<std::uint64_t> counts;

    std::uint64_t inconclusive() const {
        return counts.empty() ? 0 : counts[0];
    }
    std::uint64_t conclusive() const {
        return trials - inconclusive();
    }
};

DiscriminationOutcome simulate_usd(const USDMeasurement &m, const PureState &truth, std::uint64_t trials, Rng &rng);

struct CloneResult {
    bool succeeded = false;
    std::optional<std::pair<PureState, PureState>> copies;
    /// |<truth|copy_1>|^2 |<truth|copy_2>|^2, zero on failure.
    double fidelity_to_input = 0.0;
    /// Outcome of the identifying measurement, 0 for inconclusive.
    std::size_t label = 0;
};

/// Identify-then-prepare cloning: one USD shot, and on a conclusive outcome
/// two fresh copies of the identified hypothesis.
CloneResult probabilistic_clone(const StateSet &hypotheses, const PureState &truth, Rng &rng);
CloneResult probabilistic_clone(
    const USDMeasurement &m, const StateSet &hypotheses, const PureState &truth, Rng &rng);

}  // namespace nogo

#endif
