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

#include "nogo/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nogo/error.hpp"

namespace nogo {

namespace {

constexpr double kBornSumTolerance = 1e-9;
constexpr double kMembershipTolerance = 1e-10;

ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    ComplexMatrix out = m + m.adjoint();
    out *= 0.5;
    return out;
}

void require_membership(const StateSet &hypotheses, const PureState &truth) {
    if (truth.dim() != hypotheses.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "truth state dimension differs from the hypotheses");
    }
    for (const auto &h : hypotheses) {
        if (fidelity(h, truth) >= 1.0 - kMembershipTolerance) {
            return;
        }
    }
    throw Error(ErrorCode::InvalidParams, "truth state is not one of the hypotheses");
}

}  // namespace

ComplexMatrix span_projector(const StateSet &states) {
    ComplexMatrix a = amplitude_matrix(states);
    return hermitian_part(a * invert(states.gram()) * a.adjoint());
}

USDMeasurement build_usd(const StateSet &hypotheses) {
    if (hypotheses.size() > hypotheses.dim()) {
        throw Error(
            ErrorCode::LinearlyDependentInput,
            std::to_string(hypotheses.size()) + " states in dimension " + std::to_string(hypotheses.dim()) +
                " are necessarily linearly dependent");
    }
    StateSet duals = reciprocal_basis(hypotheses);

    USDMeasurement m;
    m.dim = hypotheses.dim();
    ComplexMatrix dual_sum(m.dim, m.dim);
    for (const auto &r : duals) {
        dual_sum += r.density();
    }
    m.scale = 1.0 / max_eigenvalue_hermitian(dual_sum);
    m.span_projector = span_projector(hypotheses);
    m.inconclusive = m.span_projector;
    for (const auto &r : duals) {
        ComplexMatrix e = r.density();
        e *= m.scale;
        m.inconclusive -= e;
        m.elements.push_back(std::move(e));
    }
    m.inconclusive = hermitian_part(m.inconclusive);
    return m;
}

std::vector<double> success_probabilities(const USDMeasurement &m, const StateSet &hypotheses) {
    if (m.size() != hypotheses.size() || m.dim != hypotheses.dim()) {
        throw Error(
            ErrorCode::MeasurementMismatch, "measurement has " + std::to_string(m.size()) + " elements in dimension " +
                                                std::to_string(m.dim) + "; hypotheses have " +
                                                std::to_string(hypotheses.size()) + " in dimension " +
                                                std::to_string(hypotheses.dim()));
    }
    std::vector<double> out(hypotheses.size());
    for (std::size_t j = 0; j < hypotheses.size(); ++j) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            double p = expectation(m.elements[k], hypotheses[j].amplitudes()).real();
            if (k == j) {
                out[j] = p;
            } else if (p > kUnambiguityTolerance) {
                throw Error(
                    ErrorCode::MeasurementMismatch,
                    "element " + std::to_string(k + 1) + " fires on hypothesis " + std::to_string(j + 1) +
                        "; measurement was built for a different set");
            }
        }
        if (!(out[j] > 0.0)) {
            throw Error(ErrorCode::MeasurementMismatch, "hypothesis " + std::to_string(j + 1) + " is never identified");
        }
    }
    return out;
}

std::vector<double> outcome_probabilities(const USDMeasurement &m, const PureState &state) {
    if (state.dim() != m.dim) {
        throw Error(ErrorCode::DimensionMismatch, "state dimension differs from the measurement");
    }
    std::vector<double> p(m.size() + 1);
    p[0] = std::max(0.0, expectation(m.inconclusive, state.amplitudes()).real());
    for (std::size_t k = 0; k < m.size(); ++k) {
        p[k + 1] = std::max(0.0, expectation(m.elements[k], state.amplitudes()).real());
    }
    double total = 0.0;
    for (double x : p) {
        total += x;
    }
    if (std::abs(total - 1.0) > kBornSumTolerance) {
        throw Error(
            ErrorCode::Internal, "Born probabilities sum to " + std::to_string(total) +
                                     "; the measured state does not lie in the hypothesis span");
    }
    for (double &x : p) {
        x /= total;
    }
    return p;
}

namespace {

std::size_t sample(const std::vector<double> &p, Rng &rng) {
    double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += p[k];
        if (u < acc) {
            return k;
        }
    }
    // u landed in the roundoff gap above the last partial sum.
    for (std::size_t k = p.size(); k-- > 0;) {
        if (p[k] > 0.0) {
            return k;
        }
    }
    return 0;
}

}  // namespace

std::size_t measure_once(const USDMeasurement &m, const PureState &state, Rng &rng) {
    return sample(outcome_probabilities(m, state), rng);
}

DiscriminationOutcome simulate_usd(const USDMeasurement &m, const PureState &truth, std::uint64_t trials, Rng &rng) {
    DiscriminationOutcome out;
    out.trials = trials;
    out.counts.assign(m.size() + 1, 0);
    if (trials == 0) {
        return out;
    }
    std::vector<double> p = outcome_probabilities(m, truth);
    for (std::uint64_t t = 0; t < trials; ++t) {
        ++out.counts[sample(p, rng)];
    }
    return out;
}

CloneResult probabilistic_clone(const StateSet &hypotheses, const PureState &truth, Rng &rng) {
    return probabilistic_clone(build_usd(hypotheses), hypotheses, truth, rng);
}

CloneResult probabilistic_clone(const USDMeasurement &m, const StateSet &hypotheses, const PureState &truth, Rng &rng) {
    require_membership(hypotheses, truth);
    if (m.size() != hypotheses.size() || m.dim != hypotheses.dim()) {
        throw Error(ErrorCode::MeasurementMismatch, "measurement was built for a different hypothesis set");
    }
    CloneResult out;
    out.label = measure_once(m, truth, rng);
    if (out.label == 0) {
        return out;
    }
    const PureState &identified = hypotheses[out.label - 1];
    out.succeeded = true;
    out.copies.emplace(identified, identified);
    out.fidelity_to_input = fidelity(truth, out.copies->first) * fidelity(truth, out.copies->second);
    return out;
}

}  // namespace nogo
