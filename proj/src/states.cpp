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

#include "nogo/states.hpp"

#include <cmath>
#include <string>

#include "nogo/error.hpp"

namespace nogo {

namespace {

void require_finite(std::span<const Complex> v) {
    for (const auto &e : v) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw Error(ErrorCode::NonFiniteEntry, "state amplitudes contain NaN or infinity");
        }
    }
}

void require_dim(std::size_t dim) {
    if (dim < 2) {
        throw Error(ErrorCode::InvalidState, "state dimension must be at least 2, got " + std::to_string(dim));
    }
}

}  // namespace

PureState PureState::from_amplitudes(CVector amplitudes) {
    require_dim(amplitudes.size());
    require_finite(amplitudes);
    double n = norm(amplitudes);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw Error(ErrorCode::InvalidState, "state norm deviates from 1 by " + std::to_string(std::abs(n - 1.0)));
    }
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    require_dim(dim);
    if (index >= dim) {
        throw Error(ErrorCode::InvalidState, "basis index out of range");
    }
    CVector v(dim);
    v[index] = 1.0;
    return PureState(std::move(v));
}

ComplexMatrix PureState::density() const {
    return ComplexMatrix::outer(amplitudes_, amplitudes_);
}

PureState PureState::with_global_phase(Complex u) const {
    CVector v = amplitudes_;
    for (auto &e : v) {
        e *= u;
    }
    return PureState(std::move(v));
}

PureState normalize(std::span<const Complex> v) {
    require_dim(v.size());
    require_finite(v);
    double n = norm(v);
    if (n <= kNullNormThreshold) {
        throw Error(ErrorCode::NullVector, "cannot normalize a vector of norm " + std::to_string(n));
    }
    CVector out(v.begin(), v.end());
    for (auto &e : out) {
        e /= n;
    }
    return PureState(std::move(out));
}

double fidelity(const PureState &a, const PureState &b) {
    return std::norm(overlap(a, b));
}

ComplexMatrix CanonicalForm::density() const {
    return ComplexMatrix::outer(amplitudes, amplitudes);
}

CanonicalForm canonicalize(const PureState &s) {
    CanonicalForm out{CVector(s.amplitudes().begin(), s.amplitudes().end())};
    for (auto &pivot : out.amplitudes) {
        double r = std::abs(pivot);
        if (r > kCanonicalPivotFloor) {
            Complex u = std::conj(pivot) / r;
            for (auto &e : out.amplitudes) {
                e *= u;
            }
            pivot = r;
            break;
        }
    }
    return out;
}

double max_abs_difference(const CanonicalForm &a, const CanonicalForm &b) {
    if (a.amplitudes.size() != b.amplitudes.size()) {
        throw Error(ErrorCode::DimensionMismatch, "canonical forms of different dimension");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.amplitudes.size(); ++k) {
        m = std::max(m, std::abs(a.amplitudes[k] - b.amplitudes[k]));
    }
    return m;
}

StateSet::StateSet(std::vector<PureState> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw Error(ErrorCode::EmptySet, "state set must be nonempty");
    }
    dim_ = members_.front().dim();
    for (const auto &m : members_) {
        if (m.dim() != dim_) {
            throw Error(
                ErrorCode::DimensionMismatch,
                "state set mixes dimensions " + std::to_string(dim_) + " and " + std::to_string(m.dim()));
        }
    }
    const std::size_t n = members_.size();
    gram_ = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        for (const auto &e : members_[i].amplitudes()) {
            d += std::norm(e);
        }
        gram_(i, i) = d;
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex g = overlap(members_[i], members_[j]);
            gram_(i, j) = g;
            gram_(j, i) = std::conj(g);
        }
    }
}

ComplexMatrix gram(const StateSet &states) {
    return states.gram();
}

ComplexMatrix amplitude_matrix(const StateSet &states) {
    ComplexMatrix m(states.dim(), states.size());
    for (std::size_t c = 0; c < states.size(); ++c) {
        for (std::size_t r = 0; r < states.dim(); ++r) {
            m(r, c) = states[c][r];
        }
    }
    return m;
}

bool is_linearly_independent(const StateSet &states, double tol) {
    return numerical_rank(states.gram(), tol).rank == states.size();
}

StateSet reciprocal_basis(const StateSet &states) {
    if (!is_linearly_independent(states, kDefaultRankTolerance)) {
        throw Error(
            ErrorCode::LinearlyDependentInput,
            "states are linearly dependent; no reciprocal basis (and no unambiguous discrimination) exists");
    }
    const std::size_t n = states.size();
    ComplexMatrix g_inv = invert(states.gram());
    std::vector<PureState> duals;
    duals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        CVector v(states.dim());
        for (std::size_t j = 0; j < n; ++j) {
            Complex w = g_inv(j, i);
            for (std::size_t k = 0; k < states.dim(); ++k) {
                v[k] += w * states[j][k];
            }
        }
        PureState dual = normalize(v);
        Complex ov = overlap(dual, states[i]);
        duals.push_back(dual.with_global_phase(ov / std::abs(ov)));
    }
    return StateSet(std::move(duals));
}

}  // namespace nogo
