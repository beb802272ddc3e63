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

#ifndef NOGO_STATES_HPP
#define NOGO_STATES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "nogo/linalg.hpp"

namespace nogo {

inline constexpr double kNormTolerance = 1e-12;
/// Vectors at or below this norm are treated as null rather than roundoff.
inline constexpr double kNullNormThreshold = 1e-10;
/// First amplitude above this modulus is the phase pivot of the canonical form.
inline constexpr double kCanonicalPivotFloor = 1e-10;

/// Unit-norm amplitude vector of dimension >= 2.
class PureState {
   public:
    /// Accepts amplitudes whose norm is within 1e-12 of one; use normalize()
    /// for arbitrary vectors.
    static PureState from_amplitudes(CVector amplitudes);
    /// Computational basis vector e_index.
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    const Complex &operator[](std::size_t k) const {
        return amplitudes_[k];
    }

    ComplexMatrix density() const;
    /// u * |this>; u should have unit modulus.
    PureState with_global_phase(Complex u) const;

    friend bool operator==(const PureState &, const PureState &) = default;

   private:
    explicit PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    }
    friend PureState normalize(std::span<const Complex> v);

    CVector amplitudes_;
};

/// v / ||v||. Throws NullVector when ||v|| <= 1e-10.
PureState normalize(std::span<const Complex> v);

inline Complex overlap(const PureState &a, const PureState &b) {
    return inner(a.amplitudes(), b.amplitudes());
}

/// |<a|b>|^2
double fidelity(const PureState &a, const PureState &b);

/// Representative of the global-phase class of a state: the first amplitude
/// with modulus above 1e-10 is rotated onto the positive real axis.
struct CanonicalForm {
    CVector amplitudes;

    ComplexMatrix density() const;
    friend bool operator==(const CanonicalForm &, const CanonicalForm &) = default;
};

CanonicalForm canonicalize(const PureState &s);
double max_abs_difference(const CanonicalForm &a, const CanonicalForm &b);

/// Ordered, nonempty collection of states sharing one dimension. The Gram
/// matrix G[i][j] = <s_i|s_j> is computed on construction.
class StateSet {
   public:
    explicit StateSet(std::vector<PureState> members);

    std::size_t size() const noexcept {
        return members_.size();
    }
    std::size_t dim() const noexcept {
        return dim_;
    }
    const PureState &operator[](std::size_t k) const {
        return members_[k];
    }
    const std::vector<PureState> &members() const noexcept {
        return members_;
    }
    auto begin() const noexcept {
        return members_.begin();
    }
    auto end() const noexcept {
        return members_.end();
    }
    const ComplexMatrix &gram() const noexcept {
        return gram_;
    }

   private:
    std::size_t dim_ = 0;
    std::vector<PureState> members_;
    ComplexMatrix gram_;
};

ComplexMatrix gram(const StateSet &states);
/// dim x n matrix whose columns are the member amplitudes.
ComplexMatrix amplitude_matrix(const StateSet &states);

bool is_linearly_independent(const StateSet &states, double tol = kDefaultRankTolerance);

/// Dual vectors r_i with <r_i|s_j> = 0 for i != j and <r_i|s_i> > 0, each of
/// unit norm. Built from the inverse Gram: r_i ~ sum_j (G^-1)_{ji} s_j.
/// Throws LinearlyDependentInput when the set is dependent at 1e-9.
StateSet reciprocal_basis(const StateSet &states);

}  // namespace nogo

#endif
