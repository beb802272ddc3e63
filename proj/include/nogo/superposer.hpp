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

#ifndef NOGO_SUPERPOSER_HPP
#define NOGO_SUPERPOSER_HPP

#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "nogo/rng.hpp"
#include "nogo/states.hpp"

namespace nogo {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2*pi).
double wrap_angle(double theta);

// Phase policies. Each one sees the inputs only through their canonical
// forms, so a policy cannot tell e^{ia}|psi> from |psi>.

struct ConstantPhase {
    double theta = 0.0;
};

/// theta = arg <canonical(psi)|canonical(phi)>, or 0 when the overlap
/// modulus is below 1e-10.
struct OverlapArgPhase {};

/// theta = 2*pi * FNV-1a-64(canonical amplitudes rounded to 12 decimals).
struct CanonicalHashPhase {};

/// Lookup keyed by the canonical input pair, with a constant fallback. Lets
/// a caller fix a different phase for each member of a known input set.
struct PinnedPhase {
    struct Entry {
        CanonicalForm psi;
        CanonicalForm phi;
        double theta = 0.0;
    };
    std::vector<Entry> entries;
    double fallback = 0.0;

    void pin(const PureState &psi, const PureState &phi, double theta);
};

using PhasePolicy = std::variant<ConstantPhase, OverlapArgPhase, CanonicalHashPhase, PinnedPhase>;

std::string_view phase_policy_name(const PhasePolicy &policy);
double policy_phase(const PhasePolicy &policy, const PureState &psi, const PureState &phi);
std::uint64_t canonical_pair_hash(const CanonicalForm &psi, const CanonicalForm &phi);

struct AlwaysSucceed {};
struct ConstantSuccess {
    double p = 1.0;
};
/// p = (1 + |<psi|phi>|^2) / 2
struct OverlapScaledSuccess {};

using SuccessPolicy = std::variant<AlwaysSucceed, ConstantSuccess, OverlapScaledSuccess>;

std::string_view success_policy_name(const SuccessPolicy &policy);
double success_probability(const SuccessPolicy &policy, const PureState &psi, const PureState &phi);

/// Weights and policies of one hypothetical superposer. The weights must be
/// nonzero with |alpha|^2 + |beta|^2 = 1 (within 1e-12).
class SuperposerConfig {
   public:
    SuperposerConfig(
        Complex alpha, Complex beta, PhasePolicy phase = ConstantPhase{}, SuccessPolicy success = AlwaysSucceed{});

    /// alpha = beta = 1/sqrt(2)
    static SuperposerConfig balanced(PhasePolicy phase = ConstantPhase{}, SuccessPolicy success = AlwaysSucceed{});

    Complex alpha() const noexcept {
        return alpha_;
    }
    Complex beta() const noexcept {
        return beta_;
    }
    const PhasePolicy &phase_policy() const noexcept {
        return phase_;
    }
    const SuccessPolicy &success_policy() const noexcept {
        return success_;
    }

   private:
    Complex alpha_;
    Complex beta_;
    PhasePolicy phase_;
    SuccessPolicy success_;
};

struct SuperposeOutcome {
    bool succeeded = false;
    std::optional<PureState> state;
    double theta_used = 0.0;
    double probability = 0.0;
};

/// normalize(alpha |psi> + beta e^{i theta} |phi>) for an explicit theta.
PureState superpose_with_phase(Complex alpha, Complex beta, const PureState &psi, const PureState &phi, double theta);

/// The oracle's output state with theta taken from the phase policy. Both
/// inputs enter through their canonical forms, so the output density matrix
/// depends only on the input rays. Throws
/// NullSuperposition when the branches cancel and DimensionMismatch when the
/// inputs differ in dimension.
PureState superpose_deterministic(const SuperposerConfig &cfg, const PureState &psi, const PureState &phi);

/// One use of the oracle: a Bernoulli(p) draw decides success. The output
/// state is computed and validated whether or not the draw succeeds.
SuperposeOutcome superpose(const SuperposerConfig &cfg, const PureState &psi, const PureState &phi, Rng &rng);

}  // namespace nogo

#endif
