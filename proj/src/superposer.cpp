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

#include "nogo/superposer.hpp"

#include <cmath>
#include <string>

#include "nogo/error.hpp"

namespace nogo {

namespace {

constexpr double kOverlapFloor = 1e-10;
constexpr double kPinMatchTolerance = 1e-10;
constexpr double kHashQuantum = 1e12;

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t &h, std::uint64_t word) {
    for (int k = 0; k < 8; ++k) {
        h ^= (word >> (8 * k)) & 0xFFu;
        h *= kFnvPrime;
    }
}

void fnv_mix_amplitudes(std::uint64_t &h, const CanonicalForm &c) {
    fnv_mix(h, static_cast<std::uint64_t>(c.amplitudes.size()));
    for (const auto &a : c.amplitudes) {
        fnv_mix(h, static_cast<std::uint64_t>(std::llround(a.real() * kHashQuantum)));
        fnv_mix(h, static_cast<std::uint64_t>(std::llround(a.imag() * kHashQuantum)));
    }
}

void require_same_dim(const PureState &psi, const PureState &phi) {
    if (psi.dim() != phi.dim()) {
        throw Error(
            ErrorCode::DimensionMismatch,
            "superposer inputs have dimensions " + std::to_string(psi.dim()) + " and " + std::to_string(phi.dim()));
    }
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

double wrap_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi || r == 0.0) {
        r = 0.0;
    }
    return r;
}

void PinnedPhase::pin(const PureState &psi, const PureState &phi, double theta) {
    entries.push_back(Entry{canonicalize(psi), canonicalize(phi), theta});
}

std::string_view phase_policy_name(const PhasePolicy &policy) {
    return std::visit(
        Overloaded{
            [](const ConstantPhase &) { return std::string_view{"constant"}; },
            [](const OverlapArgPhase &) { return std::string_view{"overlap_arg"}; },
            [](const CanonicalHashPhase &) { return std::string_view{"canonical_hash"}; },
            [](const PinnedPhase &) { return std::string_view{"pinned"}; },
        },
        policy);
}

std::uint64_t canonical_pair_hash(const CanonicalForm &psi, const CanonicalForm &phi) {
    std::uint64_t h = kFnvOffset;
    fnv_mix_amplitudes(h, psi);
    fnv_mix_amplitudes(h, phi);
    return h;
}

double policy_phase(const PhasePolicy &policy, const PureState &psi, const PureState &phi) {
    require_same_dim(psi, phi);
    CanonicalForm cpsi = canonicalize(psi);
    CanonicalForm cphi = canonicalize(phi);
    double theta = std::visit(
        Overloaded{
            [](const ConstantPhase &p) { return p.theta; },
            [&](const OverlapArgPhase &) {
                Complex ov = inner(cpsi.amplitudes, cphi.amplitudes);
                return std::abs(ov) < kOverlapFloor ? 0.0 : std::arg(ov);
            },
            [&](const CanonicalHashPhase &) {
                std::uint64_t h = canonical_pair_hash(cpsi, cphi);
                return static_cast<double>(h >> 11) * 0x1.0p-53 * kTwoPi;
            },
            [&](const PinnedPhase &p) {
                for (const auto &e : p.entries) {
                    if (e.psi.amplitudes.size() == cpsi.amplitudes.size() &&
                        max_abs_difference(e.psi, cpsi) <= kPinMatchTolerance &&
                        e.phi.amplitudes.size() == cphi.amplitudes.size() &&
                        max_abs_difference(e.phi, cphi) <= kPinMatchTolerance) {
                        return e.theta;
                    }
                }
                return p.fallback;
            },
        },
        policy);
    return wrap_angle(theta);
}

std::string_view success_policy_name(const SuccessPolicy &policy) {
    return std::visit(
        Overloaded{
            [](const AlwaysSucceed &) { return std::string_view{"always"}; },
            [](const ConstantSuccess &) { return std::string_view{"constant"}; },
            [](const OverlapScaledSuccess &) { return std::string_view{"overlap_scaled"}; },
        },
        policy);
}

double success_probability(const SuccessPolicy &policy, const PureState &psi, const PureState &phi) {
    require_same_dim(psi, phi);
    return std::visit(
        Overloaded{
            [](const AlwaysSucceed &) { return 1.0; },
            [](const ConstantSuccess &c) { return c.p; },
            [&](const OverlapScaledSuccess &) { return 0.5 * (1.0 + fidelity(psi, phi)); },
        },
        policy);
}

SuperposerConfig::SuperposerConfig(Complex alpha, Complex beta, PhasePolicy phase, SuccessPolicy success)
    : alpha_(alpha), beta_(beta), phase_(std::move(phase)), success_(std::move(success)) {
    if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(beta))) {
        throw Error(ErrorCode::InvalidParams, "superposer weights must be finite");
    }
    if (std::abs(alpha) == 0.0 || std::abs(beta) == 0.0) {
        throw Error(ErrorCode::InvalidParams, "superposer weights alpha and beta must both be nonzero");
    }
    double total = std::norm(alpha) + std::norm(beta);
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw Error(
            ErrorCode::InvalidParams, "superposer weights must satisfy |alpha|^2 + |beta|^2 = 1, got " +
                                          std::to_string(total));
    }
    if (const auto *c = std::get_if<ConstantSuccess>(&success_)) {
        if (!(c->p > 0.0 && c->p <= 1.0)) {
            throw Error(
                ErrorCode::InvalidParams, "constant success probability must lie in (0, 1], got " + std::to_string(c->p));
        }
    }
    if (const auto *c = std::get_if<ConstantPhase>(&phase_)) {
        if (!std::isfinite(c->theta)) {
            throw Error(ErrorCode::InvalidParams, "constant phase must be finite");
        }
    }
}

SuperposerConfig SuperposerConfig::balanced(PhasePolicy phase, SuccessPolicy success) {
    const double w = 1.0 / std::sqrt(2.0);
    return SuperposerConfig(w, w, std::move(phase), std::move(success));
}

PureState superpose_with_phase(Complex alpha, Complex beta, const PureState &psi, const PureState &phi, double theta) {
    require_same_dim(psi, phi);
    Complex b = beta * std::polar(1.0, theta);
    CVector v(psi.dim());
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = alpha * psi[k] + b * phi[k];
    }
    double n = norm(v);
    if (n <= kNullNormThreshold) {
        throw Error(
            ErrorCode::NullSuperposition,
            "superposition branches cancel (norm " + std::to_string(n) + "); configuration is outside the oracle contract");
    }
    return normalize(v);
}

PureState superpose_deterministic(const SuperposerConfig &cfg, const PureState &psi, const PureState &phi) {
    double theta = policy_phase(cfg.phase_policy(), psi, phi);
    return superpose_with_phase(
        cfg.alpha(), cfg.beta(), PureState::from_amplitudes(canonicalize(psi).amplitudes),
        PureState::from_amplitudes(canonicalize(phi).amplitudes), theta);
}

SuperposeOutcome superpose(const SuperposerConfig &cfg, const PureState &psi, const PureState &phi, Rng &rng) {
    SuperposeOutcome out;
    out.theta_used = policy_phase(cfg.phase_policy(), psi, phi);
    out.probability = success_probability(cfg.success_policy(), psi, phi);
    PureState state = superpose_with_phase(
        cfg.alpha(), cfg.beta(), PureState::from_amplitudes(canonicalize(psi).amplitudes),
        PureState::from_amplitudes(canonicalize(phi).amplitudes), out.theta_used);
    out.succeeded = rng.bernoulli(out.probability);
    if (out.succeeded) {
        out.state = std::move(state);
    }
    return out;
}

}  // namespace nogo
