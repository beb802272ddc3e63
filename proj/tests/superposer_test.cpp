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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "nogo/error.hpp"
#include "test_util.hpp"

using namespace nogo;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::vector<PhasePolicy> all_policies() {
    PinnedPhase pinned;
    pinned.fallback = 1.25;
    pinned.pin(PureState::basis(3, 0), PureState::basis(3, 2), 0.5);
    return {ConstantPhase{0.7}, OverlapArgPhase{}, CanonicalHashPhase{}, pinned};
}

double angle_gap(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

}  // namespace

TEST(superposer_config, validation) {
    EXPECT_THROW(SuperposerConfig(0.0, 1.0), Error);
    EXPECT_THROW(SuperposerConfig(1.0, 0.0), Error);
    EXPECT_THROW(SuperposerConfig(0.6, 0.6), Error);
    EXPECT_THROW(SuperposerConfig(0.6, 0.8, ConstantPhase{}, ConstantSuccess{0.0}), Error);
    EXPECT_THROW(SuperposerConfig(0.6, 0.8, ConstantPhase{}, ConstantSuccess{1.5}), Error);
    EXPECT_THROW(SuperposerConfig(0.6, 0.8, ConstantPhase{std::nan("")}), Error);
    EXPECT_NO_THROW(SuperposerConfig(0.6, Complex(0, 0.8)));
    EXPECT_NO_THROW(SuperposerConfig::balanced());
}

TEST(superpose_deterministic, orthogonal_inputs) {
    PureState out = superpose_deterministic(SuperposerConfig::balanced(), PureState::basis(2, 0), PureState::basis(2, 1));
    EXPECT_NEAR(out[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(out[1].real(), kInvSqrt2, 1e-15);
}

TEST(superpose_deterministic, parallel_inputs) {
    PureState e1 = PureState::basis(2, 0);
    PureState out = superpose_deterministic(SuperposerConfig::balanced(), e1, e1);
    EXPECT_LE(max_abs_difference(out.density(), e1.density()), 1e-15);
}

TEST(superpose_deterministic, exact_cancellation) {
    PureState e1 = PureState::basis(2, 0);
    try {
        superpose_deterministic(SuperposerConfig::balanced(ConstantPhase{std::numbers::pi}), e1, e1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NullSuperposition);
    }
}

TEST(superpose_deterministic, dimension_mismatch) {
    EXPECT_THROW(
        superpose_deterministic(SuperposerConfig::balanced(), PureState::basis(2, 0), PureState::basis(3, 0)), Error);
}

TEST(superpose_deterministic, matches_direct_formula) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        std::size_t dim = 2 + rng() % 5;
        PureState psi = normalize(nogo_test::random_unit(rng, dim));
        PureState phi = normalize(nogo_test::random_unit(rng, dim));
        double theta = std::uniform_real_distribution<double>(0, kTwoPi)(rng);
        Complex alpha = std::polar(0.6, 0.3);
        Complex beta = std::polar(0.8, -1.1);
        PureState raw = superpose_with_phase(alpha, beta, psi, phi, theta);
        PureState out = superpose_deterministic(SuperposerConfig(alpha, beta, ConstantPhase{theta}), psi, phi);

        CVector v(dim);
        CVector w(dim);
        CanonicalForm cpsi = canonicalize(psi);
        CanonicalForm cphi = canonicalize(phi);
        for (std::size_t k = 0; k < dim; ++k) {
            v[k] = alpha * psi[k] + beta * std::exp(Complex(0, theta)) * phi[k];
            w[k] = alpha * cpsi.amplitudes[k] + beta * std::exp(Complex(0, theta)) * cphi.amplitudes[k];
        }
        double nv = nogo_test::vec_norm(v);
        double nw = nogo_test::vec_norm(w);
        for (std::size_t k = 0; k < dim; ++k) {
            EXPECT_LE(std::abs(raw[k] - v[k] / nv), 1e-13);
            EXPECT_LE(std::abs(out[k] - w[k] / nw), 1e-13);
        }
    }
}

TEST(superpose, always_succeeds) {
    Rng rng(1);
    auto cfg = SuperposerConfig::balanced();
    for (int t = 0; t < 1000; ++t) {
        SuperposeOutcome o = superpose(cfg, PureState::basis(2, 0), PureState::basis(2, 1), rng);
        ASSERT_TRUE(o.succeeded);
        ASSERT_TRUE(o.state.has_value());
        EXPECT_EQ(o.probability, 1.0);
    }
}

TEST(superpose, constant_half_rate_within_three_sigma) {
    Rng rng(2026);
    auto cfg = SuperposerConfig::balanced(ConstantPhase{}, ConstantSuccess{0.5});
    const int trials = 100000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        SuperposeOutcome o = superpose(cfg, PureState::basis(2, 0), PureState::basis(2, 1), rng);
        EXPECT_EQ(o.state.has_value(), o.succeeded);
        hits += o.succeeded ? 1 : 0;
    }
    double sigma = std::sqrt(0.25 / trials);
    EXPECT_NEAR(3 * sigma, 0.00474, 1e-5);
    EXPECT_LE(std::abs(hits / static_cast<double>(trials) - 0.5), 3 * sigma);
}

TEST(superpose, overlap_scaled_orthogonal_is_half) {
    EXPECT_EQ(success_probability(OverlapScaledSuccess{}, PureState::basis(3, 0), PureState::basis(3, 1)), 0.5);
    EXPECT_NEAR(
        success_probability(OverlapScaledSuccess{}, PureState::basis(2, 0), normalize(CVector{1, 1})), 0.75, 1e-15);
}

TEST(superpose, deterministic_under_seed) {
    std::mt19937_64 gen(5);
    PureState psi = normalize(nogo_test::random_unit(gen, 4));
    PureState phi = normalize(nogo_test::random_unit(gen, 4));
    auto cfg = SuperposerConfig::balanced(CanonicalHashPhase{}, OverlapScaledSuccess{});
    Rng a(99);
    Rng b(99);
    for (int t = 0; t < 100; ++t) {
        SuperposeOutcome x = superpose(cfg, psi, phi, a);
        SuperposeOutcome y = superpose(cfg, psi, phi, b);
        EXPECT_EQ(x.succeeded, y.succeeded);
        EXPECT_EQ(x.theta_used, y.theta_used);
        EXPECT_EQ(x.probability, y.probability);
        EXPECT_EQ(x.state, y.state);
    }
}

TEST(phase_policy, names) {
    auto p = all_policies();
    EXPECT_EQ(phase_policy_name(p[0]), "constant");
    EXPECT_EQ(phase_policy_name(p[1]), "overlap_arg");
    EXPECT_EQ(phase_policy_name(p[2]), "canonical_hash");
    EXPECT_EQ(phase_policy_name(p[3]), "pinned");
    EXPECT_EQ(success_policy_name(AlwaysSucceed{}), "always");
    EXPECT_EQ(success_policy_name(ConstantSuccess{0.3}), "constant");
    EXPECT_EQ(success_policy_name(OverlapScaledSuccess{}), "overlap_scaled");
}

TEST(phase_policy, wrap_angle) {
    EXPECT_EQ(wrap_angle(0.0), 0.0);
    EXPECT_EQ(wrap_angle(kTwoPi), 0.0);
    EXPECT_NEAR(wrap_angle(-0.5), kTwoPi - 0.5, 1e-15);
    EXPECT_NEAR(wrap_angle(7.0), 7.0 - kTwoPi, 1e-15);
}

TEST(phase_policy, overlap_arg_values) {
    PureState psi = PureState::basis(2, 0);
    PureState phi = normalize(CVector{1, Complex(0, 1)});
    EXPECT_EQ(policy_phase(OverlapArgPhase{}, psi, phi), 0.0);
    PureState chi = normalize(CVector{Complex(0, 1), 1});
    // canonical(chi) = (1, -i)/sqrt 2; overlap with e0... pivot at e0 in psi
    EXPECT_EQ(policy_phase(OverlapArgPhase{}, psi, chi), 0.0);
    PureState u = normalize(CVector{1, 1});
    PureState v = normalize(CVector{1, Complex(0, 1)});
    // <(1,1)|(1,i)>/2 = (1+i)/2
    EXPECT_NEAR(policy_phase(OverlapArgPhase{}, u, v), std::numbers::pi / 4, 1e-15);
    EXPECT_EQ(policy_phase(OverlapArgPhase{}, PureState::basis(2, 0), PureState::basis(2, 1)), 0.0);
}

TEST(phase_policy, pinned_lookup) {
    PinnedPhase p;
    p.fallback = 2.0;
    p.pin(PureState::basis(3, 0), PureState::basis(3, 2), 0.5);
    EXPECT_EQ(policy_phase(p, PureState::basis(3, 0), PureState::basis(3, 2)), 0.5);
    EXPECT_EQ(
        policy_phase(p, PureState::basis(3, 0).with_global_phase(Complex(0, -1)), PureState::basis(3, 2)), 0.5);
    EXPECT_EQ(policy_phase(p, PureState::basis(3, 1), PureState::basis(3, 2)), 2.0);
}

TEST(phase_policy, canonical_hash_reference_value) {
    // FNV-1a-64 over (dim, llround(re*1e12), llround(im*1e12), ...) for both states, little-endian bytes.
    auto fnv = [](std::uint64_t h, std::uint64_t w) {
        for (int k = 0; k < 8; ++k) {
            h ^= (w >> (8 * k)) & 0xFF;
            h *= 1099511628211ULL;
        }
        return h;
    };
    std::uint64_t h = 14695981039346656037ULL;
    h = fnv(h, 2);
    h = fnv(h, 1000000000000ULL);
    h = fnv(h, 0);
    h = fnv(h, 0);
    h = fnv(h, 0);
    h = fnv(h, 2);
    h = fnv(h, 0);
    h = fnv(h, 0);
    h = fnv(h, 1000000000000ULL);
    h = fnv(h, 0);
    CanonicalForm e0 = canonicalize(PureState::basis(2, 0));
    CanonicalForm e1 = canonicalize(PureState::basis(2, 1));
    EXPECT_EQ(canonical_pair_hash(e0, e1), h);
    double theta = static_cast<double>(h >> 11) * 0x1.0p-53 * kTwoPi;
    EXPECT_EQ(policy_phase(CanonicalHashPhase{}, PureState::basis(2, 0), PureState::basis(2, 1)), theta);
}

TEST(phase_policy, theta_in_range_for_all_policies) {
    std::mt19937_64 rng(13);
    auto policies = all_policies();
    for (int t = 0; t < 10000; ++t) {
        std::size_t dim = 2 + rng() % 5;
        PureState psi = normalize(nogo_test::random_unit(rng, dim));
        PureState phi = normalize(nogo_test::random_unit(rng, dim));
        double theta = policy_phase(policies[t % policies.size()], psi, phi);
        ASSERT_GE(theta, 0.0);
        ASSERT_LT(theta, kTwoPi);
    }
}

TEST(phase_policy, quarter_turn_phases_leave_every_policy_unchanged) {
    std::mt19937_64 rng(21);
    const Complex quarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    auto policies = all_policies();
    for (int t = 0; t < 2000; ++t) {
        std::size_t dim = 2 + rng() % 5;
        PureState psi = normalize(nogo_test::random_unit(rng, dim));
        PureState phi = normalize(nogo_test::random_unit(rng, dim));
        Complex u = quarter[rng() % 4];
        Complex v = quarter[rng() % 4];
        for (const auto &p : policies) {
            ASSERT_EQ(policy_phase(p, psi.with_global_phase(u), phi.with_global_phase(v)), policy_phase(p, psi, phi))
                << phase_policy_name(p);
        }
    }
}

TEST(phase_policy, generic_phases_leave_continuous_policies_unchanged) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 2000; ++t) {
        std::size_t dim = 2 + rng() % 5;
        PureState psi = normalize(nogo_test::random_unit(rng, dim));
        PureState phi = normalize(nogo_test::random_unit(rng, dim));
        PureState psi2 = psi.with_global_phase(nogo_test::random_phase(rng));
        PureState phi2 = phi.with_global_phase(nogo_test::random_phase(rng));
        EXPECT_LE(angle_gap(policy_phase(OverlapArgPhase{}, psi2, phi2), policy_phase(OverlapArgPhase{}, psi, phi)), 1e-12);
        EXPECT_EQ(policy_phase(ConstantPhase{0.3}, psi2, phi2), 0.3);
    }
}

TEST(phase_policy, generic_phases_and_canonical_hash) {
    // Generic phases move canonical forms by ~1e-16; the hash changes only
    // when an amplitude sits on a 1e-12 rounding boundary.
    std::mt19937_64 rng(23);
    const int trials = 20000;
    int mismatches = 0;
    for (int t = 0; t < trials; ++t) {
        std::size_t dim = 2 + rng() % 5;
        PureState psi = normalize(nogo_test::random_unit(rng, dim));
        PureState phi = normalize(nogo_test::random_unit(rng, dim));
        PureState psi2 = psi.with_global_phase(nogo_test::random_phase(rng));
        PureState phi2 = phi.with_global_phase(nogo_test::random_phase(rng));
        ASSERT_LE(max_abs_difference(canonicalize(psi2), canonicalize(psi)), 1e-14);
        ASSERT_LE(max_abs_difference(canonicalize(phi2), canonicalize(phi)), 1e-14);
        if (policy_phase(CanonicalHashPhase{}, psi2, phi2) != policy_phase(CanonicalHashPhase{}, psi, phi)) {
            ++mismatches;
        }
    }
    RecordProperty("mismatches", mismatches);
    EXPECT_LT(mismatches, trials / 200);
}

TEST(superpose, density_covariance_under_input_phases) {
    std::mt19937_64 rng(31);
    auto policies = all_policies();
    for (int t = 0; t < 2000; ++t) {
        std::size_t dim = 2 + rng() % 5;
        PureState psi = normalize(nogo_test::random_unit(rng, dim));
        PureState phi = normalize(nogo_test::random_unit(rng, dim));
        const auto &policy = policies[t % 3 == 2 ? 3 : t % 3];
        auto cfg = SuperposerConfig(std::polar(0.6, 0.2), std::polar(0.8, 1.0), policy);
        PureState base = superpose_deterministic(cfg, psi, phi);
        Complex u = nogo_test::random_phase(rng);
        Complex v = nogo_test::random_phase(rng);
        PureState moved = superpose_deterministic(cfg, psi.with_global_phase(u), phi.with_global_phase(v));
        EXPECT_LE(max_abs_difference(moved.density(), base.density()), 1e-10);
        EXPECT_NEAR(norm(moved.amplitudes()), 1.0, 1e-12);
    }
}
