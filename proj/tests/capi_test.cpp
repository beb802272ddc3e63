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

#include "nogo/nogo.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

struct Config {
    nogo_config *ptr = nullptr;
    Config() {
        EXPECT_EQ(nogo_config_create(&ptr), NOGO_OK);
        EXPECT_EQ(nogo_config_set_uint(ptr, NOGO_OPT_DETERMINISTIC, 1), NOGO_OK);
    }
    ~Config() {
        nogo_config_destroy(ptr);
    }
};

struct Set {
    nogo_state_set *ptr = nullptr;
    explicit Set(size_t dim) {
        EXPECT_EQ(nogo_state_set_create(dim, &ptr), NOGO_OK);
    }
    ~Set() {
        nogo_state_set_destroy(ptr);
    }
};

std::string take(char *s) {
    std::string out = s == nullptr ? "" : s;
    nogo_string_free(s);
    return out;
}

std::string compact(std::string s) {
    std::erase_if(s, [](char c) { return c == ' ' || c == '\n'; });
    return s;
}

}  // namespace

TEST(capi, version_and_status_names) {
    EXPECT_STREQ(nogo_version(), "0.1.0");
    EXPECT_STREQ(nogo_status_name(NOGO_OK), "ok");
    EXPECT_NE(std::strlen(nogo_status_name(NOGO_ERR_DEPENDENT_OUTPUTS)), 0u);
    EXPECT_EQ(nogo_status_exit_code(NOGO_OK), 0);
    EXPECT_EQ(nogo_status_exit_code(NOGO_ERR_INVALID_CONFIG), 2);
    EXPECT_EQ(nogo_status_exit_code(NOGO_ERR_INVALID_PARAMS), 2);
    EXPECT_EQ(nogo_status_exit_code(NOGO_ERR_IO), 3);
    EXPECT_EQ(nogo_status_exit_code(NOGO_ERR_DEPENDENT_OUTPUTS), 4);
}

TEST(capi, null_arguments_are_rejected) {
    EXPECT_EQ(nogo_config_create(nullptr), NOGO_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(nogo_run_verify(nullptr, nullptr), NOGO_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(nogo_state_set_size(nullptr), 0u);
    EXPECT_EQ(nogo_solve_degeneracy(0.6, 0.8, nullptr), NOGO_ERR_INVALID_ARGUMENT);
    nogo_config_destroy(nullptr);
    nogo_state_set_destroy(nullptr);
    nogo_usd_destroy(nullptr);
    nogo_string_free(nullptr);
}

TEST(capi, verify_defaults) {
    Config c;
    char *report = nullptr;
    ASSERT_EQ(nogo_run_verify(c.ptr, &report), NOGO_OK);
    std::string json = compact(take(report));
    EXPECT_NE(json.find("\"input_rank\":2"), std::string::npos);
    EXPECT_NE(json.find("\"output_rank\":3"), std::string::npos);
    EXPECT_EQ(json.find("generated_at"), std::string::npos);
}

TEST(capi, invalid_config_sets_last_error) {
    Config c;
    ASSERT_EQ(nogo_config_set_real(c.ptr, NOGO_OPT_A, 0.0), NOGO_OK);
    char *report = nullptr;
    EXPECT_EQ(nogo_run_verify(c.ptr, &report), NOGO_ERR_INVALID_PARAMS);
    EXPECT_EQ(report, nullptr);
    EXPECT_NE(std::string(nogo_last_error()).size(), 0u);
}

TEST(capi, option_type_mismatch) {
    Config c;
    EXPECT_EQ(nogo_config_set_real(c.ptr, NOGO_OPT_PHASE_POLICY, 1.0), NOGO_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(nogo_config_set_string(c.ptr, NOGO_OPT_A, "0.5"), NOGO_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(nogo_config_set_uint(c.ptr, static_cast<nogo_option>(99), 1), NOGO_ERR_INVALID_ARGUMENT);
}

TEST(capi, demo_on_locus_is_refused) {
    Config c;
    ASSERT_EQ(nogo_config_set_real(c.ptr, NOGO_OPT_THETA2, std::numbers::pi / 2), NOGO_OK);
    ASSERT_EQ(nogo_config_set_real(c.ptr, NOGO_OPT_THETA3, std::numbers::pi / 4), NOGO_OK);
    ASSERT_EQ(nogo_config_set_uint(c.ptr, NOGO_OPT_TRIALS, 10), NOGO_OK);
    char *report = nullptr;
    EXPECT_EQ(nogo_run_demo(c.ptr, &report), NOGO_ERR_DEPENDENT_OUTPUTS);
}

TEST(capi, demo_is_deterministic) {
    Config c;
    ASSERT_EQ(nogo_config_set_uint(c.ptr, NOGO_OPT_TRIALS, 10000), NOGO_OK);
    ASSERT_EQ(nogo_config_set_string(c.ptr, NOGO_OPT_PHASE_POLICY, "overlap_arg"), NOGO_OK);
    char *x = nullptr;
    char *y = nullptr;
    ASSERT_EQ(nogo_run_demo(c.ptr, &x), NOGO_OK);
    ASSERT_EQ(nogo_run_demo(c.ptr, &y), NOGO_OK);
    EXPECT_EQ(take(x), take(y));
}

TEST(capi, scan_with_and_without_csv) {
    Config c;
    ASSERT_EQ(nogo_config_set_real(c.ptr, NOGO_OPT_GRID_STEP, 0.1), NOGO_OK);
    char *summary = nullptr;
    char *csv = nullptr;
    ASSERT_EQ(nogo_run_scan(c.ptr, &summary, &csv), NOGO_OK);
    EXPECT_NE(compact(take(summary)).find("\"within_one_step\":true"), std::string::npos);
    EXPECT_EQ(take(csv).rfind("theta21,theta31,min_singular_value,rank\n", 0), 0u);
    ASSERT_EQ(nogo_run_scan(c.ptr, &summary, nullptr), NOGO_OK);
    take(summary);
}

TEST(capi, usd_from_json) {
    Config c;
    char *report = nullptr;
    ASSERT_EQ(nogo_run_usd(c.ptr, "[[[1,0],[0,0]],[[1,0],[1,0]]]", &report), NOGO_OK);
    EXPECT_NE(compact(take(report)).find("\"possible\":true"), std::string::npos);
    EXPECT_EQ(nogo_run_usd(c.ptr, "{", &report), NOGO_ERR_INVALID_CONFIG);
}

TEST(capi, state_set_rank_and_independence) {
    Set s(3);
    const double e1[] = {1, 0, 0, 0, 0, 0};
    const double e2[] = {0, 0, 1, 0, 0, 0};
    const double diag[] = {1, 0, 1, 0, 0, 0};
    ASSERT_EQ(nogo_state_set_add(s.ptr, e1, 3), NOGO_OK);
    ASSERT_EQ(nogo_state_set_add(s.ptr, e2, 3), NOGO_OK);
    int independent = 0;
    ASSERT_EQ(nogo_state_set_is_independent(s.ptr, 1e-9, &independent), NOGO_OK);
    EXPECT_EQ(independent, 1);
    ASSERT_EQ(nogo_state_set_add(s.ptr, diag, 3), NOGO_OK);
    EXPECT_EQ(nogo_state_set_size(s.ptr), 3u);
    size_t rank = 0;
    ASSERT_EQ(nogo_state_set_rank(s.ptr, 1e-9, &rank), NOGO_OK);
    EXPECT_EQ(rank, 2u);
    ASSERT_EQ(nogo_state_set_is_independent(s.ptr, 1e-9, &independent), NOGO_OK);
    EXPECT_EQ(independent, 0);

    nogo_usd *usd = nullptr;
    EXPECT_EQ(nogo_usd_build(s.ptr, &usd), NOGO_ERR_LINEARLY_DEPENDENT);
    EXPECT_EQ(usd, nullptr);

    EXPECT_EQ(nogo_state_set_add(s.ptr, e1, 2), NOGO_ERR_DIMENSION_MISMATCH);
    const double zero[] = {0, 0, 0, 0, 0, 0};
    EXPECT_EQ(nogo_state_set_add(s.ptr, zero, 3), NOGO_ERR_NULL_VECTOR);
}

TEST(capi, empty_set_rank) {
    Set s(2);
    size_t rank = 0;
    EXPECT_EQ(nogo_state_set_rank(s.ptr, 1e-9, &rank), NOGO_ERR_EMPTY_SET);
}

TEST(capi, usd_zero_plus) {
    Set s(2);
    const double zero[] = {1, 0, 0, 0};
    const double plus[] = {kInvSqrt2, 0, kInvSqrt2, 0};
    ASSERT_EQ(nogo_state_set_add(s.ptr, zero, 2), NOGO_OK);
    ASSERT_EQ(nogo_state_set_add(s.ptr, plus, 2), NOGO_OK);
    nogo_usd *usd = nullptr;
    ASSERT_EQ(nogo_usd_build(s.ptr, &usd), NOGO_OK);

    double p[2] = {0, 0};
    ASSERT_EQ(nogo_usd_success_probabilities(usd, p, 2), NOGO_OK);
    EXPECT_NEAR(p[0], 1 - kInvSqrt2, 1e-9);
    EXPECT_NEAR(p[1], 1 - kInvSqrt2, 1e-9);
    EXPECT_EQ(nogo_usd_success_probabilities(usd, p, 1), NOGO_ERR_INVALID_ARGUMENT);

    const uint64_t trials = 100000;
    uint64_t counts[3] = {0, 0, 0};
    ASSERT_EQ(nogo_usd_simulate(usd, 0, trials, 42, counts, 3), NOGO_OK);
    EXPECT_EQ(counts[0] + counts[1] + counts[2], trials);
    EXPECT_EQ(counts[2], 0u);
    double sigma = std::sqrt(p[0] * (1 - p[0]) / trials);
    EXPECT_LE(std::abs(counts[1] / static_cast<double>(trials) - p[0]), 3 * sigma);

    uint64_t again[3] = {0, 0, 0};
    ASSERT_EQ(nogo_usd_simulate(usd, 0, trials, 42, again, 3), NOGO_OK);
    EXPECT_EQ(std::vector<uint64_t>(counts, counts + 3), std::vector<uint64_t>(again, again + 3));

    EXPECT_EQ(nogo_usd_simulate(usd, 2, 10, 42, counts, 3), NOGO_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(nogo_usd_simulate(usd, 0, 10, 42, counts, 2), NOGO_ERR_INVALID_ARGUMENT);
    nogo_usd_destroy(usd);
}

TEST(capi, solve_degeneracy) {
    double pairs[4] = {0, 0, 0, 0};
    ASSERT_EQ(nogo_solve_degeneracy(kInvSqrt2, kInvSqrt2, pairs), NOGO_OK);
    EXPECT_NEAR(pairs[0], std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(pairs[1], std::numbers::pi / 4, 1e-15);
    EXPECT_NEAR(pairs[2], 3 * std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(pairs[3], 7 * std::numbers::pi / 4, 1e-15);
    EXPECT_EQ(nogo_solve_degeneracy(0.0, 1.0, pairs), NOGO_ERR_INVALID_PARAMS);
}
