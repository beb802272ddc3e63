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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Invocation {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch() {
    fs::path dir = fs::path(testing::TempDir()) / "nogo_cli_test";
    fs::create_directories(dir);
    return dir;
}

Invocation run(const std::string &args, const std::string &env = "") {
    fs::path dir = scratch();
    fs::path out = dir / "stdout.txt";
    fs::path err = dir / "stderr.txt";
    std::string cmd = "env -u NOGO_SEED " + env + " '" NOGO_CLI_PATH "' " + args + " >'" + out.string() + "' 2>'" +
                      err.string() + "'";
    int raw = std::system(cmd.c_str());
    Invocation r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::size_t count_lines(const std::string &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(cli, verify_defaults) {
    Invocation r = run("verify --deterministic");
    ASSERT_EQ(r.status, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["result"]["input_rank"], 2);
    EXPECT_EQ(j["result"]["output_rank"], 3);
    EXPECT_NEAR(j["config"]["a"].get<double>(), j["config"]["b"].get<double>(), 1e-15);
}

TEST(cli, config_errors_exit_2_with_one_line) {
    for (const char *args : {"verify --a 0", "verify --dim 2", "scan --grid-step 0.2", "demo --phase-policy nope",
                             "verify --alpha-mod 0", "bogus", "verify --a abc"}) {
        Invocation r = run(args);
        EXPECT_EQ(r.status, 2) << args;
        EXPECT_EQ(count_lines(r.err), 1u) << args << ": " << r.err;
        EXPECT_TRUE(r.out.empty()) << args;
    }
    EXPECT_NE(run("verify --a 0").err.find("nonzero"), std::string::npos);
}

TEST(cli, no_command_exits_2) {
    EXPECT_EQ(run("").status, 2);
}

TEST(cli, help_exits_0) {
    Invocation r = run("--help");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("demo"), std::string::npos);
}

TEST(cli, unwritable_output_exits_3) {
    EXPECT_EQ(run("verify -o /nonexistent-dir/report.json").status, 3);
    EXPECT_EQ(run("scan --grid-step 0.1 --csv /nonexistent-dir/grid.csv").status, 3);
}

TEST(cli, scan_writes_summary_and_csv) {
    fs::path dir = scratch();
    fs::path csv = dir / "grid.csv";
    fs::path summary = dir / "scan.json";
    Invocation r = run("scan --deterministic --grid-step 0.05 --csv '" + csv.string() + "' -o '" + summary.string() + "'");
    ASSERT_EQ(r.status, 0) << r.err;
    json j = json::parse(slurp(summary));
    EXPECT_EQ(j["command"], "scan");
    EXPECT_EQ(j["result"]["within_one_step"], true);
    std::string grid = slurp(csv);
    EXPECT_EQ(grid.rfind("theta21,theta31,min_singular_value,rank\n", 0), 0u);
    EXPECT_EQ(count_lines(grid), 1u + 126u * 126u);
}

TEST(cli, demo_zero_trials) {
    Invocation r = run("demo --deterministic --trials 0");
    ASSERT_EQ(r.status, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["result"]["trials"], 0);
    for (const auto &c : j["result"]["conclusive_counts"]) {
        EXPECT_EQ(c, 0);
    }
}

TEST(cli, demo_on_locus_exits_4) {
    Invocation r = run("demo --phase-policy constant --theta2 1.5707963 --theta3 0.7853982");
    EXPECT_EQ(r.status, 4);
    EXPECT_EQ(count_lines(r.err), 1u);
}

TEST(cli, demo_defaults_seed_7) {
    Invocation r = run("demo --deterministic --seed 7");
    ASSERT_EQ(r.status, 0) << r.err;
    json res = json::parse(r.out)["result"];
    EXPECT_EQ(res["trials"], 100000);
    EXPECT_EQ(res["misidentifications"], 0);
    EXPECT_EQ(res["within_3_sigma"], true);
}

TEST(cli, deterministic_reports_are_byte_identical) {
    Invocation x = run("demo --deterministic --trials 20000 --seed 5");
    Invocation y = run("demo --deterministic --trials 20000 --seed 5");
    ASSERT_EQ(x.status, 0);
    EXPECT_EQ(x.out, y.out);
    Invocation z = run("demo --deterministic --trials 20000 --seed 6");
    EXPECT_NE(x.out, z.out);
}

TEST(cli, timestamp_without_deterministic) {
    Invocation r = run("verify");
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(json::parse(r.out).contains("generated_at"));
}

TEST(cli, seed_from_environment_and_flag_precedence) {
    Invocation env = run("demo --deterministic --trials 5000", "NOGO_SEED=9");
    Invocation flag = run("demo --deterministic --trials 5000 --seed 9");
    Invocation both = run("demo --deterministic --trials 5000 --seed 9", "NOGO_SEED=1");
    Invocation other = run("demo --deterministic --trials 5000", "NOGO_SEED=1");
    ASSERT_EQ(env.status, 0);
    EXPECT_EQ(json::parse(env.out)["config"]["seed"], 9);
    EXPECT_EQ(env.out, flag.out);
    EXPECT_EQ(both.out, flag.out);
    EXPECT_NE(other.out, flag.out);
    EXPECT_EQ(run("verify", "NOGO_SEED=abc").status, 2);
}

TEST(cli, usd_from_states_file) {
    fs::path states = scratch() / "states.json";
    std::ofstream(states) << R"([[[1,0],[0,0]], [[0.7071067811865476,0],[0.7071067811865476,0]]])";
    Invocation r = run("usd --deterministic --states '" + states.string() + "' --truth 2 --trials 100000");
    ASSERT_EQ(r.status, 0) << r.err;
    json res = json::parse(r.out)["result"];
    EXPECT_EQ(res["possible"], true);
    EXPECT_EQ(res["simulation"]["misidentifications"], 0);
    EXPECT_NEAR(res["success_probabilities"][1].get<double>(), 0.2928932188134524, 1e-9);

    EXPECT_EQ(run("usd --states /nonexistent-dir/states.json").status, 2);
    EXPECT_EQ(run("usd").status, 2);
}

TEST(cli, report_embeds_resolved_config) {
    Invocation r = run("verify --deterministic --dim 5 --a 0.6 --alpha-mod 0.8 --phase-policy canonical_hash");
    ASSERT_EQ(r.status, 0) << r.err;
    json c = json::parse(r.out)["config"];
    EXPECT_EQ(c["dim"], 5);
    EXPECT_NEAR(c["b"].get<double>(), 0.8, 1e-15);
    EXPECT_NEAR(c["beta_mod"].get<double>(), 0.6, 1e-15);
    EXPECT_EQ(c["phase_policy"], "canonical_hash");
    EXPECT_EQ(c["deterministic"], true);
}
