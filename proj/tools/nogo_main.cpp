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

// Command-line front end. Everything goes through the C API in nogo.h.

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nogo/nogo.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Flags {
    std::optional<std::uint64_t> dim;
    std::optional<double> a, b;
    std::optional<double> alpha_mod, alpha_arg, beta_mod, beta_arg;
    std::optional<std::string> phase_policy;
    std::optional<double> theta, theta1, theta2, theta3;
    std::optional<std::string> success_policy;
    std::optional<double> success_p;
    std::optional<double> tol, scan_tol, grid_step;
    std::optional<std::uint64_t> trials, seed, truth;
    bool deterministic = false;
    std::string output;
    std::string csv;
    std::string states;
};

int report_error(const std::string &message, int code) {
    std::cerr << "nogo: error: " << message << "\n";
    return code;
}

int report_status(nogo_status status) {
    return report_error(nogo_last_error()[0] != '\0' ? nogo_last_error() : nogo_status_name(status),
                        nogo_status_exit_code(status));
}

void add_common_options(CLI::App *cmd, Flags &f) {
    cmd->add_option("--dim", f.dim, "Hilbert space dimension (>= 3)");
    cmd->add_option("--a", f.a, "Coefficient a of the third input state");
    cmd->add_option("--b", f.b, "Coefficient b (default sqrt(1 - a^2))");
    cmd->add_option("--alpha-mod", f.alpha_mod, "|alpha|");
    cmd->add_option("--alpha-arg", f.alpha_arg, "arg(alpha) in radians");
    cmd->add_option("--beta-mod", f.beta_mod, "|beta| (default sqrt(1 - |alpha|^2))");
    cmd->add_option("--beta-arg", f.beta_arg, "arg(beta) in radians");
    cmd->add_option("--phase-policy", f.phase_policy, "constant | overlap_arg | canonical_hash");
    cmd->add_option("--theta", f.theta, "Phase of the constant policy");
    cmd->add_option("--theta1", f.theta1, "Constant policy: phase pinned for the first input");
    cmd->add_option("--theta2", f.theta2, "Constant policy: phase pinned for the second input");
    cmd->add_option("--theta3", f.theta3, "Constant policy: phase pinned for the third input");
    cmd->add_option("--success-policy", f.success_policy, "always | constant | overlap_scaled");
    cmd->add_option("--success-p", f.success_p, "Probability of the constant success policy");
    cmd->add_option("--tol", f.tol, "Relative rank tolerance (default 1e-9)");
    cmd->add_option("--seed", f.seed, "Random seed (default 42, or NOGO_SEED)");
    cmd->add_option("-o,--output", f.output, "Write the JSON report here instead of stdout");
    cmd->add_flag("--deterministic", f.deterministic, "Omit the timestamp from the report");
}

nogo_status apply(nogo_config *cfg, const Flags &f) {
    nogo_status s = NOGO_OK;
    auto real = [&](nogo_option opt, const std::optional<double> &v) {
        if (s == NOGO_OK && v) {
            s = nogo_config_set_real(cfg, opt, *v);
        }
    };
    auto uint = [&](nogo_option opt, const std::optional<std::uint64_t> &v) {
        if (s == NOGO_OK && v) {
            s = nogo_config_set_uint(cfg, opt, *v);
        }
    };
    auto str = [&](nogo_option opt, const std::optional<std::string> &v) {
        if (s == NOGO_OK && v) {
            s = nogo_config_set_string(cfg, opt, v->c_str());
        }
    };
    uint(NOGO_OPT_DIM, f.dim);
    real(NOGO_OPT_A, f.a);
    real(NOGO_OPT_B, f.b);
    real(NOGO_OPT_ALPHA_MOD, f.alpha_mod);
    real(NOGO_OPT_ALPHA_ARG, f.alpha_arg);
    real(NOGO_OPT_BETA_MOD, f.beta_mod);
    real(NOGO_OPT_BETA_ARG, f.beta_arg);
    str(NOGO_OPT_PHASE_POLICY, f.phase_policy);
    real(NOGO_OPT_THETA, f.theta);
    real(NOGO_OPT_THETA1, f.theta1);
    real(NOGO_OPT_THETA2, f.theta2);
    real(NOGO_OPT_THETA3, f.theta3);
    str(NOGO_OPT_SUCCESS_POLICY, f.success_policy);
    real(NOGO_OPT_SUCCESS_P, f.success_p);
    real(NOGO_OPT_TOL, f.tol);
    real(NOGO_OPT_SCAN_TOL, f.scan_tol);
    real(NOGO_OPT_GRID_STEP, f.grid_step);
    uint(NOGO_OPT_TRIALS, f.trials);
    uint(NOGO_OPT_SEED, f.seed);
    uint(NOGO_OPT_TRUTH, f.truth);
    if (s == NOGO_OK) {
        s = nogo_config_set_uint(cfg, NOGO_OPT_DETERMINISTIC, f.deterministic ? 1 : 0);
    }
    return s;
}

bool write_text(const std::string &path, const char *text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return static_cast<bool>(std::cout.flush());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        return false;
    }
    out << text;
    out.close();
    return static_cast<bool>(out);
}

struct OwnedString {
    char *p = nullptr;
    ~OwnedString() {
        nogo_string_free(p);
    }
};

struct OwnedConfig {
    nogo_config *p = nullptr;
    ~OwnedConfig() {
        nogo_config_destroy(p);
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Superposer no-go toolkit: counterexample verification, degeneracy scans, USD and cloning demos"};
    app.require_subcommand(1);
    app.set_version_flag("--version", nogo_version());

    Flags f;
    CLI::App *verify = app.add_subcommand("verify", "Push the dependent triple through the superposer and certify");
    add_common_options(verify, f);

    CLI::App *scan = app.add_subcommand("scan", "Scan (theta21, theta31) for rank drops and compare to the analytic locus");
    add_common_options(scan, f);
    scan->add_option("--grid-step", f.grid_step, "Grid spacing in radians, at most 0.1 (default pi/180)");
    scan->add_option("--scan-tol", f.scan_tol, "Relative rank tolerance of the scan (default 1e-6)");
    scan->add_option("--csv", f.csv, "Write the full grid as CSV");

    CLI::App *demo = app.add_subcommand("demo", "Run the discrimination and cloning demo on superposed outputs");
    add_common_options(demo, f);
    demo->add_option("--trials", f.trials, "Number of trials (default 100000)");

    CLI::App *usd = app.add_subcommand("usd", "Build and simulate USD for states listed in a JSON file");
    add_common_options(usd, f);
    usd->add_option("--states", f.states, "JSON file: array of states, each an array of [re, im] pairs")->required();
    usd->add_option("--truth", f.truth, "1-based index of the state to measure (default 1)");
    usd->add_option("--trials", f.trials, "Number of measurement shots (default 100000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return report_error(e.what(), kExitConfig);
    }

    if (!f.seed) {
        if (const char *env = std::getenv("NOGO_SEED"); env != nullptr && *env != '\0') {
            errno = 0;
            char *end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
                return report_error(std::string("NOGO_SEED is not an unsigned integer: ") + env, kExitConfig);
            }
            f.seed = static_cast<std::uint64_t>(v);
        }
    }

    OwnedConfig cfg;
    if (nogo_status s = nogo_config_create(&cfg.p); s != NOGO_OK) {
        return report_status(s);
    }
    if (nogo_status s = apply(cfg.p, f); s != NOGO_OK) {
        return report_status(s);
    }

    OwnedString report;
    if (verify->parsed()) {
        if (nogo_status s = nogo_run_verify(cfg.p, &report.p); s != NOGO_OK) {
            return report_status(s);
        }
    } else if (scan->parsed()) {
        OwnedString grid;
        if (nogo_status s = nogo_run_scan(cfg.p, &report.p, f.csv.empty() ? nullptr : &grid.p); s != NOGO_OK) {
            return report_status(s);
        }
        if (!f.csv.empty() && !write_text(f.csv, grid.p)) {
            return report_error("cannot write " + f.csv, kExitIo);
        }
    } else if (demo->parsed()) {
        if (nogo_status s = nogo_run_demo(cfg.p, &report.p); s != NOGO_OK) {
            return report_status(s);
        }
    } else if (usd->parsed()) {
        std::ifstream in(f.states, std::ios::binary);
        if (!in) {
            return report_error("cannot read " + f.states, kExitConfig);
        }
        std::ostringstream text;
        text << in.rdbuf();
        if (nogo_status s = nogo_run_usd(cfg.p, text.str().c_str(), &report.p); s != NOGO_OK) {
            return report_status(s);
        }
    }

    if (!write_text(f.output, report.p)) {
        return report_error("cannot write " + (f.output.empty() ? std::string("stdout") : f.output), kExitIo);
    }
    return 0;
}
