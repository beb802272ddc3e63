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

#include "nogo/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <json.hpp>

#include "nogo/discrimination.hpp"

namespace nogo {

using json = nlohmann::json;

namespace {

json to_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

json to_json(std::span<const Complex> v) {
    json out = json::array();
    for (const auto &c : v) {
        out.push_back(to_json(c));
    }
    return out;
}

json to_json(const PureState &s) {
    return to_json(s.amplitudes());
}

json to_json(const ComplexMatrix &m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

json to_json(const StateSet &s) {
    json out = json::array();
    for (const auto &m : s) {
        out.push_back(to_json(m));
    }
    return out;
}

json to_json(const PhasePair &p) {
    return json{{"theta21", p.theta21}, {"theta31", p.theta31}};
}

json to_json(const PhaseTriple &t) {
    return json{
        {"theta1", t.theta1},
        {"theta2", t.theta2},
        {"theta3", t.theta3},
        {"theta21", t.theta21()},
        {"theta31", t.theta31()},
    };
}

json to_json(const RankResult &r) {
    return json{{"rank", r.rank}, {"singular_values", r.singular_values}, {"tolerance", r.tolerance_used}};
}

json to_json(const DependenceCertificate &c) {
    json out{
        {"independent", c.independent},
        {"residual_norm", c.residual_norm},
        {"gram_rank", to_json(c.gram_rank)},
    };
    if (c.coefficients) {
        out["coefficients"] = to_json(std::span<const Complex>(*c.coefficients));
    } else {
        out["coefficients"] = nullptr;
    }
    return out;
}

template <class T>
json optional_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

json config_json(const RunConfig &c) {
    return json{
        {"dim", c.dim},
        {"a", c.a},
        {"b", optional_json(c.b)},
        {"alpha_mod", c.alpha_mod},
        {"alpha_arg", c.alpha_arg},
        {"beta_mod", optional_json(c.beta_mod)},
        {"beta_arg", c.beta_arg},
        {"phase_policy", c.phase_policy},
        {"theta", c.theta},
        {"theta1", optional_json(c.theta1)},
        {"theta2", optional_json(c.theta2)},
        {"theta3", optional_json(c.theta3)},
        {"success_policy", c.success_policy},
        {"success_p", c.success_p},
        {"tol", c.tol},
        {"scan_tol", c.scan_tol},
        {"trials", c.trials},
        {"grid_step", c.grid_step},
        {"seed", c.seed},
        {"truth", c.truth},
        {"deterministic", c.deterministic},
    };
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string envelope(const RunConfig &resolved, const std::string &command, json result) {
    json report{
        {"schema", kReportSchemaVersion},
        {"command", command},
        {"config", config_json(resolved)},
        {"result", std::move(result)},
    };
    if (!resolved.deterministic) {
        report["generated_at"] = utc_timestamp();
    }
    return report.dump(2) + "\n";
}

[[noreturn]] void config_error(const std::string &message) {
    throw Error(ErrorCode::InvalidConfig, message);
}

void require_unit_interval(double v, const char *name) {
    if (!(v > 0.0 && v < 1.0)) {
        config_error(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
    }
}

void require_finite(double v, const char *name) {
    if (!std::isfinite(v)) {
        config_error(std::string(name) + " must be finite");
    }
}

CVector parse_state(const json &j) {
    if (!j.is_array()) {
        config_error("each state must be an array of [re, im] pairs");
    }
    CVector v;
    for (const auto &pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            config_error("each amplitude must be a [re, im] pair of numbers");
        }
        v.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return v;
}

}  // namespace

RunConfig resolve(const RunConfig &config) {
    RunConfig r = config;
    require_finite(r.a, "a");
    require_finite(r.alpha_mod, "alpha-mod");
    require_finite(r.alpha_arg, "alpha-arg");
    require_finite(r.beta_arg, "beta-arg");
    require_finite(r.theta, "theta");
    if (r.dim < 3) {
        throw Error(
            ErrorCode::InvalidParams, "counterexample needs dimension d >= 3 (got " + std::to_string(r.dim) + ")");
    }
    if (r.dim > 16) {
        config_error("dimension above 16 is not supported (got " + std::to_string(r.dim) + ")");
    }
    if (!r.b) {
        if (std::abs(r.a) > 1.0) {
            config_error("|a| must not exceed 1 (got " + std::to_string(r.a) + ")");
        }
        r.b = std::sqrt(std::max(0.0, 1.0 - r.a * r.a));
    }
    require_finite(*r.b, "b");
    if (r.a == 0.0 || *r.b == 0.0) {
        throw Error(
            ErrorCode::InvalidParams,
            "coefficients a and b must both be nonzero (got a=" + std::to_string(r.a) + ", b=" + std::to_string(*r.b) +
                ")");
    }
    if (r.alpha_mod <= 0.0 || r.alpha_mod >= 1.0) {
        config_error("alpha-mod must lie in (0, 1) so both weights are nonzero");
    }
    if (!r.beta_mod) {
        r.beta_mod = std::sqrt(1.0 - r.alpha_mod * r.alpha_mod);
    }
    require_finite(*r.beta_mod, "beta-mod");
    if (r.phase_policy != "constant" && r.phase_policy != "overlap_arg" && r.phase_policy != "canonical_hash") {
        config_error("unknown phase policy '" + r.phase_policy + "' (expected constant, overlap_arg, canonical_hash)");
    }
    if ((r.theta1 || r.theta2 || r.theta3) && r.phase_policy != "constant") {
        config_error("--theta1/--theta2/--theta3 only apply to the constant phase policy");
    }
    for (const auto *t : {&r.theta1, &r.theta2, &r.theta3}) {
        if (*t) {
            require_finite(**t, "theta");
        }
    }
    if (r.success_policy != "always" && r.success_policy != "constant" && r.success_policy != "overlap_scaled") {
        config_error(
            "unknown success policy '" + r.success_policy + "' (expected always, constant, overlap_scaled)");
    }
    if (r.success_policy == "constant" && !(r.success_p > 0.0 && r.success_p <= 1.0)) {
        config_error("success-p must lie in (0, 1], got " + std::to_string(r.success_p));
    }
    require_unit_interval(r.tol, "tol");
    require_unit_interval(r.scan_tol, "scan-tol");
    if (!(r.grid_step > 0.0 && r.grid_step <= kMaxGridStep)) {
        config_error("grid-step must lie in (0, 0.1] radians, got " + std::to_string(r.grid_step));
    }
    if (r.truth == 0) {
        config_error("truth is a 1-based hypothesis index");
    }
    // Surfaces weight and counterexample violations as config errors.
    make_counterexample(r).validate();
    make_superposer(r);
    return r;
}

CounterexampleParams make_counterexample(const RunConfig &resolved) {
    return CounterexampleParams::standard(resolved.dim, resolved.a, resolved.b.value_or(0.0));
}

SuperposerConfig make_superposer(const RunConfig &resolved) {
    Complex alpha = std::polar(resolved.alpha_mod, resolved.alpha_arg);
    Complex beta = std::polar(resolved.beta_mod.value_or(0.0), resolved.beta_arg);

    PhasePolicy phase = ConstantPhase{resolved.theta};
    if (resolved.phase_policy == "overlap_arg") {
        phase = OverlapArgPhase{};
    } else if (resolved.phase_policy == "canonical_hash") {
        phase = CanonicalHashPhase{};
    } else if (resolved.theta1 || resolved.theta2 || resolved.theta3) {
        PinnedPhase pinned;
        pinned.fallback = resolved.theta;
        StateSet inputs = build_counterexample(make_counterexample(resolved));
        const PureState phi = make_counterexample(resolved).phi;
        const std::array<const std::optional<double> *, 3> per_member{
            &resolved.theta1, &resolved.theta2, &resolved.theta3};
        for (std::size_t j = 0; j < 3; ++j) {
            pinned.pin(inputs[j], phi, per_member[j]->value_or(resolved.theta));
        }
        phase = std::move(pinned);
    }

    SuccessPolicy success = AlwaysSucceed{};
    if (resolved.success_policy == "constant") {
        success = ConstantSuccess{resolved.success_p};
    } else if (resolved.success_policy == "overlap_scaled") {
        success = OverlapScaledSuccess{};
    }
    return SuperposerConfig(alpha, beta, std::move(phase), std::move(success));
}

std::string run_verify(const RunConfig &config) {
    RunConfig r = resolve(config);
    CounterexampleParams params = make_counterexample(r);
    SuperposerConfig cfg = make_superposer(r);

    StateSet inputs = build_counterexample(params);
    RankResult input_rank = numerical_rank(inputs.gram(), r.tol);
    SuperposedSet sup = apply_superposer_to_set(cfg, params);
    DependenceCertificate cert = certify_independence(sup.outputs, r.tol);
    DegeneracyLocus locus = solve_degeneracy_analytic(r.a, *r.b);
    PhasePair used{sup.phases.theta21(), sup.phases.theta31()};
    double locus_distance = hausdorff_distance({used}, {locus.solutions.front()});
    locus_distance = std::min(locus_distance, hausdorff_distance({used}, {locus.solutions.back()}));

    json result{
        {"input_rank", input_rank.rank},
        {"input_singular_values", input_rank.singular_values},
        {"output_rank", cert.gram_rank.rank},
        {"output_singular_values", cert.gram_rank.singular_values},
        {"phase_policy", std::string(phase_policy_name(cfg.phase_policy()))},
        {"phases", to_json(sup.phases)},
        {"certificate", to_json(cert)},
        {"inputs", to_json(inputs)},
        {"outputs", to_json(sup.outputs)},
        {"output_gram", to_json(sup.outputs.gram())},
        {"locus_distance", locus_distance},
    };
    return envelope(r, "verify", std::move(result));
}

std::string scan_to_csv(const ScanResult &scan) {
    std::string out = "theta21,theta31,min_singular_value,rank\n";
    out.reserve(out.size() + scan.samples.size() * 72);
    char line[128];
    for (const auto &s : scan.samples) {
        int n = std::snprintf(
            line, sizeof(line), "%.17g,%.17g,%.17g,%zu\n", s.theta21, s.theta31, s.min_singular_value, s.rank);
        out.append(line, static_cast<std::size_t>(n));
    }
    return out;
}

ScanOutput run_scan(const RunConfig &config) {
    RunConfig r = resolve(config);
    CounterexampleParams params = make_counterexample(r);
    SuperposerConfig cfg = make_superposer(r);
    ScanOptions options;
    options.grid_step = r.grid_step;
    options.rank_tol = r.scan_tol;
    ScanResult scan = scan_degeneracy_numeric(params, cfg.alpha(), cfg.beta(), options);
    DegeneracyLocus analytic = solve_degeneracy_analytic(r.a, *r.b);

    json detections = json::array();
    for (const auto &d : scan.detections) {
        detections.push_back(json{
            {"grid", to_json(d.grid)},
            {"located", to_json(d.located)},
            {"min_singular_value", d.min_singular_value},
            {"rank", d.rank},
        });
    }
    json clusters = json::array();
    for (const auto &c : cluster_pairs(scan.locus.solutions, 1.5 * r.grid_step)) {
        json entry = to_json(c.center);
        entry["size"] = c.size;
        clusters.push_back(std::move(entry));
    }
    json analytic_json = json::array();
    for (const auto &s : analytic.solutions) {
        json entry = to_json(s);
        entry["residual"] = degeneracy_residual(r.a, *r.b, s);
        analytic_json.push_back(std::move(entry));
    }
    double deviation = hausdorff_distance(scan.locus.solutions, analytic.solutions);
    json result{
        {"grid_step", scan.grid_step},
        {"points_per_axis", scan.points_per_axis},
        {"rank_tolerance", r.scan_tol},
        {"detections", std::move(detections)},
        {"clusters", std::move(clusters)},
        {"analytic", std::move(analytic_json)},
        {"analytic_family", analytic.family},
        {"max_deviation", std::isfinite(deviation) ? json(deviation) : json(nullptr)},
        {"within_one_step", deviation <= r.grid_step * (1.0 + 1e-9)},
    };
    return ScanOutput{envelope(r, "scan", std::move(result)), scan_to_csv(scan)};
}

std::string run_demo(const RunConfig &config) {
    RunConfig r = resolve(config);
    CounterexampleParams params = make_counterexample(r);
    SuperposerConfig cfg = make_superposer(r);
    Rng rng(r.seed);
    DemoReport d = forbidden_task_demo(params, cfg, r.trials, rng);
    double deviation = d.empirical_conclusive_rate - d.predicted_conclusive_rate;
    json result{
        {"trials", d.trials},
        {"input_rank", d.input_rank},
        {"output_rank", d.certificate.gram_rank.rank},
        {"phases", to_json(d.phases)},
        {"certificate", to_json(d.certificate)},
        {"secret_counts", d.secret_counts},
        {"conclusive_counts", d.identified_counts},
        {"inconclusive", d.inconclusive},
        {"superposer_failures", d.superposer_failures},
        {"misidentifications", d.misidentifications},
        {"clone_successes", d.clone_successes},
        {"min_clone_fidelity", d.min_clone_fidelity},
        {"min_input_clone_fidelity", d.min_input_clone_fidelity},
        {"usd_success_probabilities", d.usd_success_probabilities},
        {"superposer_success_probabilities", d.superposer_success_probabilities},
        {"predicted_conclusive_rate", d.predicted_conclusive_rate},
        {"empirical_conclusive_rate", d.empirical_conclusive_rate},
        {"conclusive_rate_sigma", d.conclusive_rate_sigma},
        {"within_3_sigma", d.trials == 0 || std::abs(deviation) <= 3.0 * d.conclusive_rate_sigma},
    };
    return envelope(r, "demo", std::move(result));
}

std::string run_usd(const RunConfig &config, std::string_view states_json) {
    RunConfig r = config;
    require_unit_interval(r.tol, "tol");
    if (r.truth == 0) {
        config_error("truth is a 1-based hypothesis index");
    }
    json doc = json::parse(states_json.begin(), states_json.end(), nullptr, false);
    if (doc.is_discarded()) {
        config_error("states file is not valid JSON");
    }
    if (doc.is_object() && doc.contains("states")) {
        doc = doc["states"];
    }
    if (!doc.is_array() || doc.empty()) {
        config_error("states file must hold a nonempty array of states");
    }
    std::vector<PureState> members;
    for (const auto &s : doc) {
        members.push_back(normalize(parse_state(s)));
    }
    StateSet hypotheses(std::move(members));
    if (r.truth > hypotheses.size()) {
        config_error(
            "truth index " + std::to_string(r.truth) + " exceeds the " + std::to_string(hypotheses.size()) +
            " hypotheses");
    }

    RankResult rank = numerical_rank(hypotheses.gram(), r.tol);
    json result{
        {"hypotheses", to_json(hypotheses)},
        {"gram", to_json(hypotheses.gram())},
        {"rank", to_json(rank)},
    };
    if (rank.rank < hypotheses.size()) {
        result["possible"] = false;
        result["reason"] = "hypotheses are linearly dependent; no unambiguous discrimination exists";
        return envelope(r, "usd", std::move(result));
    }

    USDMeasurement m = build_usd(hypotheses);
    std::vector<double> success = success_probabilities(m, hypotheses);
    json elements = json::array();
    for (const auto &e : m.elements) {
        elements.push_back(to_json(e));
    }
    Rng rng(r.seed);
    DiscriminationOutcome sim = simulate_usd(m, hypotheses[r.truth - 1], r.trials, rng);
    std::uint64_t wrong = 0;
    for (std::size_t k = 1; k < sim.counts.size(); ++k) {
        if (k != r.truth) {
            wrong += sim.counts[k];
        }
    }
    double p = success[r.truth - 1];
    double n = static_cast<double>(sim.trials);
    double empirical = sim.trials == 0 ? 0.0 : static_cast<double>(sim.counts[r.truth]) / n;
    double sigma = sim.trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / n);

    result["possible"] = true;
    result["measurement"] = json{
        {"scale", m.scale},
        {"elements", std::move(elements)},
        {"inconclusive", to_json(m.inconclusive)},
        {"span_projector", to_json(m.span_projector)},
    };
    result["success_probabilities"] = success;
    result["simulation"] = json{
        {"truth", r.truth},
        {"trials", sim.trials},
        {"counts", sim.counts},
        {"misidentifications", wrong},
        {"predicted_success_rate", p},
        {"empirical_success_rate", empirical},
        {"sigma", sigma},
    };
    return envelope(r, "usd", std::move(result));
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidConfig:
        case ErrorCode::InvalidParams:
        case ErrorCode::InvalidState:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::EmptySet:
        case ErrorCode::NullVector:
        case ErrorCode::NullSuperposition:
        case ErrorCode::WrongSetSize:
            return 2;
        case ErrorCode::DependentOutputs:
            return 4;
        case ErrorCode::NonFiniteEntry:
        case ErrorCode::LinearlyDependentInput:
        case ErrorCode::NotHermitian:
        case ErrorCode::NonConvergence:
        case ErrorCode::MeasurementMismatch:
        case ErrorCode::Io:
        case ErrorCode::Internal:
            return 3;
    }
    return 3;
}

}  // namespace nogo
