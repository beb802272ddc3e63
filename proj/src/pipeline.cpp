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

#include "nogo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "nogo/error.hpp"

namespace nogo {

namespace {

constexpr double kOrthogonalityTolerance = 1e-10;
constexpr double kPatternSearchFloor = 1e-13;

PhasePair make_pair(double theta21, double theta31) {
    return PhasePair{wrap_angle(theta21), wrap_angle(theta31)};
}

struct GramSpectrum {
    double min_singular_value = 0.0;
    double max_singular_value = 0.0;
    std::size_t rank = 0;
};

GramSpectrum output_spectrum(
    const CounterexampleParams &p, Complex alpha, Complex beta, double theta21, double theta31, double tol) {
    StateSet outputs = superposed_outputs(p, alpha, beta, PhaseTriple{0.0, theta21, theta31});
    RankResult r = numerical_rank(outputs.gram(), tol);
    return GramSpectrum{r.singular_values.back(), r.singular_values.front(), r.rank};
}

}  // namespace

CounterexampleParams CounterexampleParams::standard(std::size_t dim, double a, double b) {
    if (dim < 3) {
        throw Error(
            ErrorCode::InvalidParams, "counterexample needs dimension d >= 3 (got " + std::to_string(dim) + ")");
    }
    CounterexampleParams p;
    p.dim = dim;
    p.a = a;
    p.b = b;
    p.psi = PureState::basis(dim, 0);
    p.psi_perp = PureState::basis(dim, 1);
    p.phi = PureState::basis(dim, 2);
    return p;
}

void CounterexampleParams::validate() const {
    if (dim < 3) {
        throw Error(
            ErrorCode::InvalidParams, "counterexample needs dimension d >= 3 (got " + std::to_string(dim) + ")");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::InvalidParams, "coefficients a and b must be finite");
    }
    if (a == 0.0 || b == 0.0) {
        throw Error(
            ErrorCode::InvalidParams,
            "coefficients a and b must both be nonzero (got a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
    }
    if (std::abs(a * a + b * b - 1.0) > kNormTolerance) {
        throw Error(
            ErrorCode::InvalidParams, "coefficients must satisfy a^2 + b^2 = 1 (got " + std::to_string(a * a + b * b) +
                                          ")");
    }
    if (psi.dim() != dim || psi_perp.dim() != dim || phi.dim() != dim) {
        throw Error(ErrorCode::InvalidParams, "counterexample states must all have dimension " + std::to_string(dim));
    }
    if (std::abs(overlap(psi, psi_perp)) > kOrthogonalityTolerance ||
        std::abs(overlap(psi, phi)) > kOrthogonalityTolerance ||
        std::abs(overlap(psi_perp, phi)) > kOrthogonalityTolerance) {
        throw Error(ErrorCode::InvalidParams, "psi, psi_perp and phi must be pairwise orthogonal");
    }
}

StateSet build_counterexample(const CounterexampleParams &p) {
    p.validate();
    CVector third(p.dim);
    for (std::size_t k = 0; k < p.dim; ++k) {
        third[k] = p.a * p.psi[k] + p.b * p.psi_perp[k];
    }
    return StateSet({p.psi, p.psi_perp, normalize(third)});
}

SuperposedSet apply_superposer_to_set(const SuperposerConfig &cfg, const CounterexampleParams &p) {
    StateSet inputs = build_counterexample(p);
    std::vector<PureState> outputs;
    std::array<double, 3> thetas{};
    const double phi_shift = std::arg(overlap(p.phi, PureState::from_amplitudes(canonicalize(p.phi).amplitudes)));
    for (std::size_t j = 0; j < 3; ++j) {
        outputs.push_back(superpose_deterministic(cfg, inputs[j], p.phi));
        // Relative phase of the output expressed in the raw input vectors.
        double psi_shift = std::arg(overlap(inputs[j], PureState::from_amplitudes(canonicalize(inputs[j]).amplitudes)));
        thetas[j] = wrap_angle(policy_phase(cfg.phase_policy(), inputs[j], p.phi) + phi_shift - psi_shift);
    }
    return SuperposedSet{StateSet(std::move(outputs)), PhaseTriple{thetas[0], thetas[1], thetas[2]}};
}

StateSet superposed_outputs(const CounterexampleParams &p, Complex alpha, Complex beta, const PhaseTriple &phases) {
    StateSet inputs = build_counterexample(p);
    const std::array<double, 3> thetas{phases.theta1, phases.theta2, phases.theta3};
    std::vector<PureState> outputs;
    for (std::size_t j = 0; j < 3; ++j) {
        outputs.push_back(superpose_with_phase(alpha, beta, inputs[j], p.phi, thetas[j]));
    }
    return StateSet(std::move(outputs));
}

DependenceCertificate certify_independence(const StateSet &outputs, double tol) {
    if (outputs.size() != 3) {
        throw Error(
            ErrorCode::WrongSetSize, "certificate needs exactly 3 states, got " + std::to_string(outputs.size()));
    }
    DependenceCertificate cert;
    cert.gram_rank = numerical_rank(outputs.gram(), tol);
    cert.independent = cert.gram_rank.rank == 3;

    // G = A^H A, so the eigenvector of the smallest Gram eigenvalue is the
    // least-singular right vector of the amplitude matrix.
    HermitianEigen eig = hermitian_eigen(outputs.gram());
    std::array<Complex, 3> x{eig.vectors(0, 0), eig.vectors(1, 0), eig.vectors(2, 0)};
    double max_mod = 0.0;
    for (const auto &c : x) {
        max_mod = std::max(max_mod, std::abs(c));
    }
    std::size_t pivot = 0;
    while (std::abs(x[pivot]) < max_mod * (1.0 - 1e-12)) {
        ++pivot;
    }
    Complex scale = 1.0 / x[pivot];
    for (auto &c : x) {
        c *= scale;
    }
    x[pivot] = 1.0;

    CVector combo(outputs.dim());
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < outputs.dim(); ++k) {
            combo[k] += x[j] * outputs[j][k];
        }
    }
    cert.residual_norm = norm(combo);
    if (!cert.independent) {
        cert.coefficients = x;
    }
    return cert;
}

DegeneracyLocus solve_degeneracy_analytic(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a == 0.0 || b == 0.0 || std::abs(a * a + b * b - 1.0) > kNormTolerance) {
        throw Error(ErrorCode::InvalidParams, "degeneracy solver needs real nonzero a, b with a^2 + b^2 = 1");
    }
    DegeneracyLocus locus;
    locus.family = "theta21 in {pi/2, 3pi/2}; a = cos(theta31), b = sin(theta31) on pi/2 and -sin(theta31) on 3pi/2";
    locus.solutions.push_back(make_pair(std::numbers::pi / 2.0, std::atan2(b, a)));
    locus.solutions.push_back(make_pair(3.0 * std::numbers::pi / 2.0, std::atan2(-b, a)));
    return locus;
}

double degeneracy_residual(double a, double b, const PhasePair &pair) {
    return std::abs(Complex(a, 0.0) + std::polar(1.0, pair.theta21) * b - std::polar(1.0, pair.theta31));
}

double angular_distance(double x, double y) {
    double d = std::abs(wrap_angle(x) - wrap_angle(y));
    return std::min(d, kTwoPi - d);
}

double torus_distance(const PhasePair &x, const PhasePair &y) {
    return std::max(angular_distance(x.theta21, y.theta21), angular_distance(x.theta31, y.theta31));
}

double hausdorff_distance(const std::vector<PhasePair> &x, const std::vector<PhasePair> &y) {
    if (x.empty() && y.empty()) {
        return 0.0;
    }
    if (x.empty() || y.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    auto directed = [](const std::vector<PhasePair> &from, const std::vector<PhasePair> &to) {
        double worst = 0.0;
        for (const auto &f : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto &t : to) {
                best = std::min(best, torus_distance(f, t));
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(x, y), directed(y, x));
}

std::vector<PhaseCluster> cluster_pairs(const std::vector<PhasePair> &pairs, double link) {
    const std::size_t n = pairs.size();
    std::vector<std::size_t> label(n, n);
    std::vector<PhaseCluster> clusters;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (label[seed] != n) {
            continue;
        }
        std::size_t id = clusters.size();
        std::vector<std::size_t> stack{seed};
        label[seed] = id;
        std::vector<std::size_t> members;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            members.push_back(cur);
            for (std::size_t k = 0; k < n; ++k) {
                if (label[k] == n && torus_distance(pairs[cur], pairs[k]) <= link) {
                    label[k] = id;
                    stack.push_back(k);
                }
            }
        }
        Complex s21{0.0, 0.0};
        Complex s31{0.0, 0.0};
        for (std::size_t m : members) {
            s21 += std::polar(1.0, pairs[m].theta21);
            s31 += std::polar(1.0, pairs[m].theta31);
        }
        clusters.push_back(PhaseCluster{make_pair(std::arg(s21), std::arg(s31)), members.size()});
    }
    return clusters;
}

ScanResult scan_degeneracy_numeric(const CounterexampleParams &p, Complex alpha, Complex beta, const ScanOptions &options) {
    p.validate();
    const double step = options.grid_step;
    if (!(step > 0.0 && step <= kMaxGridStep)) {
        throw Error(
            ErrorCode::InvalidParams, "grid step must lie in (0, 0.1] radians (got " + std::to_string(step) + ")");
    }
    if (!(options.rank_tol > 0.0 && options.rank_tol < 1.0)) {
        throw Error(ErrorCode::InvalidParams, "scan rank tolerance must lie in (0, 1)");
    }
    // Validates the weights.
    SuperposerConfig weights(alpha, beta);

    ScanResult result;
    result.grid_step = step;
    const auto n = static_cast<std::size_t>(std::ceil(kTwoPi / step - 1e-9));
    result.points_per_axis = n;

    std::vector<double> axis21;
    if (options.theta21_only) {
        axis21.push_back(wrap_angle(*options.theta21_only));
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            axis21.push_back(static_cast<double>(i) * step);
        }
    }
    const std::size_t rows = axis21.size();

    std::vector<GramSpectrum> grid(rows * n);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            grid[i * n + k] = output_spectrum(p, alpha, beta, axis21[i], static_cast<double>(k) * step, options.rank_tol);
        }
    }
    if (options.keep_samples) {
        result.samples.reserve(grid.size());
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto &g = grid[i * n + k];
                result.samples.push_back(ScanSample{axis21[i], static_cast<double>(k) * step, g.min_singular_value, g.rank});
            }
        }
    }

    auto relative_min = [](const GramSpectrum &g) {
        return g.max_singular_value > 0.0 ? g.min_singular_value / g.max_singular_value : 0.0;
    };

    std::vector<bool> detected(grid.size(), false);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        if (grid[idx].rank < 3) {
            detected[idx] = true;
        }
    }

    // Refine discrete local minima; the rank drop may sit between grid points.
    const bool line = rows == 1;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t idx = i * n + k;
            if (detected[idx]) {
                continue;
            }
            double here = relative_min(grid[idx]);
            bool is_min = true;
            for (int di = line ? 0 : -1; di <= (line ? 0 : 1) && is_min; ++di) {
                for (int dk = -1; dk <= 1; ++dk) {
                    if (di == 0 && dk == 0) {
                        continue;
                    }
                    std::size_t ni = (i + rows + static_cast<std::size_t>(di + static_cast<int>(rows))) % rows;
                    std::size_t nk = (k + static_cast<std::size_t>(dk + static_cast<int>(n))) % n;
                    if (relative_min(grid[ni * n + nk]) < here) {
                        is_min = false;
                        break;
                    }
                }
            }
            if (!is_min) {
                continue;
            }
            double t21 = axis21[i];
            double t31 = static_cast<double>(k) * step;
            double best = here;
            const double lo21 = t21 - 1.5 * step;
            const double hi21 = t21 + 1.5 * step;
            const double lo31 = t31 - 1.5 * step;
            const double hi31 = t31 + 1.5 * step;
            double h = 0.5 * step;
            while (h > kPatternSearchFloor) {
                bool moved = false;
                const std::array<std::array<double, 2>, 4> dirs{{{0, 1}, {0, -1}, {1, 0}, {-1, 0}}};
                for (const auto &d : dirs) {
                    if (line && d[0] != 0) {
                        continue;
                    }
                    double c21 = t21 + d[0] * h;
                    double c31 = t31 + d[1] * h;
                    if (c21 < lo21 || c21 > hi21 || c31 < lo31 || c31 > hi31) {
                        continue;
                    }
                    double v = relative_min(output_spectrum(p, alpha, beta, c21, c31, options.rank_tol));
                    if (v < best) {
                        best = v;
                        t21 = c21;
                        t31 = c31;
                        moved = true;
                        break;
                    }
                }
                if (!moved) {
                    h *= 0.5;
                }
            }
            GramSpectrum refined = output_spectrum(p, alpha, beta, t21, t31, options.rank_tol);
            if (refined.rank < 3) {
                auto nearest = [&](double theta) {
                    return static_cast<std::size_t>(std::llround(wrap_angle(theta) / step)) % n;
                };
                std::size_t gk = nearest(t31);
                std::size_t gi = line ? 0 : nearest(t21);
                ScanDetection det;
                det.grid = PhasePair{axis21[gi], static_cast<double>(gk) * step};
                det.located = make_pair(t21, t31);
                det.min_singular_value = refined.min_singular_value;
                det.rank = refined.rank;
                std::size_t gidx = gi * n + gk;
                if (!detected[gidx]) {
                    detected[gidx] = true;
                    result.detections.push_back(det);
                }
            }
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto &g = grid[i * n + k];
            if (g.rank < 3) {
                PhasePair at{axis21[i], static_cast<double>(k) * step};
                result.detections.push_back(ScanDetection{at, at, g.min_singular_value, g.rank});
            }
        }
    }
    std::sort(result.detections.begin(), result.detections.end(), [](const ScanDetection &x, const ScanDetection &y) {
        return std::tie(x.grid.theta21, x.grid.theta31) < std::tie(y.grid.theta21, y.grid.theta31);
    });
    for (const auto &d : result.detections) {
        result.locus.solutions.push_back(d.grid);
    }
    result.locus.family = "numerical scan";
    return result;
}

DemoReport forbidden_task_demo(
    const CounterexampleParams &p, const SuperposerConfig &cfg, std::uint64_t trials, Rng &rng) {
    StateSet inputs = build_counterexample(p);
    SuperposedSet sup = apply_superposer_to_set(cfg, p);

    DemoReport report;
    report.trials = trials;
    report.input_rank = numerical_rank(inputs.gram()).rank;
    report.phases = sup.phases;
    report.certificate = certify_independence(sup.outputs);
    if (!report.certificate.independent) {
        throw Error(
            ErrorCode::DependentOutputs,
            "phase policy lands on the degeneracy locus (theta21=" + std::to_string(sup.phases.theta21()) +
                ", theta31=" + std::to_string(sup.phases.theta31()) + "); outputs stay dependent");
    }

    USDMeasurement usd = build_usd(sup.outputs);
    report.usd_success_probabilities = success_probabilities(usd, sup.outputs);
    report.secret_counts.assign(3, 0);
    report.identified_counts.assign(3, 0);
    double predicted = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        double ps = success_probability(cfg.success_policy(), inputs[j], p.phi);
        report.superposer_success_probabilities.push_back(ps);
        predicted += ps * report.usd_success_probabilities[j] / 3.0;
    }
    report.predicted_conclusive_rate = predicted;
    if (trials == 0) {
        return report;
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::size_t secret = rng.uniform_index(3);
        ++report.secret_counts[secret];
        SuperposeOutcome outcome = superpose(cfg, inputs[secret], p.phi, rng);
        if (!outcome.succeeded) {
            ++report.superposer_failures;
            continue;
        }
        CloneResult clone = probabilistic_clone(usd, sup.outputs, *outcome.state, rng);
        if (!clone.succeeded) {
            ++report.inconclusive;
            continue;
        }
        ++report.clone_successes;
        report.min_clone_fidelity = std::min(report.min_clone_fidelity, clone.fidelity_to_input);
        const PureState &prepared = inputs[clone.label - 1];
        double input_fid = fidelity(inputs[secret], prepared) * fidelity(inputs[secret], prepared);
        report.min_input_clone_fidelity = std::min(report.min_input_clone_fidelity, input_fid);
        if (clone.label - 1 == secret) {
            ++report.identified_counts[secret];
        } else {
            ++report.misidentifications;
        }
    }
    const double n = static_cast<double>(trials);
    report.empirical_conclusive_rate = static_cast<double>(report.clone_successes) / n;
    report.conclusive_rate_sigma = std::sqrt(predicted * (1.0 - predicted) / n);
    return report;
}

}  // namespace nogo
