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

#ifndef NOGO_PIPELINE_HPP
#define NOGO_PIPELINE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nogo/discrimination.hpp"
#include "nogo/linalg.hpp"
#include "nogo/rng.hpp"
#include "nogo/states.hpp"
#include "nogo/superposer.hpp"

namespace nogo {

inline constexpr double kScanRankTolerance = 1e-6;
inline constexpr double kMaxGridStep = 0.1;
inline constexpr double kDependenceResidualBound = 1e-8;

/// Three states psi, psi_perp, a psi + b psi_perp that span only a plane,
/// plus a probe phi orthogonal to both. Requires dim >= 3, real nonzero a, b
/// with a^2 + b^2 = 1, and pairwise orthogonal psi, psi_perp, phi.
struct CounterexampleParams {
    std::size_t dim = 3;
    double a = 0.0;
    double b = 0.0;
    PureState psi = PureState::basis(3, 0);
    PureState psi_perp = PureState::basis(3, 1);
    PureState phi = PureState::basis(3, 2);

    /// psi = e_1, psi_perp = e_2, phi = e_3 in dimension `dim`.
    static CounterexampleParams standard(std::size_t dim, double a, double b);

    /// Throws InvalidParams naming the first violated requirement.
    void validate() const;
};

StateSet build_counterexample(const CounterexampleParams &p);

struct PhaseTriple {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;

    double theta21() const {
        return wrap_angle(theta2 - theta1);
    }
    double theta31() const {
        return wrap_angle(theta3 - theta1);
    }
};

struct SuperposedSet {
    StateSet outputs;
    PhaseTriple phases;
};

/// Feeds each counterexample member through the oracle together with phi.
/// The reported phases are the relative phases of the outputs written in the
/// raw input vectors, so superposed_outputs reproduces each output up to a
/// global phase.
SuperposedSet apply_superposer_to_set(const SuperposerConfig &cfg, const CounterexampleParams &p);

/// Same outputs with the three phases given explicitly instead of by policy.
StateSet superposed_outputs(const CounterexampleParams &p, Complex alpha, Complex beta, const PhaseTriple &phases);

struct DependenceCertificate {
    bool independent = false;
    /// Null-space coefficients, present iff dependent; max modulus 1 with the
    /// first maximal entry real positive.
    std::optional<std::array<Complex, 3>> coefficients;
    /// ||x1 Psi1 + x2 Psi2 + x3 Psi3|| for the least-singular combination.
    double residual_norm = 0.0;
    RankResult gram_rank;
};

DependenceCertificate certify_independence(const StateSet &outputs, double tol = kDefaultRankTolerance);

struct PhasePair {
    double theta21 = 0.0;
    double theta31 = 0.0;
};

struct DegeneracyLocus {
    std::vector<PhasePair> solutions;
    std::string family;
};

/// Phase pairs where the superposed triple stays dependent:
/// theta21 = pi/2 with (a, b) = (cos, sin)(theta31), and theta21 = 3 pi/2
/// with (a, b) = (cos, -sin)(theta31).
DegeneracyLocus solve_degeneracy_analytic(double a, double b);

/// |a + e^{i theta21} b - e^{i theta31}|
double degeneracy_residual(double a, double b, const PhasePair &pair);

struct ScanOptions {
    double grid_step = std::numbers::pi / 180.0;
    double rank_tol = kScanRankTolerance;
    /// Restrict the sweep to a single theta21 value.
    std::optional<double> theta21_only;
    bool keep_samples = true;
};

struct ScanSample {
    double theta21 = 0.0;
    double theta31 = 0.0;
    /// Smallest singular value of the output Gram matrix.
    double min_singular_value = 0.0;
    std::size_t rank = 0;
};

struct ScanDetection {
    PhasePair grid;
    /// Where the rank drop was confirmed; equals `grid` unless found by
    /// refining a local minimum between grid points.
    PhasePair located;
    double min_singular_value = 0.0;
    std::size_t rank = 0;
};

struct ScanResult {
    double grid_step = 0.0;
    std::size_t points_per_axis = 0;
    std::vector<ScanSample> samples;
    std::vector<ScanDetection> detections;
    DegeneracyLocus locus;
};

/// Sweeps theta21, theta31 over [0, 2 pi)^2 with theta1 = 0 and reports grid
/// pairs whose outputs are rank deficient at `rank_tol`. Grid points that are
/// local minima of the smallest singular value are refined by pattern search
/// so loci that fall between grid points are still reported at the nearest
/// grid pair.
ScanResult scan_degeneracy_numeric(
    const CounterexampleParams &p, Complex alpha, Complex beta, const ScanOptions &options = {});

/// Distance on the circle.
double angular_distance(double x, double y);
/// Max-metric distance on the torus.
double torus_distance(const PhasePair &x, const PhasePair &y);
/// Two-sided Hausdorff distance in the torus max metric. Returns +inf when
/// exactly one side is empty and 0 when both are.
double hausdorff_distance(const std::vector<PhasePair> &x, const std::vector<PhasePair> &y);

struct PhaseCluster {
    PhasePair center;
    std::size_t size = 0;
};

/// Groups pairs that are chained within `link` of each other; centers are
/// circular means.
std::vector<PhaseCluster> cluster_pairs(const std::vector<PhasePair> &pairs, double link);

struct DemoReport {
    std::uint64_t trials = 0;
    std::uint64_t superposer_failures = 0;
    std::uint64_t inconclusive = 0;
    std::uint64_t misidentifications = 0;
    std::uint64_t clone_successes = 0;
    /// Per hypothesis: how often it was the secret, and how often it was
    /// correctly identified.
    std::vector<std::uint64_t> secret_counts;
    std::vector<std::uint64_t> identified_counts;
    /// Fidelity of the clone pair to the superposed state, and of the
    /// re-prepared input pair to the original dependent input. 1 when no
    /// clone succeeded.
    double min_clone_fidelity = 1.0;
    double min_input_clone_fidelity = 1.0;
    double predicted_conclusive_rate = 0.0;
    double empirical_conclusive_rate = 0.0;
    double conclusive_rate_sigma = 0.0;
    std::vector<double> usd_success_probabilities;
    std::vector<double> superposer_success_probabilities;
    std::size_t input_rank = 0;
    PhaseTriple phases;
    DependenceCertificate certificate;
};

/// Dependent inputs -> superposer -> USD on the (independent) outputs ->
/// clone. Throws DependentOutputs when the policy's phases sit on the
/// degeneracy locus.
DemoReport forbidden_task_demo(
    const CounterexampleParams &p, const SuperposerConfig &cfg, std::uint64_t trials, Rng &rng);

}  // namespace nogo

#endif
