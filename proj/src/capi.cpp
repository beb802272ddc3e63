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

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "nogo/commands.hpp"
#include "nogo/discrimination.hpp"
#include "nogo/error.hpp"
#include "nogo/pipeline.hpp"
#include "nogo/states.hpp"

struct nogo_config {
    nogo::RunConfig run;
};

struct nogo_state_set {
    std::size_t dim = 0;
    std::vector<nogo::PureState> members;
};

struct nogo_usd {
    nogo::StateSet hypotheses;
    nogo::USDMeasurement measurement;
};

namespace {

thread_local std::string g_last_error;

nogo_status to_status(nogo::ErrorCode code) {
    using nogo::ErrorCode;
    switch (code) {
        case ErrorCode::EmptySet:
            return NOGO_ERR_EMPTY_SET;
        case ErrorCode::DimensionMismatch:
            return NOGO_ERR_DIMENSION_MISMATCH;
        case ErrorCode::NonFiniteEntry:
            return NOGO_ERR_NON_FINITE;
        case ErrorCode::LinearlyDependentInput:
            return NOGO_ERR_LINEARLY_DEPENDENT;
        case ErrorCode::NotHermitian:
            return NOGO_ERR_NOT_HERMITIAN;
        case ErrorCode::NonConvergence:
            return NOGO_ERR_NON_CONVERGENCE;
        case ErrorCode::NullVector:
            return NOGO_ERR_NULL_VECTOR;
        case ErrorCode::InvalidState:
            return NOGO_ERR_INVALID_STATE;
        case ErrorCode::NullSuperposition:
            return NOGO_ERR_NULL_SUPERPOSITION;
        case ErrorCode::InvalidParams:
            return NOGO_ERR_INVALID_PARAMS;
        case ErrorCode::MeasurementMismatch:
            return NOGO_ERR_MEASUREMENT_MISMATCH;
        case ErrorCode::WrongSetSize:
            return NOGO_ERR_WRONG_SET_SIZE;
        case ErrorCode::DependentOutputs:
            return NOGO_ERR_DEPENDENT_OUTPUTS;
        case ErrorCode::InvalidConfig:
            return NOGO_ERR_INVALID_CONFIG;
        case ErrorCode::Io:
            return NOGO_ERR_IO;
        case ErrorCode::Internal:
            return NOGO_ERR_INTERNAL;
    }
    return NOGO_ERR_INTERNAL;
}

nogo_status fail(nogo_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <class F>
nogo_status guarded(F &&body) {
    g_last_error.clear();
    try {
        body();
        return NOGO_OK;
    } catch (const nogo::Error &e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(NOGO_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(NOGO_ERR_INTERNAL, e.what());
    }
}

char *copy_string(const std::string &s) {
    auto *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

nogo::StateSet to_state_set(const nogo_state_set &set) {
    return nogo::StateSet(set.members);
}

}  // namespace

extern "C" {

const char *nogo_version(void) {
    return "0.1.0";
}

const char *nogo_status_name(nogo_status status) {
    switch (status) {
        case NOGO_OK:
            return "ok";
        case NOGO_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case NOGO_ERR_EMPTY_SET:
            return "empty set";
        case NOGO_ERR_DIMENSION_MISMATCH:
            return "dimension mismatch";
        case NOGO_ERR_NON_FINITE:
            return "non-finite entry";
        case NOGO_ERR_LINEARLY_DEPENDENT:
            return "linearly dependent input";
        case NOGO_ERR_NOT_HERMITIAN:
            return "not Hermitian";
        case NOGO_ERR_NON_CONVERGENCE:
            return "non-convergence";
        case NOGO_ERR_NULL_VECTOR:
            return "null vector";
        case NOGO_ERR_INVALID_STATE:
            return "invalid state";
        case NOGO_ERR_NULL_SUPERPOSITION:
            return "null superposition";
        case NOGO_ERR_INVALID_PARAMS:
            return "invalid parameters";
        case NOGO_ERR_MEASUREMENT_MISMATCH:
            return "measurement mismatch";
        case NOGO_ERR_WRONG_SET_SIZE:
            return "wrong set size";
        case NOGO_ERR_DEPENDENT_OUTPUTS:
            return "dependent outputs";
        case NOGO_ERR_INVALID_CONFIG:
            return "invalid configuration";
        case NOGO_ERR_IO:
            return "i/o error";
        case NOGO_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char *nogo_last_error(void) {
    return g_last_error.c_str();
}

int nogo_status_exit_code(nogo_status status) {
    switch (status) {
        case NOGO_OK:
            return 0;
        case NOGO_ERR_INVALID_ARGUMENT:
            return 2;
        case NOGO_ERR_EMPTY_SET:
            return nogo::exit_code_for(nogo::ErrorCode::EmptySet);
        case NOGO_ERR_DIMENSION_MISMATCH:
            return nogo::exit_code_for(nogo::ErrorCode::DimensionMismatch);
        case NOGO_ERR_NON_FINITE:
            return nogo::exit_code_for(nogo::ErrorCode::NonFiniteEntry);
        case NOGO_ERR_LINEARLY_DEPENDENT:
            return nogo::exit_code_for(nogo::ErrorCode::LinearlyDependentInput);
        case NOGO_ERR_NOT_HERMITIAN:
            return nogo::exit_code_for(nogo::ErrorCode::NotHermitian);
        case NOGO_ERR_NON_CONVERGENCE:
            return nogo::exit_code_for(nogo::ErrorCode::NonConvergence);
        case NOGO_ERR_NULL_VECTOR:
            return nogo::exit_code_for(nogo::ErrorCode::NullVector);
        case NOGO_ERR_INVALID_STATE:
            return nogo::exit_code_for(nogo::ErrorCode::InvalidState);
        case NOGO_ERR_NULL_SUPERPOSITION:
            return nogo::exit_code_for(nogo::ErrorCode::NullSuperposition);
        case NOGO_ERR_INVALID_PARAMS:
            return nogo::exit_code_for(nogo::ErrorCode::InvalidParams);
        case NOGO_ERR_MEASUREMENT_MISMATCH:
            return nogo::exit_code_for(nogo::ErrorCode::MeasurementMismatch);
        case NOGO_ERR_WRONG_SET_SIZE:
            return nogo::exit_code_for(nogo::ErrorCode::WrongSetSize);
        case NOGO_ERR_DEPENDENT_OUTPUTS:
            return nogo::exit_code_for(nogo::ErrorCode::DependentOutputs);
        case NOGO_ERR_INVALID_CONFIG:
            return nogo::exit_code_for(nogo::ErrorCode::InvalidConfig);
        case NOGO_ERR_IO:
            return nogo::exit_code_for(nogo::ErrorCode::Io);
        case NOGO_ERR_INTERNAL:
            return nogo::exit_code_for(nogo::ErrorCode::Internal);
    }
    return 3;
}

void nogo_string_free(char *s) {
    std::free(s);
}

nogo_status nogo_config_create(nogo_config **out) {
    if (out == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null output pointer");
    }
    return guarded([&] { *out = new nogo_config(); });
}

void nogo_config_destroy(nogo_config *config) {
    delete config;
}

nogo_status nogo_config_set_real(nogo_config *config, nogo_option option, double value) {
    if (config == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null config");
    }
    nogo::RunConfig &r = config->run;
    switch (option) {
        case NOGO_OPT_A:
            r.a = value;
            break;
        case NOGO_OPT_B:
            r.b = value;
            break;
        case NOGO_OPT_ALPHA_MOD:
            r.alpha_mod = value;
            break;
        case NOGO_OPT_ALPHA_ARG:
            r.alpha_arg = value;
            break;
        case NOGO_OPT_BETA_MOD:
            r.beta_mod = value;
            break;
        case NOGO_OPT_BETA_ARG:
            r.beta_arg = value;
            break;
        case NOGO_OPT_THETA:
            r.theta = value;
            break;
        case NOGO_OPT_THETA1:
            r.theta1 = value;
            break;
        case NOGO_OPT_THETA2:
            r.theta2 = value;
            break;
        case NOGO_OPT_THETA3:
            r.theta3 = value;
            break;
        case NOGO_OPT_SUCCESS_P:
            r.success_p = value;
            break;
        case NOGO_OPT_TOL:
            r.tol = value;
            break;
        case NOGO_OPT_SCAN_TOL:
            r.scan_tol = value;
            break;
        case NOGO_OPT_GRID_STEP:
            r.grid_step = value;
            break;
        default:
            return fail(NOGO_ERR_INVALID_ARGUMENT, "option is not real-valued");
    }
    g_last_error.clear();
    return NOGO_OK;
}

nogo_status nogo_config_set_uint(nogo_config *config, nogo_option option, uint64_t value) {
    if (config == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null config");
    }
    nogo::RunConfig &r = config->run;
    switch (option) {
        case NOGO_OPT_DIM:
            r.dim = static_cast<std::size_t>(value);
            break;
        case NOGO_OPT_TRIALS:
            r.trials = value;
            break;
        case NOGO_OPT_SEED:
            r.seed = value;
            break;
        case NOGO_OPT_TRUTH:
            r.truth = static_cast<std::size_t>(value);
            break;
        case NOGO_OPT_DETERMINISTIC:
            r.deterministic = value != 0;
            break;
        default:
            return fail(NOGO_ERR_INVALID_ARGUMENT, "option is not integer-valued");
    }
    g_last_error.clear();
    return NOGO_OK;
}

nogo_status nogo_config_set_string(nogo_config *config, nogo_option option, const char *value) {
    if (config == nullptr || value == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null config or value");
    }
    switch (option) {
        case NOGO_OPT_PHASE_POLICY:
            config->run.phase_policy = value;
            break;
        case NOGO_OPT_SUCCESS_POLICY:
            config->run.success_policy = value;
            break;
        default:
            return fail(NOGO_ERR_INVALID_ARGUMENT, "option is not string-valued");
    }
    g_last_error.clear();
    return NOGO_OK;
}

nogo_status nogo_run_verify(const nogo_config *config, char **report_json) {
    if (config == nullptr || report_json == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null config or output pointer");
    }
    return guarded([&] { *report_json = copy_string(nogo::run_verify(config->run)); });
}

nogo_status nogo_run_scan(const nogo_config *config, char **summary_json, char **grid_csv) {
    if (config == nullptr || summary_json == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null config or output pointer");
    }
    return guarded([&] {
        nogo::ScanOutput out = nogo::run_scan(config->run);
        char *summary = copy_string(out.summary_json);
        if (grid_csv != nullptr) {
            try {
                *grid_csv = copy_string(out.grid_csv);
            } catch (...) {
                std::free(summary);
                throw;
            }
        }
        *summary_json = summary;
    });
}

nogo_status nogo_run_demo(const nogo_config *config, char **report_json) {
    if (config == nullptr || report_json == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null config or output pointer");
    }
    return guarded([&] { *report_json = copy_string(nogo::run_demo(config->run)); });
}

nogo_status nogo_run_usd(const nogo_config *config, const char *states_json, char **report_json) {
    if (config == nullptr || states_json == nullptr || report_json == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null config, states or output pointer");
    }
    return guarded([&] { *report_json = copy_string(nogo::run_usd(config->run, states_json)); });
}

nogo_status nogo_state_set_create(size_t dim, nogo_state_set **out) {
    if (out == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null output pointer");
    }
    if (dim < 2) {
        return fail(NOGO_ERR_INVALID_STATE, "state dimension must be at least 2");
    }
    return guarded([&] {
        auto *set = new nogo_state_set();
        set->dim = dim;
        *out = set;
    });
}

void nogo_state_set_destroy(nogo_state_set *set) {
    delete set;
}

nogo_status nogo_state_set_add(nogo_state_set *set, const double *amplitudes, size_t dim) {
    if (set == nullptr || amplitudes == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null set or amplitudes");
    }
    if (dim != set->dim) {
        return fail(NOGO_ERR_DIMENSION_MISMATCH, "state dimension differs from the set");
    }
    return guarded([&] {
        nogo::CVector v(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            v[k] = nogo::Complex(amplitudes[2 * k], amplitudes[2 * k + 1]);
        }
        set->members.push_back(nogo::normalize(v));
    });
}

size_t nogo_state_set_size(const nogo_state_set *set) {
    return set == nullptr ? 0 : set->members.size();
}

nogo_status nogo_state_set_rank(const nogo_state_set *set, double tol, size_t *rank) {
    if (set == nullptr || rank == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null set or output pointer");
    }
    return guarded([&] { *rank = nogo::numerical_rank(to_state_set(*set).gram(), tol).rank; });
}

nogo_status nogo_state_set_is_independent(const nogo_state_set *set, double tol, int *independent) {
    if (set == nullptr || independent == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null set or output pointer");
    }
    return guarded([&] { *independent = nogo::is_linearly_independent(to_state_set(*set), tol) ? 1 : 0; });
}

nogo_status nogo_usd_build(const nogo_state_set *hypotheses, nogo_usd **out) {
    if (hypotheses == nullptr || out == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null hypotheses or output pointer");
    }
    return guarded([&] {
        nogo::StateSet set = to_state_set(*hypotheses);
        nogo::USDMeasurement m = nogo::build_usd(set);
        *out = new nogo_usd{std::move(set), std::move(m)};
    });
}

void nogo_usd_destroy(nogo_usd *usd) {
    delete usd;
}

nogo_status nogo_usd_success_probabilities(const nogo_usd *usd, double *out, size_t count) {
    if (usd == nullptr || out == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null measurement or output pointer");
    }
    if (count != usd->hypotheses.size()) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "output length must equal the number of hypotheses");
    }
    return guarded([&] {
        std::vector<double> p = nogo::success_probabilities(usd->measurement, usd->hypotheses);
        std::copy(p.begin(), p.end(), out);
    });
}

nogo_status nogo_usd_simulate(
    const nogo_usd *usd, size_t truth_index, uint64_t trials, uint64_t seed, uint64_t *counts, size_t count) {
    if (usd == nullptr || counts == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null measurement or output pointer");
    }
    if (truth_index >= usd->hypotheses.size()) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "truth index out of range");
    }
    if (count != usd->hypotheses.size() + 1) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "counts length must be hypotheses + 1");
    }
    return guarded([&] {
        nogo::Rng rng(seed);
        nogo::DiscriminationOutcome o =
            nogo::simulate_usd(usd->measurement, usd->hypotheses[truth_index], trials, rng);
        std::copy(o.counts.begin(), o.counts.end(), counts);
    });
}

nogo_status nogo_solve_degeneracy(double a, double b, double *pairs) {
    if (pairs == nullptr) {
        return fail(NOGO_ERR_INVALID_ARGUMENT, "null output pointer");
    }
    return guarded([&] {
        nogo::DegeneracyLocus locus = nogo::solve_degeneracy_analytic(a, b);
        for (std::size_t k = 0; k < 2; ++k) {
            pairs[2 * k] = locus.solutions[k].theta21;
            pairs[2 * k + 1] = locus.solutions[k].theta31;
        }
    });
}

}  // extern "C"
