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

#include "nogo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nogo/error.hpp"

namespace nogo {

namespace {

constexpr double kJacobiOffTolerance = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(
            ErrorCode::DimensionMismatch,
            "matrix shapes differ: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

double off_diagonal_norm(const ComplexMatrix &a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                acc += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(acc);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw Error(
            ErrorCode::DimensionMismatch,
            "matrix entry count " + std::to_string(entries_.size()) + " does not match " + std::to_string(rows_) +
                "x" + std::to_string(cols_));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const CVector> columns) {
    if (columns.empty()) {
        return {};
    }
    std::size_t rows = columns.front().size();
    ComplexMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw Error(ErrorCode::DimensionMismatch, "columns of differing length");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m(r, c) = columns[c][r];
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const {
    if (cols_ != other.rows_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product with incompatible shapes");
    }
    ComplexMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            Complex aik = (*this)(i, k);
            for (std::size_t j = 0; j < other.cols_; ++j) {
                out(i, j) += aik * other(k, j);
            }
        }
    }
    return out;
}

CVector ComplexMatrix::operator*(std::span<const Complex> v) const {
    if (cols_ != v.size()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector product with incompatible shapes");
    }
    CVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += (*this)(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

double ComplexMatrix::trace_real() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        acc += (*this)(i, i).real();
    }
    return acc;
}

double ComplexMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto &e : entries_) {
        acc += std::norm(e);
    }
    return std::sqrt(acc);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto &e : entries_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Complex &e) {
        return std::isfinite(e.real()) && std::isfinite(e.imag());
    });
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square()) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) {
        throw Error(
            ErrorCode::DimensionMismatch,
            "inner product of vectors with lengths " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
    }
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < u.size(); ++k) {
        acc += std::conj(u[k]) * v[k];
    }
    return acc;
}

double norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto &e : v) {
        acc += std::norm(e);
    }
    return std::sqrt(acc);
}

Complex expectation(const ComplexMatrix &m, std::span<const Complex> v) {
    return inner(v, m * v);
}

HermitianEigen hermitian_eigen(const ComplexMatrix &m) {
    if (!m.all_finite()) {
        throw Error(ErrorCode::NonFiniteEntry, "matrix contains NaN or infinite entries");
    }
    if (!m.is_hermitian(kHermitianTolerance)) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within 1e-12");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
    }

    const double threshold = kJacobiOffTolerance * std::max(1.0, m.frobenius_norm());
    int sweep = 0;
    bool converged = false;
    for (; sweep <= kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) < threshold) {
            converged = true;
            break;
        }
        if (sweep == kJacobiMaxSweeps) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex apq = a(p, q);
                double r = std::abs(apq);
                if (r < 1e-300) {
                    continue;
                }
                Complex phase = apq / r;
                double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                Complex sp = s * phase;
                Complex sc = s * std::conj(phase);

                // A <- A J, V <- V J with J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, q).
                for (std::size_t k = 0; k < n; ++k) {
                    Complex akp = a(k, p);
                    Complex akq = a(k, q);
                    a(k, p) = c * akp - sc * akq;
                    a(k, q) = sp * akp + c * akq;
                    Complex vkp = v(k, p);
                    Complex vkq = v(k, q);
                    v(k, p) = c * vkp - sc * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
                // A <- J^H A
                for (std::size_t k = 0; k < n; ++k) {
                    Complex apk = a(p, k);
                    Complex aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = sc * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NonConvergence, "Jacobi eigensolver did not converge in 100 sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    HermitianEigen out;
    out.sweeps = sweep;
    out.values.reserve(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values.push_back(a(order[k], order[k]).real());
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix &m) {
    if (!m.all_finite()) {
        throw Error(ErrorCode::NonFiniteEntry, "matrix contains NaN or infinite entries");
    }
    std::vector<double> out;
    if (m.is_square() && m.is_hermitian(kHermitianTolerance)) {
        for (double lambda : hermitian_eigen(m).values) {
            out.push_back(std::abs(lambda));
        }
    } else {
        ComplexMatrix b(m.cols(), m.cols());
        for (std::size_t i = 0; i < m.cols(); ++i) {
            for (std::size_t j = i; j < m.cols(); ++j) {
                Complex acc{0.0, 0.0};
                for (std::size_t k = 0; k < m.rows(); ++k) {
                    acc += std::conj(m(k, i)) * m(k, j);
                }
                b(i, j) = acc;
                b(j, i) = std::conj(acc);
            }
        }
        for (double lambda : hermitian_eigen(b).values) {
            out.push_back(std::sqrt(std::max(0.0, lambda)));
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

RankResult numerical_rank(const ComplexMatrix &m, double tol) {
    if (m.empty()) {
        throw Error(ErrorCode::EmptySet, "rank of an empty matrix");
    }
    if (!(tol > 0.0 && tol < 1.0)) {
        throw Error(ErrorCode::InvalidParams, "rank tolerance must lie in (0, 1), got " + std::to_string(tol));
    }
    RankResult result;
    result.tolerance_used = tol;
    result.singular_values = singular_values(m);
    double sigma_max = result.singular_values.empty() ? 0.0 : result.singular_values.front();
    double cutoff = tol * sigma_max;
    result.rank = static_cast<std::size_t>(std::count_if(
        result.singular_values.begin(), result.singular_values.end(), [&](double s) {
            return s > cutoff;
        }));
    return result;
}

double max_eigenvalue_hermitian(const ComplexMatrix &m) {
    if (m.empty()) {
        throw Error(ErrorCode::EmptySet, "eigenvalue of an empty matrix");
    }
    return hermitian_eigen(m).values.back();
}

ComplexMatrix invert(const ComplexMatrix &m, double singular_tol) {
    if (!m.is_square() || m.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "only nonempty square matrices can be inverted");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    double scale = std::max(m.max_abs(), 1e-300);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (std::abs(a(pivot, col)) <= singular_tol * scale) {
            throw Error(ErrorCode::LinearlyDependentInput, "matrix is singular to working precision");
        }
        if (pivot != col) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a(pivot, k), a(col, k));
                std::swap(inv(pivot, k), inv(col, k));
            }
        }
        Complex d = 1.0 / a(col, col);
        for (std::size_t k = 0; k < n; ++k) {
            a(col, k) *= d;
            inv(col, k) *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            Complex f = a(r, col);
            if (f == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < n; ++k) {
                a(r, k) -= f * a(col, k);
                inv(r, k) -= f * inv(col, k);
            }
        }
    }
    return inv;
}

}  // namespace nogo
