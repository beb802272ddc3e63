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

#ifndef NOGO_LINALG_HPP
#define NOGO_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nogo {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kDefaultRankTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-12;

/// Dense complex matrix stored row-major. Sized for the small systems this
/// library deals with (dimension <= 16); no attempt at blocking.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }
    /// |u><v|
    static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);
    /// Matrix whose columns are the given vectors.
    static ComplexMatrix from_columns(std::span<const CVector> columns);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool empty() const noexcept {
        return entries_.empty();
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix &other) const;
    CVector operator*(std::span<const Complex> v) const;
    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    double trace_real() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;
    /// max |M[i][j] - conj(M[j][i])| <= tol
    bool is_hermitian(double tol = kHermitianTolerance) const;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
/// max_ij |a_ij - b_ij|; matrices must have equal shape.
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b);

/// <u|v>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);
/// <v|M|v>
Complex expectation(const ComplexMatrix &m, std::span<const Complex> v);

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; column k of
/// `vectors` is the unit eigenvector for `values[k]`.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
    int sweeps = 0;
};

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius norm drops
/// below 1e-14 (scaled by max(1, ||M||_F)); throws NonConvergence after 100
/// sweeps. Throws NotHermitian / NonFiniteEntry on bad input.
HermitianEigen hermitian_eigen(const ComplexMatrix &m);

/// Singular values, descending. Hermitian input uses |eig(M)|; anything else
/// uses sqrt(eig(M^H M)).
std::vector<double> singular_values(const ComplexMatrix &m);

struct RankResult {
    std::size_t rank = 0;
    std::vector<double> singular_values;  // descending
    double tolerance_used = 0.0;
};

/// Counts singular values strictly greater than tol * sigma_max.
RankResult numerical_rank(const ComplexMatrix &m, double tol = kDefaultRankTolerance);

double max_eigenvalue_hermitian(const ComplexMatrix &m);

/// Gauss-Jordan with partial pivoting. Throws LinearlyDependentInput when a
/// pivot falls below `singular_tol` times the largest absolute entry.
ComplexMatrix invert(const ComplexMatrix &m, double singular_tol = 1e-14);

}  // namespace nogo

#endif
