// Copyright 2026 The qident Authors
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

#ifndef QIDENT_LINALG_H
#define QIDENT_LINALG_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qident/layout.h"

namespace qident {

using cplx = std::complex<double>;
/// Dense complex square matrix; the carrier for projectors, POVM elements
/// and observables.
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kClassifyTol = 1e-9;
inline constexpr double kPsdTol = 1e-10;

/// Eigen-decomposition of a Hermitian operator, eigenvalues descending.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    /// Column k pairs with eigenvalues[k].
    Eigen::MatrixXcd eigenvectors;
};

double max_abs(const DenseOperator &m);
double max_abs_diff(const DenseOperator &a, const DenseOperator &b);

/// max |M - M^dag| <= tol * max(1, max |M_ij|).
bool is_hermitian(const DenseOperator &m, double tol = kHermitianTol);
/// Hermitian and max |M^2 - M| <= tol.
bool is_projector(const DenseOperator &m, double tol = kProjectorTol);

DenseOperator identity(std::size_t dim);

/// Kronecker product; the factors of the result are those of `a` then `b`.
DenseOperator kron(const DenseOperator &a, const DenseOperator &b);
StateVector kron(const StateVector &a, const StateVector &b);

/// Throws std::invalid_argument on non-Hermitian input.
Spectrum hermitian_eig(const DenseOperator &h);

/// Sum of lambda_k |v_k><v_k| over the eigenpairs whose eigenvalue satisfies
/// `keep`.
template <typename Pred>
DenseOperator spectral_sum(const Spectrum &s, Pred keep, bool weight_by_eigenvalue) {
    const auto n = s.eigenvectors.rows();
    DenseOperator out = DenseOperator::Zero(n, n);
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        double lam = s.eigenvalues[k];
        if (!keep(lam)) {
            continue;
        }
        const auto v = s.eigenvectors.col(k);
        out.noalias() += (weight_by_eigenvalue ? lam : 1.0) * (v * v.adjoint());
    }
    return out;
}

/// Orthogonal projector onto the eigenvectors of `h` with eigenvalue > tol.
/// Throws std::domain_error if an eigenvalue falls in [tol/10, tol], where the
/// sign classification is ambiguous.
DenseOperator positive_part_projector(const DenseOperator &h, double tol = kClassifyTol);
/// Same for eigenvalues < -tol (band [-tol, -tol/10]).
DenseOperator negative_part_projector(const DenseOperator &h, double tol = kClassifyTol);

/// Principal PSD square root. Eigenvalues in [-1e-10, 0) are clamped to 0;
/// anything more negative throws std::domain_error.
DenseOperator psd_sqrt(const DenseOperator &e);

/// Smallest eigenvalue of a Hermitian operator.
double min_eigenvalue(const DenseOperator &h);
double max_eigenvalue(const DenseOperator &h);

/// 0/1 matrix sending |i_0 ... i_{k-1}> to |i_{perm[0]} ... i_{perm[k-1]}>,
/// where factor m has dimension dims[m]. Maps the layout with `dims` onto the
/// layout with permuted dims.
DenseOperator permutation_matrix(std::span<const std::size_t> dims, std::span<const std::size_t> perm);

/// Factor permutation acting as an operator on `layout` itself. Rejects
/// permutations that move a factor onto a position of different dimension.
DenseOperator factor_permutation(const SpaceLayout &layout, std::span<const std::size_t> perm);

/// Permutation that reorders the factors of `from` into the order of `to`.
/// Factors are matched by (system, party); throws if the layouts do not hold
/// the same factors.
std::vector<std::size_t> regroup_permutation(const SpaceLayout &from, const SpaceLayout &to);

/// Operator R with R |x>_from = |x>_to.
DenseOperator regroup_operator(const SpaceLayout &from, const SpaceLayout &to);

}  // namespace qident

#endif
