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

#include "qident/linalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qident {

double max_abs(const DenseOperator &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const DenseOperator &a, const DenseOperator &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    return max_abs(a - b);
}

bool is_hermitian(const DenseOperator &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    double scale = std::max(1.0, max_abs(m));
    return max_abs(m - m.adjoint()) <= tol * scale;
}

bool is_projector(const DenseOperator &m, double tol) {
    return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

DenseOperator identity(std::size_t dim) {
    return DenseOperator::Identity(dim, dim);
}

DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

StateVector kron(const StateVector &a, const StateVector &b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Spectrum hermitian_eig(const DenseOperator &h) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
    }
    // Symmetrize away the rounding-level anti-Hermitian part.
    DenseOperator sym = (h + h.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver did not converge");
    }
    // Eigen sorts ascending.
    Spectrum s;
    s.eigenvalues = solver.eigenvalues().reverse();
    s.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return s;
}

namespace {

void check_band(const Spectrum &s, double tol, int sign) {
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        double v = sign * s.eigenvalues[k];
        if (v >= tol / 10 && v <= tol) {
            std::ostringstream msg;
            msg << "eigenvalue " << s.eigenvalues[k] << " lies in the ambiguous classification band for tol=" << tol;
            throw std::domain_error(msg.str());
        }
    }
}

}  // namespace

DenseOperator positive_part_projector(const DenseOperator &h, double tol) {
    if (!(tol > 0)) {
        throw std::invalid_argument("positive_part_projector: tol must be positive");
    }
    Spectrum s = hermitian_eig(h);
    check_band(s, tol, +1);
    return spectral_sum(s, [tol](double lam) { return lam > tol; }, false);
}

DenseOperator negative_part_projector(const DenseOperator &h, double tol) {
    if (!(tol > 0)) {
        throw std::invalid_argument("negative_part_projector: tol must be positive");
    }
    Spectrum s = hermitian_eig(h);
    check_band(s, tol, -1);
    return spectral_sum(s, [tol](double lam) { return lam < -tol; }, false);
}

DenseOperator psd_sqrt(const DenseOperator &e) {
    Spectrum s = hermitian_eig(e);
    const auto n = e.rows();
    if (n > 0 && s.eigenvalues[n - 1] < -kPsdTol) {
        std::ostringstream msg;
        msg << "psd_sqrt: eigenvalue " << s.eigenvalues[n - 1] << " is negative";
        throw std::domain_error(msg.str());
    }
    Eigen::VectorXd root = s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return s.eigenvectors * root.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
}

double min_eigenvalue(const DenseOperator &h) {
    if (h.rows() == 0) {
        return 0.0;
    }
    return hermitian_eig(h).eigenvalues.minCoeff();
}

double max_eigenvalue(const DenseOperator &h) {
    if (h.rows() == 0) {
        return 0.0;
    }
    return hermitian_eig(h).eigenvalues.maxCoeff();
}

DenseOperator permutation_matrix(std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
    const std::size_t k = dims.size();
    check_permutation(perm, k);
    std::size_t n = 1;
    for (auto d : dims) {
        n *= d;
    }
    std::vector<std::size_t> out_dims(k);
    for (std::size_t m = 0; m < k; ++m) {
        out_dims[m] = dims[perm[m]];
    }

    DenseOperator p = DenseOperator::Zero(n, n);
    std::vector<std::size_t> digits(k);
    for (std::size_t in = 0; in < n; ++in) {
        std::size_t rest = in;
        for (std::size_t m = k; m-- > 0;) {
            digits[m] = rest % dims[m];
            rest /= dims[m];
        }
        std::size_t out = 0;
        for (std::size_t m = 0; m < k; ++m) {
            out = out * out_dims[m] + digits[perm[m]];
        }
        p(out, in) = 1.0;
    }
    return p;
}

DenseOperator factor_permutation(const SpaceLayout &layout, std::span<const std::size_t> perm) {
    check_permutation(perm, layout.size());
    const auto &f = layout.factors();
    for (std::size_t m = 0; m < perm.size(); ++m) {
        if (f[perm[m]].dim != f[m].dim) {
            throw std::invalid_argument("factor_permutation: permuted dimensions do not match");
        }
    }
    auto dims = layout.dims();
    return permutation_matrix(dims, perm);
}

std::vector<std::size_t> regroup_permutation(const SpaceLayout &from, const SpaceLayout &to) {
    if (from.size() != to.size()) {
        throw std::invalid_argument("regroup: layouts have different factor counts");
    }
    std::vector<std::size_t> perm(to.size());
    for (std::size_t m = 0; m < to.size(); ++m) {
        const Factor &target = to.factors()[m];
        auto it = std::find_if(from.factors().begin(), from.factors().end(),
                               [&](const Factor &f) { return f.same_slot(target); });
        if (it == from.factors().end() || it->dim != target.dim) {
            throw std::invalid_argument("regroup: layouts do not hold the same factors");
        }
        perm[m] = static_cast<std::size_t>(it - from.factors().begin());
    }
    check_permutation(perm, perm.size());
    return perm;
}

DenseOperator regroup_operator(const SpaceLayout &from, const SpaceLayout &to) {
    auto perm = regroup_permutation(from, to);
    auto dims = from.dims();
    return permutation_matrix(dims, perm);
}

}  // namespace qident
