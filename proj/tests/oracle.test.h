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

#ifndef QIDENT_TESTS_ORACLE_TEST_H
#define QIDENT_TESTS_ORACLE_TEST_H

// Brute-force reference constructions. Nothing here calls into the library
// except for the DenseOperator typedefs.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "qident/linalg.h"

namespace qident_test {

using qident::DenseOperator;
using qident::StateVector;
using cplx = std::complex<double>;

inline std::size_t triple_index(std::size_t d, std::array<std::size_t, 3> x) {
    return (x[0] * d + x[1]) * d + x[2];
}

/// |x0 x1 x2> -> |x_p0 x_p1 x_p2>, by explicit loops.
inline DenseOperator perm3_oracle(std::size_t d, std::array<int, 3> p) {
    const std::size_t n = d * d * d;
    DenseOperator out = DenseOperator::Zero(n, n);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t c = 0; c < d; ++c) {
                std::array<std::size_t, 3> x{a, b, c};
                std::array<std::size_t, 3> y{x[p[0]], x[p[1]], x[p[2]]};
                out(triple_index(d, y), triple_index(d, x)) = 1.0;
            }
        }
    }
    return out;
}

inline DenseOperator swap_oracle(std::size_t d, int i, int j) {
    std::array<int, 3> p{0, 1, 2};
    std::swap(p[i], p[j]);
    return perm3_oracle(d, p);
}

/// Signed average over the six orderings of three systems.
inline DenseOperator sym3_oracle(std::size_t d, bool antisymmetric) {
    std::array<int, 3> p{0, 1, 2};
    const std::size_t n = d * d * d;
    DenseOperator out = DenseOperator::Zero(n, n);
    do {
        int inversions = (p[0] > p[1]) + (p[0] > p[2]) + (p[1] > p[2]);
        double sign = (antisymmetric && inversions % 2 == 1) ? -1.0 : 1.0;
        out += sign * perm3_oracle(d, p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out / 6.0;
}

/// Eigenvalues via the general complex solver, real parts, descending.
inline std::vector<double> eigenvalues_oracle(const DenseOperator &m) {
    Eigen::ComplexEigenSolver<DenseOperator> es(m, false);
    std::vector<double> out;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        out.push_back(es.eigenvalues()[k].real());
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

inline std::size_t count_near(const std::vector<double> &values, double target, double tol = 1e-9) {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v - target) < tol; }));
}

inline std::size_t rank_oracle(const DenseOperator &m, double tol = 1e-8) {
    auto ev = eigenvalues_oracle(m);
    return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double v) { return std::abs(v) > tol; }));
}

/// Number of nondecreasing / strictly increasing triples over {0..d-1}.
inline std::int64_t count_triples(std::int64_t d, bool strict) {
    std::int64_t n = 0;
    for (std::int64_t a = 0; a < d; ++a) {
        for (std::int64_t b = a; b < d; ++b) {
            for (std::int64_t c = b; c < d; ++c) {
                if (!strict || (a < b && b < c)) {
                    ++n;
                }
            }
        }
    }
    return n;
}

/// Maps system-major (0a,0b,1a,1b,2a,2b) basis vectors onto party-major
/// (0a,1a,2a,0b,1b,2b) ones.
inline DenseOperator regroup_oracle(std::size_t da, std::size_t db) {
    const std::size_t d = da * db;
    const std::size_t n = d * d * d;
    DenseOperator r = DenseOperator::Zero(n, n);
    for (std::size_t x0 = 0; x0 < d; ++x0) {
        for (std::size_t x1 = 0; x1 < d; ++x1) {
            for (std::size_t x2 = 0; x2 < d; ++x2) {
                std::size_t a0 = x0 / db, b0 = x0 % db, a1 = x1 / db, b1 = x1 % db, a2 = x2 / db, b2 = x2 % db;
                std::size_t alice = (a0 * da + a1) * da + a2;
                std::size_t bob = (b0 * db + b1) * db + b2;
                r(alice * db * db * db + bob, triple_index(d, {x0, x1, x2})) = 1.0;
            }
        }
    }
    return r;
}

inline DenseOperator random_hermitian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    DenseOperator m(n, n);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) = cplx(g(rng), g(rng));
        }
    }
    return (m + m.adjoint()) / 2.0;
}

inline StateVector random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    StateVector v(n);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = cplx(g(rng), g(rng));
    }
    return v / v.norm();
}

inline StateVector kron3(const StateVector &a, const StateVector &b, const StateVector &c) {
    const auto n = a.size();
    StateVector out(n * n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = 0; k < n; ++k) {
                out[(i * n + j) * n + k] = a[i] * b[j] * c[k];
            }
        }
    }
    return out;
}

/// <psi| E |psi> for the state phi_mu x phi1 x phi2.
inline double expectation(const DenseOperator &e, const StateVector &psi) {
    return (psi.adjoint() * e * psi)(0, 0).real();
}

}  // namespace qident_test

#endif
