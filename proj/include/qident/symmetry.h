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

#ifndef QIDENT_SYMMETRY_H
#define QIDENT_SYMMETRY_H

#include <cstdint>
#include <memory>

#include "qident/linalg.h"

namespace qident {

/// Permutation-symmetry operators on (C^d)^{x3}, systems ordered (0, 1, 2).
struct SymmetryToolkit {
    std::size_t d = 0;
    // Transpositions T(ij).
    DenseOperator t01, t02, t12;
    // Pairwise symmetrizers (1 + T)/2 and antisymmetrizers (1 - T)/2.
    DenseOperator s01, s02, s12;
    DenseOperator a01, a02, a12;
    // Totally symmetric, totally antisymmetric and mixed-symmetry projectors.
    DenseOperator s3, a3, m3;
    // D = S(01) - S(02), A = S(01) + S(02) - 1.
    DenseOperator dop, aop;

    std::size_t dim() const { return d * d * d; }
};

/// Builds every operator of the toolkit. Rejects d < 2.
SymmetryToolkit build_toolkit(std::size_t d);

/// Process-wide cache of toolkits, populated on first use. Thread-safe.
std::shared_ptr<const SymmetryToolkit> cached_toolkit(std::size_t d);

struct DimensionTable {
    std::int64_t d = 0;
    std::int64_t d1 = 0, d2 = 0, d3 = 0;
    std::int64_t dim_vs = 0, dim_va = 0, dim_vm = 0;
};

/// Binomial C(n + d - 1, d - 1): dimension of the symmetric subspace of (C^d)^{xn}.
std::int64_t symmetric_dim(std::int64_t n, std::int64_t d);

/// Closed-form subspace dimensions. d >= 1 (d = 1 is the trivial party).
DimensionTable dimension_table(std::int64_t d);

struct DimRelationReport {
    std::int64_t d_a = 0, d_b = 0;
    std::int64_t lhs = 0;
    // The half-weighted V_M x V_M term makes the right side a half-integer in
    // general; both sides are stored doubled to stay in exact integers.
    std::int64_t lhs_x2 = 0, rhs_x2 = 0;
    std::int64_t residual_x2 = 0;
};

/// Checks dim V_M(d_a d_b) against its decomposition into products of local
/// symmetry sectors, in exact integer arithmetic.
DimRelationReport check_dim_relation(std::int64_t d_a, std::int64_t d_b);

/// Local toolkits of Alice and Bob together with the regrouping permutation
/// from system-major order (0a,0b,1a,1b,2a,2b) to party-major order
/// (0a,1a,2a,0b,1b,2b).
struct BipartiteToolkit {
    std::shared_ptr<const SymmetryToolkit> alice;
    std::shared_ptr<const SymmetryToolkit> bob;
    /// R with R |x>_system-major = |x>_party-major.
    DenseOperator regroup;
    std::vector<std::size_t> regroup_perm;
    /// party_index[i]: party-major position of system-major basis index i.
    std::vector<Eigen::Index> party_index;

    std::size_t d_a() const { return alice->d; }
    std::size_t d_b() const { return bob->d; }
    std::size_t dim() const { return regroup.rows(); }

    /// R^dag (op_a x op_b) R: the product operator in the global
    /// (system-major) basis.
    DenseOperator lift(const DenseOperator &op_a, const DenseOperator &op_b) const;
    DenseOperator lift_alice(const DenseOperator &op_a) const;
    DenseOperator lift_bob(const DenseOperator &op_b) const;
    /// Global operator -> party-major basis.
    DenseOperator to_party_major(const DenseOperator &global) const;
    DenseOperator to_system_major(const DenseOperator &party_major) const;
};

/// d_a or d_b may be 1 (trivial party) as long as the other is >= 2.
BipartiteToolkit bipartite_toolkit(std::size_t d_a, std::size_t d_b);

}  // namespace qident

#endif
