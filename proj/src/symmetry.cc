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

#include "qident/symmetry.h"

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qident {

namespace {

SymmetryToolkit make_toolkit(std::size_t d) {
    SymmetryToolkit tk;
    tk.d = d;
    const SpaceLayout layout = SpaceLayout::whole(d);
    const std::size_t n = tk.dim();
    const DenseOperator id = identity(n);

    // All six permutations of the three systems with their signs.
    static constexpr std::array<std::array<std::size_t, 3>, 6> perms = {{
        {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1},
    }};
    static constexpr std::array<int, 6> signs = {+1, -1, -1, -1, +1, +1};

    tk.s3 = DenseOperator::Zero(n, n);
    tk.a3 = DenseOperator::Zero(n, n);
    for (std::size_t k = 0; k < perms.size(); ++k) {
        DenseOperator t = factor_permutation(layout, perms[k]);
        tk.s3 += t;
        tk.a3 += static_cast<double>(signs[k]) * t;
        if (k == 1) tk.t01 = t;
        if (k == 2) tk.t02 = t;
        if (k == 3) tk.t12 = t;
    }
    tk.s3 /= 6.0;
    tk.a3 /= 6.0;
    tk.m3 = id - tk.s3 - tk.a3;

    tk.s01 = (id + tk.t01) * 0.5;
    tk.s02 = (id + tk.t02) * 0.5;
    tk.s12 = (id + tk.t12) * 0.5;
    tk.a01 = (id - tk.t01) * 0.5;
    tk.a02 = (id - tk.t02) * 0.5;
    tk.a12 = (id - tk.t12) * 0.5;

    tk.dop = tk.s01 - tk.s02;
    tk.aop = tk.s01 + tk.s02 - id;
    return tk;
}

std::shared_ptr<const SymmetryToolkit> cached_any(std::size_t d) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const SymmetryToolkit>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(d);
        if (it != cache.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const SymmetryToolkit>(make_toolkit(d));
    std::lock_guard<std::mutex> lock(mu);
    // First insert wins; concurrent builders produce identical values.
    return cache.emplace(d, std::move(built)).first->second;
}

}  // namespace

SymmetryToolkit build_toolkit(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("build_toolkit: local dimension must be at least 2");
    }
    return make_toolkit(d);
}

std::shared_ptr<const SymmetryToolkit> cached_toolkit(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("cached_toolkit: local dimension must be at least 2");
    }
    return cached_any(d);
}

std::int64_t symmetric_dim(std::int64_t n, std::int64_t d) {
    if (n < 0 || d < 1) {
        throw std::invalid_argument("symmetric_dim: need n >= 0 and d >= 1");
    }
    // C(n + d - 1, n), computed incrementally; each partial product is exact.
    std::int64_t c = 1;
    for (std::int64_t k = 1; k <= n; ++k) {
        c = c * (d - 1 + k) / k;
    }
    return c;
}

DimensionTable dimension_table(std::int64_t d) {
    if (d < 1) {
        throw std::invalid_argument("dimension_table: d must be positive");
    }
    DimensionTable t;
    t.d = d;
    t.d1 = symmetric_dim(1, d);
    t.d2 = symmetric_dim(2, d);
    t.d3 = symmetric_dim(3, d);
    t.dim_vs = d * (d + 1) * (d + 2) / 6;
    t.dim_va = d * (d - 1) * (d - 2) / 6;
    t.dim_vm = 2 * d * (d * d - 1) / 3;
    return t;
}

DimRelationReport check_dim_relation(std::int64_t d_a, std::int64_t d_b) {
    if (d_a < 1 || d_b < 1) {
        throw std::invalid_argument("check_dim_relation: dimensions must be positive");
    }
    auto a = dimension_table(d_a);
    auto b = dimension_table(d_b);
    auto g = dimension_table(d_a * d_b);
    DimRelationReport r;
    r.d_a = d_a;
    r.d_b = d_b;
    r.lhs = g.dim_vm;
    r.lhs_x2 = 2 * g.dim_vm;
    r.rhs_x2 = 2 * (a.dim_vs * b.dim_vm + a.dim_vm * b.dim_vs + a.dim_va * b.dim_vm + a.dim_vm * b.dim_va) +
               a.dim_vm * b.dim_vm;
    r.residual_x2 = r.lhs_x2 - r.rhs_x2;
    return r;
}

DenseOperator BipartiteToolkit::lift(const DenseOperator &op_a, const DenseOperator &op_b) const {
    return to_system_major(kron(op_a, op_b));
}

DenseOperator BipartiteToolkit::lift_alice(const DenseOperator &op_a) const {
    return lift(op_a, identity(bob->dim()));
}

DenseOperator BipartiteToolkit::lift_bob(const DenseOperator &op_b) const {
    return lift(identity(alice->dim()), op_b);
}

// R is a permutation matrix, so conjugating by it only reindexes entries.
DenseOperator BipartiteToolkit::to_party_major(const DenseOperator &global) const {
    const auto n = static_cast<Eigen::Index>(party_index.size());
    DenseOperator out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            out(party_index[i], party_index[j]) = global(i, j);
        }
    }
    return out;
}

DenseOperator BipartiteToolkit::to_system_major(const DenseOperator &party_major) const {
    const auto n = static_cast<Eigen::Index>(party_index.size());
    DenseOperator out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            out(i, j) = party_major(party_index[i], party_index[j]);
        }
    }
    return out;
}

BipartiteToolkit bipartite_toolkit(std::size_t d_a, std::size_t d_b) {
    if (d_a < 1 || d_b < 1 || (d_a < 2 && d_b < 2)) {
        throw std::invalid_argument("bipartite_toolkit: need one party with local dimension >= 2");
    }
    BipartiteToolkit bt;
    bt.alice = cached_any(d_a);
    bt.bob = cached_any(d_b);
    auto from = SpaceLayout::system_major(d_a, d_b);
    auto to = SpaceLayout::party_major(d_a, d_b);
    bt.regroup_perm = regroup_permutation(from, to);
    bt.regroup = regroup_operator(from, to);
    const auto n = bt.regroup.rows();
    bt.party_index.assign(n, 0);
    for (Eigen::Index in = 0; in < n; ++in) {
        Eigen::Index out = 0;
        bt.regroup.col(in).cwiseAbs().maxCoeff(&out);
        bt.party_index[in] = out;
    }
    return bt;
}

}  // namespace qident
