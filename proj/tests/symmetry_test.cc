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

#include "gtest/gtest.h"

#include "oracle.test.h"

using namespace qident;
using namespace qident_test;

TEST(symmetry, swaps_match_loops) {
    for (std::size_t d = 2; d <= 4; ++d) {
        auto tk = build_toolkit(d);
        ASSERT_EQ(tk.dim(), d * d * d);
        ASSERT_LT(max_abs_diff(tk.t01, swap_oracle(d, 0, 1)), 1e-15);
        ASSERT_LT(max_abs_diff(tk.t02, swap_oracle(d, 0, 2)), 1e-15);
        ASSERT_LT(max_abs_diff(tk.t12, swap_oracle(d, 1, 2)), 1e-15);
        ASSERT_LT(max_abs_diff(tk.s3, sym3_oracle(d, false)), 1e-14);
        ASSERT_LT(max_abs_diff(tk.a3, sym3_oracle(d, true)), 1e-14);
    }
}

TEST(symmetry, identities) {
    for (std::size_t d = 2; d <= 6; ++d) {
        auto tk = cached_toolkit(d);
        DenseOperator id = identity(tk->dim());
        ASSERT_LT(max_abs_diff(tk->s3 + tk->a3 + tk->m3, id), 1e-12);
        ASSERT_TRUE(is_projector(tk->m3));
        ASSERT_LT(max_abs(tk->s3 * tk->m3), 1e-12);
        DenseOperator d2 = tk->dop * tk->dop;
        ASSERT_LT(max_abs_diff(d2, 0.75 * tk->m3), 1e-10) << d;
        ASSERT_LT(max_abs(tk->dop * tk->aop + tk->aop * tk->dop), 1e-10) << d;
        ASSERT_LT(max_abs_diff(tk->aop * tk->aop, id - d2), 1e-10) << d;
        ASSERT_LT(max_abs_diff(tk->s01, 0.5 * (id + tk->t01)), 1e-15);
        ASSERT_LT(max_abs_diff(tk->a02, 0.5 * (id - tk->t02)), 1e-15);
    }
}

TEST(symmetry, d_spectrum_d3) {
    auto tk = build_toolkit(3);
    auto ev = eigenvalues_oracle(tk.dop);
    ASSERT_EQ(ev.size(), 27);
    ASSERT_EQ(count_near(ev, std::sqrt(3.0) / 2), 8);
    ASSERT_EQ(count_near(ev, -std::sqrt(3.0) / 2), 8);
    ASSERT_EQ(count_near(ev, 0.0), 11);
}

TEST(symmetry, traces_d3) {
    auto tk = build_toolkit(3);
    ASSERT_NEAR(tk.s3.trace().real(), 10, 1e-12);
    ASSERT_NEAR(tk.a3.trace().real(), 1, 1e-12);
    ASSERT_NEAR(tk.m3.trace().real(), 16, 1e-12);
}

TEST(symmetry, rejects_small_d) {
    ASSERT_THROW(build_toolkit(1), std::invalid_argument);
    ASSERT_THROW(build_toolkit(0), std::invalid_argument);
}

TEST(symmetry, cached_toolkit_shared) {
    auto a = cached_toolkit(3);
    auto b = cached_toolkit(3);
    ASSERT_EQ(a.get(), b.get());
}

TEST(dimension_table, examples) {
    auto t2 = dimension_table(2);
    ASSERT_EQ(t2.d1, 2);
    ASSERT_EQ(t2.d2, 3);
    ASSERT_EQ(t2.d3, 4);
    ASSERT_EQ(t2.dim_vs, 4);
    ASSERT_EQ(t2.dim_va, 0);
    ASSERT_EQ(t2.dim_vm, 4);
    ASSERT_EQ(dimension_table(4).dim_vm, 40);
    auto t6 = dimension_table(6);
    ASSERT_EQ(t6.dim_vs, 56);
    ASSERT_EQ(t6.dim_va, 20);
    ASSERT_EQ(t6.dim_vm, 140);
    ASSERT_EQ(t6.dim_vs + t6.dim_va + t6.dim_vm, 216);
}

TEST(dimension_table, brute_force_counts) {
    for (std::int64_t d = 1; d <= 12; ++d) {
        auto t = dimension_table(d);
        ASSERT_EQ(t.dim_vs, count_triples(d, false)) << d;
        ASSERT_EQ(t.dim_va, count_triples(d, true)) << d;
        ASSERT_EQ(t.dim_vm, d * d * d - t.dim_vs - t.dim_va) << d;
        ASSERT_EQ(symmetric_dim(2, d), d * (d + 1) / 2);
    }
    ASSERT_THROW(dimension_table(0), std::invalid_argument);
}

TEST(dimension_table, relation) {
    auto r = check_dim_relation(2, 2);
    ASSERT_EQ(r.lhs, 40);
    ASSERT_EQ(r.lhs_x2, 80);
    ASSERT_EQ(r.rhs_x2, 80);
    ASSERT_EQ(r.residual_x2, 0);
    ASSERT_EQ(check_dim_relation(2, 3).lhs, 140);
    for (std::int64_t a = 1; a <= 7; ++a) {
        for (std::int64_t b = 1; b <= 7; ++b) {
            ASSERT_EQ(check_dim_relation(a, b).residual_x2, 0) << a << "x" << b;
        }
    }
}

TEST(bipartite_toolkit, lifts_factorize_swaps) {
    for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
        auto bt = bipartite_toolkit(da, db);
        auto whole = cached_toolkit(da * db);
        ASSERT_EQ(bt.dim(), whole->dim());
        ASSERT_LT(max_abs_diff(bt.lift(bt.alice->t01, bt.bob->t01), whole->t01), 1e-15);
        ASSERT_LT(max_abs_diff(bt.lift(bt.alice->t12, bt.bob->t12), whole->t12), 1e-15);
        ASSERT_LT(max_abs_diff(bt.regroup, regroup_oracle(da, db)), 1e-15);
        DenseOperator x = random_hermitian(bt.dim(), 11);
        ASSERT_LT(max_abs_diff(bt.to_party_major(x), bt.regroup * x * bt.regroup.adjoint()), 1e-12);
        ASSERT_LT(max_abs_diff(bt.to_system_major(bt.to_party_major(x)), x), 1e-15);
        DenseOperator ya = random_hermitian(da * da * da, 12);
        ASSERT_LT(max_abs_diff(bt.lift_alice(ya), bt.lift(ya, identity(db * db * db))), 1e-15);
    }
}

TEST(bipartite_toolkit, trivial_party) {
    auto bt = bipartite_toolkit(1, 3);
    ASSERT_EQ(bt.dim(), 27);
    ASSERT_LT(max_abs_diff(bt.lift_bob(bt.bob->t02), cached_toolkit(3)->t02), 1e-15);
    ASSERT_THROW(bipartite_toolkit(1, 1), std::invalid_argument);
}
