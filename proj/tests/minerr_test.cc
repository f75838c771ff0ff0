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

#include "qident/minerr.h"

#include <cmath>

#include "gtest/gtest.h"

#include "oracle.test.h"
#include "qident/simulate.h"

using namespace qident;
using namespace qident_test;

namespace {

// Delta assembled from loop-built swaps.
DenseOperator delta_oracle(std::size_t d, double eta1) {
    DenseOperator id = DenseOperator::Identity(d * d * d, d * d * d);
    return eta1 * 0.5 * (id + swap_oracle(d, 0, 1)) - (1 - eta1) * 0.5 * (id + swap_oracle(d, 0, 2));
}

// eta2 + (sum of positive eigenvalues) / (d1 d2).
double pmax_oracle(std::size_t d, double eta1) {
    double sum = 0;
    for (double v : eigenvalues_oracle(delta_oracle(d, eta1))) {
        if (v > 0) {
            sum += v;
        }
    }
    return (1 - eta1) + sum / (d * d * (d + 1) / 2.0);
}

}  // namespace

TEST(minerr, delta_matches_oracle) {
    for (std::size_t d : {2, 3}) {
        for (double eta : {0.2, 0.5, 0.85}) {
            ASSERT_LT(max_abs_diff(minerr::build_delta(d, Priors(eta)), delta_oracle(d, eta)), 1e-15);
            auto tk = cached_toolkit(d);
            ASSERT_LT(max_abs_diff(minerr::delta_from_d_and_a(*tk, Priors(eta)), delta_oracle(d, eta)), 1e-12);
        }
    }
}

TEST(minerr, delta_d2_equal_priors) {
    DenseOperator delta = minerr::build_delta(2, Priors(0.5));
    ASSERT_LT(max_abs_diff(delta, cached_toolkit(2)->dop / 2.0), 1e-15);
    auto ev = eigenvalues_oracle(delta);
    ASSERT_EQ(count_near(ev, std::sqrt(3.0) / 4), 2);
    ASSERT_EQ(count_near(ev, 0.0), 4);
    ASSERT_EQ(count_near(ev, -std::sqrt(3.0) / 4), 2);
    DenseOperator pp = positive_part_projector(delta);
    ASSERT_NEAR((pp * delta).trace().real(), std::sqrt(3.0) / 2, 1e-12);
}

TEST(minerr, delta_on_symmetric_subspace) {
    auto tk = cached_toolkit(3);
    DenseOperator delta = minerr::build_delta(3, Priors(0.7));
    ASSERT_LT(max_abs_diff(tk->s3 * delta * tk->s3, 0.4 * tk->s3), 1e-12);
    ASSERT_LT(max_abs(tk->a3 * delta * tk->a3), 1e-12);
}

TEST(minerr, expected_spectrum_matches_oracle) {
    for (std::size_t d : {2, 3}) {
        for (double eta : {0.1, 0.5, 0.6, 0.9}) {
            auto expected = minerr::expected_delta_spectrum(d, Priors(eta));
            auto oracle = eigenvalues_oracle(delta_oracle(d, eta));
            ASSERT_EQ(expected.size(), oracle.size());
            for (std::size_t k = 0; k < oracle.size(); ++k) {
                ASSERT_NEAR(expected[k], oracle[k], 1e-9) << d << " " << eta << " " << k;
            }
        }
    }
}

TEST(minerr, lambda_pm) {
    auto [p, m] = minerr::lambda_pm(Priors(0.5));
    ASSERT_NEAR(p, std::sqrt(3.0) / 4, 1e-15);
    ASSERT_NEAR(m, -std::sqrt(3.0) / 4, 1e-15);
    auto [p3, m3] = minerr::lambda_pm(Priors(0.3));
    ASSERT_NEAR(p3, 0.5 * (-0.4 + std::sqrt(0.79)), 1e-15);
    ASSERT_NEAR(m3, 0.5 * (-0.4 - std::sqrt(0.79)), 1e-15);
    ASSERT_NEAR(p3, 0.244410, 1e-6);
    ASSERT_NEAR(m3, -0.644410, 1e-6);
}

TEST(minerr, pmax_values) {
    ASSERT_NEAR(minerr::pmax_global(2, Priors(0.5)), 0.5 + std::sqrt(3.0) / 12, 1e-15);
    ASSERT_NEAR(minerr::pmax_global(2, Priors(0.5)), 0.6443376, 1e-7);
    ASSERT_NEAR(minerr::pmax_global(2, Priors(0.7)), 0.5 + 0.4 / 3 + std::sqrt(0.79) / 6, 1e-15);
    ASSERT_NEAR(minerr::pmax_global(2, Priors(0.7)), 0.7814699, 1e-7);
    ASSERT_NEAR(minerr::pmax_global(200, Priors(0.5)), 0.5 + std::sqrt(3.0) / 6, 2e-3);
    ASSERT_NEAR(minerr::pmax_global(4, Priors(0.5)), 0.7165064, 1e-7);
}

TEST(minerr, dual_route) {
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int k = 0; k <= 10; ++k) {
            double eta = k / 10.0;
            double closed = minerr::pmax_global(d, Priors(eta));
            ASSERT_NEAR(closed, pmax_oracle(d, eta), 1e-9) << d << " " << eta;
            ASSERT_NEAR(closed, minerr::pmax_global_eigen(d, Priors(eta)), 1e-9);
            ASSERT_GE(closed, minerr::baseline_no_reference(Priors(eta)) - 1e-12);
        }
    }
}

TEST(minerr, pmax_monotone_in_d) {
    for (double eta : {0.2, 0.5}) {
        double prev = 0;
        for (std::size_t d = 2; d <= 50; ++d) {
            double p = minerr::pmax_global(d, Priors(eta));
            ASSERT_GT(p, prev);
            prev = p;
        }
    }
}

TEST(minerr, global_povm_rank_and_success) {
    ASSERT_EQ(rank_oracle(minerr::global_povm(2, Priors(0.5)).at(1)), 2);
    ASSERT_EQ(rank_oracle(minerr::global_povm(3, Priors(0.5)).at(1)), 8);
    for (double eta : {0.0, 0.3, 0.5, 1.0}) {
        Povm p = minerr::global_povm(3, Priors(eta));
        ASSERT_FALSE(povm_violation(p).has_value());
        ASSERT_NEAR(minerr::mean_success(p, 3, Priors(eta)), minerr::pmax_global(3, Priors(eta)), 1e-10);
        ASSERT_NEAR(exact_success(p, 3, Priors(eta)), minerr::pmax_global(3, Priors(eta)), 1e-10);
    }
}

TEST(minerr, trivial_element) {
    Povm always1{{{1, identity(8)}, {2, DenseOperator::Zero(8, 8)}}, {}};
    ASSERT_NEAR(minerr::mean_success(always1, 2, Priors(0.5)), 0.5, 1e-12);
    ASSERT_NEAR(minerr::mean_success(always1, 2, Priors(0.8)), 0.8, 1e-12);
    Povm labels{{{1, identity(8)}, {0, DenseOperator::Zero(8, 8)}}, {}};
    ASSERT_THROW(minerr::trace_with_delta(labels, 2, Priors(0.5)), std::invalid_argument);
}

TEST(minerr, solve_global) {
    auto s = minerr::solve_global(2, Priors(0.4));
    ASSERT_NEAR(s.p_max, minerr::pmax_global(2, Priors(0.4)), 1e-12);
    ASSERT_NEAR(s.lambda_plus, minerr::lambda_pm(Priors(0.4)).first, 1e-12);
    ASSERT_EQ(s.d, 2);
}

TEST(minerr, locc_equal_priors_2x2) {
    auto c = minerr::build_locc_construction(2, 2, Priors(0.5));
    ASSERT_NEAR(c.theta, M_PI / 4, 1e-12);
    DenseOperator delta = minerr::build_delta(4, Priors(0.5));
    double tr = (c.e1 * delta).trace().real();
    ASSERT_NEAR(tr, 5 * std::sqrt(3.0), 1e-9);
    ASSERT_NEAR(0.5 + tr / 40, 0.7165064, 1e-7);
}

TEST(minerr, locc_attains_global) {
    const std::pair<std::size_t, std::size_t> cases[] = {{2, 2}, {2, 3}, {3, 2}};
    for (auto [da, db] : cases) {
        for (double eta : {0.1, 0.3, 0.4, 0.5, 0.7, 0.95}) {
            std::size_t d = da * db;
            Priors priors(eta);
            Povm local = minerr::locc_povm(da, db, priors);
            ASSERT_FALSE(povm_violation(local).has_value());
            DenseOperator pp = minerr::global_povm(d, priors).at(1);
            DenseOperator delta = delta_oracle(d, eta);
            ASSERT_NEAR((local.at(1) * delta).trace().real(), (pp * delta).trace().real(), 1e-9)
                << da << "x" << db << " " << eta;
            ASSERT_NEAR(exact_success(local, d, priors), minerr::pmax_global(d, priors), 1e-9);
        }
    }
}

TEST(minerr, locc_party_symmetry) {
    for (double eta : {0.3, 0.5}) {
        double p23 = exact_success(minerr::locc_povm(2, 3, Priors(eta)), 6, Priors(eta));
        double p32 = exact_success(minerr::locc_povm(3, 2, Priors(eta)), 6, Priors(eta));
        ASSERT_NEAR(p23, p32, 1e-10);
    }
}

TEST(minerr, locc_elements_are_sums_of_products) {
    auto c = minerr::build_locc_construction(2, 2, Priors(0.3));
    for (const auto *parts : {&c.alice, &c.bob}) {
        ASSERT_TRUE(is_projector(parts->p_plus));
        ASSERT_TRUE(is_projector(parts->q_minus));
        ASSERT_LT(max_abs(parts->p_plus * parts->p_minus), 1e-10);
        ASSERT_LT(max_abs(parts->q_plus * parts->q_minus), 1e-10);
    }
    ASSERT_TRUE(is_projector(c.e1));
}

TEST(minerr, locc_rejects_mirrored_priors) {
    ASSERT_THROW(minerr::build_locc_construction(2, 2, Priors(0.7)), std::invalid_argument);
    ASSERT_THROW(minerr::build_locc_construction(2, 2, Priors(0.0)), std::invalid_argument);
}

TEST(minerr, degenerate_priors) {
    for (double eta : {0.0, 1.0}) {
        Povm p = minerr::locc_povm(2, 2, Priors(eta));
        ASSERT_NEAR(exact_success(p, 4, Priors(eta)), 1.0, 1e-12);
        Povm flat = flatten(minerr::minerr_locc_protocol(2, 2, Priors(eta)));
        ASSERT_NEAR(exact_success(flat, 4, Priors(eta)), 1.0, 1e-12);
    }
}

TEST(minerr, protocol_flattens_to_povm) {
    for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
        for (double eta : {0.3, 0.5, 0.8}) {
            Povm flat = flatten(minerr::minerr_locc_protocol(da, db, Priors(eta)));
            Povm local = minerr::locc_povm(da, db, Priors(eta));
            ASSERT_LT(max_abs_diff(flat.at(1), local.at(1)), 1e-9) << da << "x" << db << " " << eta;
            ASSERT_LT(max_abs_diff(flat.at(2), local.at(2)), 1e-9);
        }
    }
}

TEST(minerr, priors_validation) {
    ASSERT_THROW(Priors(-0.1), std::invalid_argument);
    ASSERT_THROW(Priors(1.5), std::invalid_argument);
    ASSERT_THROW(Priors(0.3, 0.3), std::invalid_argument);
    ASSERT_NEAR(Priors(0.3).swapped().eta1(), 0.7, 1e-15);
}
