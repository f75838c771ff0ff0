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

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qident::minerr {

namespace {

constexpr double kDegeneratePrior = 1e-12;

bool degenerate(const Priors &p) {
    return p.eta1() <= kDegeneratePrior || p.eta2() <= kDegeneratePrior;
}

Povm two_outcome(DenseOperator e1) {
    const auto n = e1.rows();
    Povm p;
    DenseOperator e2 = identity(n) - e1;
    p.elements.push_back({1, std::move(e1)});
    p.elements.push_back({2, std::move(e2)});
    return p;
}

Povm always_guess(std::size_t dim, const Priors &priors) {
    const bool one = priors.eta1() >= priors.eta2();
    return two_outcome(one ? identity(dim) : DenseOperator::Zero(dim, dim));
}

double d1d2(std::size_t d) {
    auto t = dimension_table(static_cast<std::int64_t>(d));
    return static_cast<double>(t.d1 * t.d2);
}

LocalParts local_parts(const SymmetryToolkit &tk, const Priors &priors, double theta) {
    const double diff = priors.eta1() - priors.eta2();
    const auto n = tk.dim();
    LocalParts out;
    if (tk.d < 2) {
        // No mixed-symmetry sector on a one-dimensional party.
        out.p_plus = out.p_minus = out.q_plus = out.q_minus = DenseOperator::Zero(n, n);
        return out;
    }
    DenseOperator delta = 0.5 * (diff * identity(n) + tk.dop + diff * tk.aop);
    DenseOperator delta_m = tk.m3 * delta * tk.m3;
    out.p_plus = positive_part_projector(delta_m);
    out.p_minus = negative_part_projector(delta_m);

    DenseOperator x1 = (2.0 / std::sqrt(3.0)) * tk.dop;
    DenseOperator x2 = 2.0 * tk.aop;
    DenseOperator y2 = -std::sin(theta) * x1 + std::cos(theta) * x2;
    DenseOperator y2_m = tk.m3 * y2 * tk.m3;
    out.q_plus = positive_part_projector(y2_m);
    out.q_minus = negative_part_projector(y2_m);
    return out;
}

DenseOperator conj12(const SymmetryToolkit &tk, const DenseOperator &op, bool mirror) {
    return mirror ? DenseOperator(tk.t12 * op * tk.t12) : op;
}

int relabel(int label, bool mirror) {
    if (!mirror || label == 0) {
        return label;
    }
    return 3 - label;
}

}  // namespace

DenseOperator build_delta(const SymmetryToolkit &tk, const Priors &priors) {
    return priors.eta1() * tk.s01 - priors.eta2() * tk.s02;
}

DenseOperator build_delta(std::size_t d, const Priors &priors) {
    return build_delta(*cached_toolkit(d), priors);
}

DenseOperator delta_from_d_and_a(const SymmetryToolkit &tk, const Priors &priors) {
    const double diff = priors.eta1() - priors.eta2();
    return 0.5 * (diff * identity(tk.dim()) + tk.dop + diff * tk.aop);
}

std::pair<double, double> lambda_pm(const Priors &priors) {
    const double diff = priors.eta1() - priors.eta2();
    const double root = std::sqrt(1.0 - priors.eta1() * priors.eta2());
    return {0.5 * (diff + root), 0.5 * (diff - root)};
}

std::vector<double> expected_delta_spectrum(std::size_t d, const Priors &priors) {
    auto t = dimension_table(static_cast<std::int64_t>(d));
    auto [lp, lm] = lambda_pm(priors);
    std::vector<double> out;
    out.insert(out.end(), t.dim_vs, priors.eta1() - priors.eta2());
    out.insert(out.end(), t.dim_va, 0.0);
    out.insert(out.end(), t.dim_vm / 2, lp);
    out.insert(out.end(), t.dim_vm / 2, lm);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double pmax_global(std::size_t d, const Priors &priors) {
    if (d < 2) {
        throw std::invalid_argument("pmax_global: d must be at least 2");
    }
    const double dd = static_cast<double>(d);
    return 0.5 + (dd + 2) / (6 * dd) * std::abs(priors.eta1() - priors.eta2()) +
           (dd - 1) / (3 * dd) * std::sqrt(1.0 - priors.eta1() * priors.eta2());
}

double pmax_global_eigen(std::size_t d, const Priors &priors) {
    Spectrum s = hermitian_eig(build_delta(d, priors));
    double positive = 0;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        if (s.eigenvalues[k] > 0) {
            positive += s.eigenvalues[k];
        }
    }
    return priors.eta2() + positive / d1d2(d);
}

Povm global_povm(std::size_t d, const Priors &priors) {
    const auto tk = cached_toolkit(d);
    if (degenerate(priors)) {
        return always_guess(tk->dim(), priors);
    }
    return two_outcome(positive_part_projector(build_delta(*tk, priors)));
}

double trace_with_delta(const Povm &povm, std::size_t d, const Priors &priors) {
    if (povm.elements.size() != 2 || povm.find(1) == nullptr || povm.find(2) == nullptr) {
        throw std::invalid_argument("mean_success: POVM labels must be exactly {1, 2}");
    }
    const auto tk = cached_toolkit(d);
    const DenseOperator &e1 = povm.at(1);
    if (static_cast<std::size_t>(e1.rows()) != tk->dim()) {
        throw std::invalid_argument("mean_success: POVM dimension does not match d^3");
    }
    return (e1 * build_delta(*tk, priors)).trace().real();
}

double mean_success(const Povm &povm, std::size_t d, const Priors &priors) {
    return priors.eta2() + trace_with_delta(povm, d, priors) / d1d2(d);
}

MinErrSolution solve_global(std::size_t d, const Priors &priors) {
    MinErrSolution s;
    s.priors = priors;
    s.d = d;
    s.delta = build_delta(d, priors);
    std::tie(s.lambda_plus, s.lambda_minus) = lambda_pm(priors);
    s.p_max = pmax_global(d, priors);
    s.povm = global_povm(d, priors);
    return s;
}

LoccConstruction build_locc_construction(std::size_t d_a, std::size_t d_b, const Priors &priors) {
    if (priors.eta1() > priors.eta2()) {
        throw std::invalid_argument("build_locc_povm_element: requires eta1 <= eta2");
    }
    if (degenerate(priors)) {
        throw std::invalid_argument("build_locc_povm_element: eta1 = 0 has no mixed-sector construction");
    }
    LoccConstruction c{.priors = priors, .toolkit = bipartite_toolkit(d_a, d_b)};
    const double root = std::sqrt(1.0 - priors.eta1() * priors.eta2());
    const double cos2 = (priors.eta1() - priors.eta2()) / (2 * root);
    const double sin2 = std::sqrt(3.0) / (2 * root);
    c.theta = 0.5 * std::atan2(sin2, cos2);

    const auto &ta = *c.toolkit.alice;
    const auto &tb = *c.toolkit.bob;
    c.alice = local_parts(ta, priors, c.theta);
    c.bob = local_parts(tb, priors, c.theta);

    DenseOperator pm = kron(ta.s3, c.bob.p_plus) + kron(ta.a3, c.bob.p_minus) + kron(c.alice.p_plus, tb.s3) +
                       kron(c.alice.p_minus, tb.a3) + kron(c.alice.q_plus, c.bob.q_minus) +
                       kron(c.alice.q_minus, c.bob.q_plus);
    c.e1 = c.toolkit.to_system_major(pm);
    return c;
}

Povm build_locc_povm_element(std::size_t d_a, std::size_t d_b, const Priors &priors) {
    return two_outcome(build_locc_construction(d_a, d_b, priors).e1);
}

Povm locc_povm(std::size_t d_a, std::size_t d_b, const Priors &priors) {
    const std::size_t dim = d_a * d_b * d_a * d_b * d_a * d_b;
    if (degenerate(priors)) {
        return always_guess(dim, priors);
    }
    if (priors.eta1() <= priors.eta2()) {
        return build_locc_povm_element(d_a, d_b, priors);
    }
    // Mirror: E1 = T(12) E2' T(12) where E' is optimal for swapped priors.
    const auto t12 = cached_toolkit(d_a * d_b)->t12;
    DenseOperator e1_swapped = build_locc_construction(d_a, d_b, priors.swapped()).e1;
    return two_outcome(t12 * (identity(dim) - e1_swapped) * t12);
}

LoccProtocol minerr_locc_protocol(std::size_t d_a, std::size_t d_b, const Priors &priors) {
    if (degenerate(priors)) {
        auto tk = bipartite_toolkit(d_a, d_b);
        const auto n = tk.alice->dim();
        int label = priors.eta1() >= priors.eta2() ? 1 : 2;
        auto root = make_node(Party::alice, identity(n), {branch_final("guess", identity(n), label)});
        return LoccProtocol(d_a, d_b, root, "minerr-trivial");
    }
    const bool mirror = priors.eta1() > priors.eta2();
    const Priors base = mirror ? priors.swapped() : priors;
    LoccConstruction c = build_locc_construction(d_a, d_b, base);
    const auto &ta = *c.toolkit.alice;
    const auto &tb = *c.toolkit.bob;

    auto ca = [&](const DenseOperator &op) { return conj12(ta, op, mirror); };
    auto cb = [&](const DenseOperator &op) { return conj12(tb, op, mirror); };
    auto lab = [&](int l) { return relabel(l, mirror); };

    // One party found a totally (anti)symmetric state; the other, mixed,
    // measures {P+, P-}. Label 1 on (S, P+) and (A, P-).
    auto p_step = [&](Party who, const LocalParts &parts, const DenseOperator &m3, bool partner_symmetric,
                      auto conj) {
        return make_node(who, m3,
                         {branch_final("P+", conj(parts.p_plus), lab(partner_symmetric ? 1 : 2)),
                          branch_final("P-", conj(parts.p_minus), lab(partner_symmetric ? 2 : 1))});
    };

    // Both mixed: both measure {Q+, Q-}; label 1 iff the outcomes differ.
    auto bob_q = [&](bool alice_plus) {
        return make_node(Party::bob, tb.m3,
                         {branch_final("Q+", cb(c.bob.q_plus), lab(alice_plus ? 2 : 1)),
                          branch_final("Q-", cb(c.bob.q_minus), lab(alice_plus ? 1 : 2))});
    };
    auto alice_q = make_node(Party::alice, ta.m3,
                             {branch_to("Q+", ca(c.alice.q_plus), bob_q(true)),
                              branch_to("Q-", ca(c.alice.q_minus), bob_q(false))});

    const auto nb = tb.dim();
    auto bob_sym = [&](char alice_outcome) {
        std::vector<ProtocolBranch> br;
        if (alice_outcome == 'M') {
            br.push_back(branch_to("S", tb.s3, p_step(Party::alice, c.alice, ta.m3, true, ca)));
            br.push_back(branch_to("A", tb.a3, p_step(Party::alice, c.alice, ta.m3, false, ca)));
            br.push_back(branch_to("M", tb.m3, alice_q));
        } else {
            br.push_back(branch_final("S", tb.s3, lab(2)));
            br.push_back(branch_final("A", tb.a3, lab(2)));
            br.push_back(branch_to("M", tb.m3, p_step(Party::bob, c.bob, tb.m3, alice_outcome == 'S', cb)));
        }
        return make_node(Party::bob, identity(nb), std::move(br));
    };

    auto root = make_node(Party::alice, identity(ta.dim()),
                          {branch_to("S", ta.s3, bob_sym('S')), branch_to("A", ta.a3, bob_sym('A')),
                           branch_to("M", ta.m3, bob_sym('M'))});
    return LoccProtocol(d_a, d_b, root, "minerr-locc");
}

double baseline_no_reference(const Priors &priors) {
    return std::max(priors.eta1(), priors.eta2());
}

}  // namespace qident::minerr
