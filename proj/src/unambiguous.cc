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

#include "qident/unambiguous.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qident::unamb {

namespace {

constexpr double kCoeffTol = 1e-12;
constexpr double kNoErrorReject = 1e-8;

double d1d2(std::size_t d) {
    auto t = dimension_table(static_cast<std::int64_t>(d));
    return static_cast<double>(t.d1 * t.d2);
}

}  // namespace

Povm UnambPovm::to_povm() const {
    Povm p;
    p.elements.push_back({1, e1});
    p.elements.push_back({2, e2});
    p.elements.push_back({0, e0});
    return p;
}

SeparableCoeffs SeparableCoeffs::optimal() {
    constexpr double a = 2.0 / 3.0;
    return {a, a, a, a, 0.5, 0.5};
}

BetaFeasibility beta_feasibility(double beta1, double beta2) {
    if (beta1 < 0 || beta2 < 0) {
        throw std::invalid_argument("beta_feasibility: coefficients must be non-negative");
    }
    const double beta = 0.5 * (beta1 + beta2);
    const double delta = 0.5 * (beta1 - beta2);
    const double root = std::sqrt(9.0 / 16.0 * beta * beta + delta * delta);
    BetaFeasibility f;
    f.gamma_plus = 1.25 * beta + root;
    f.gamma_minus = 1.25 * beta - root;
    f.feasible = f.gamma_plus <= 1.0 + kCoeffTol;
    return f;
}

double x_block_max_eigenvalue(std::size_t d_a, std::size_t d_b, double beta1, double beta2) {
    auto bt = bipartite_toolkit(d_a, d_b);
    const auto &a = *bt.alice;
    const auto &b = *bt.bob;
    DenseOperator x = beta1 * (kron(a.s02, b.a02) + kron(a.s01, b.a01)) +
                      beta2 * (kron(a.a02, b.s02) + kron(a.a01, b.s01));
    DenseOperator mm = kron(a.m3, b.m3);
    return max_eigenvalue(mm * x * mm);
}

std::optional<std::string> coeffs_violation(const SeparableCoeffs &c) {
    const double alphas[] = {c.alpha1, c.alpha2, c.alpha3, c.alpha4};
    const double all[] = {c.alpha1, c.alpha2, c.alpha3, c.alpha4, c.beta1, c.beta2};
    for (double v : all) {
        if (v < 0) {
            std::ostringstream msg;
            msg << "coefficient " << v << " is negative";
            return msg.str();
        }
    }
    for (int i = 0; i < 4; ++i) {
        if (alphas[i] > 2.0 / 3.0 + kCoeffTol) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "alpha" << (i + 1) << " <= 2/3 violated: alpha" << (i + 1) << " = " << alphas[i]
                << " exceeds 2/3 by " << alphas[i] - 2.0 / 3.0;
            return msg.str();
        }
    }
    auto f = beta_feasibility(c.beta1, c.beta2);
    if (!f.feasible) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "(5/4)beta + sqrt((9/16)beta^2 + delta^2) <= 1 violated: value " << f.gamma_plus << " exceeds 1 by "
            << f.gamma_plus - 1.0;
        return msg.str();
    }
    return std::nullopt;
}

UnambPovm global_unamb_povm(std::size_t d) {
    const auto tk = cached_toolkit(d);
    const auto n = tk->dim();
    UnambPovm p;
    p.kind = PovmKind::global;
    p.d_a = d;
    p.d_b = 1;
    p.e1 = (2.0 / 3.0) * tk->m3 * tk->a02;
    p.e2 = (2.0 / 3.0) * tk->m3 * tk->a01;
    p.e0 = (1.0 / 3.0) * tk->m3 * (identity(n) + 2.0 * tk->aop) + tk->s3 + tk->a3;
    return p;
}

UnambPovm separable_unamb_povm_unchecked(std::size_t d_a, std::size_t d_b, const SeparableCoeffs &c) {
    auto bt = bipartite_toolkit(d_a, d_b);
    const auto &a = *bt.alice;
    const auto &b = *bt.bob;
    DenseOperator pm = c.alpha1 * kron(a.s3, b.m3 * b.a02) + c.alpha2 * kron(a.a3, b.m3 * b.s02) +
                       c.alpha3 * kron(a.m3 * a.s02, b.a3) + c.alpha4 * kron(a.m3 * a.a02, b.s3) +
                       c.beta1 * kron(DenseOperator(a.m3 * a.s02), DenseOperator(b.m3 * b.a02)) +
                       c.beta2 * kron(DenseOperator(a.m3 * a.a02), DenseOperator(b.m3 * b.s02));
    const auto &t12 = cached_toolkit(d_a * d_b)->t12;
    UnambPovm p;
    p.kind = PovmKind::separable;
    p.d_a = d_a;
    p.d_b = d_b;
    p.e1 = bt.to_system_major(pm);
    p.e2 = t12 * p.e1 * t12;
    p.e0 = identity(p.e1.rows()) - p.e1 - p.e2;
    return p;
}

UnambPovm separable_unamb_povm(std::size_t d_a, std::size_t d_b, const SeparableCoeffs &coeffs) {
    if (auto v = coeffs_violation(coeffs)) {
        throw std::invalid_argument("infeasible separable coefficients: " + *v);
    }
    return separable_unamb_povm_unchecked(d_a, d_b, coeffs);
}

double no_error_residual(const UnambPovm &povm) {
    const auto tk = cached_toolkit(povm.d_a * povm.d_b);
    return std::max({max_abs(povm.e1 * tk->s02), max_abs(tk->s02 * povm.e1), max_abs(povm.e2 * tk->s01),
                     max_abs(tk->s01 * povm.e2)});
}

double unamb_success(const UnambPovm &povm) {
    const std::size_t d = povm.d_a * povm.d_b;
    const auto tk = cached_toolkit(d);
    double residual = no_error_residual(povm);
    if (residual > kNoErrorReject) {
        std::ostringstream msg;
        msg << "unamb_success: POVM violates the no-error conditions (residual " << residual << ")";
        throw std::invalid_argument(msg.str());
    }
    double t = (povm.e1 * tk->s01).trace().real() + (povm.e2 * tk->s02).trace().real();
    return t / (2.0 * d1d2(d));
}

double pmax_unamb_global(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("pmax_unamb_global: d must be at least 2");
    }
    const double dd = static_cast<double>(d);
    return (dd - 1) / (3 * dd);
}

double pmax_unamb_locc(std::size_t d_a, std::size_t d_b) {
    if (d_a < 2 || d_b < 2) {
        throw std::invalid_argument("pmax_unamb_locc: local dimensions must be at least 2");
    }
    const double a2 = static_cast<double>(d_a * d_a);
    const double b2 = static_cast<double>(d_b * d_b);
    const double ab = static_cast<double>(d_a * d_b);
    return (11 * a2 * b2 + a2 + b2 - 13) / (36 * ab * (ab + 1));
}

double separable_trace_closed_form(std::size_t d_a, std::size_t d_b, const SeparableCoeffs &c) {
    auto a = dimension_table(static_cast<std::int64_t>(d_a));
    auto b = dimension_table(static_cast<std::int64_t>(d_b));
    auto f = [](std::int64_t x, std::int64_t y) { return static_cast<double>(x * y); };
    return 3.0 / 8.0 *
               (c.alpha1 * f(a.dim_vs, b.dim_vm) + c.alpha2 * f(a.dim_va, b.dim_vm) +
                c.alpha3 * f(a.dim_vm, b.dim_va) + c.alpha4 * f(a.dim_vm, b.dim_vs)) +
           3.0 / 32.0 * (c.beta1 + c.beta2) * f(a.dim_vm, b.dim_vm);
}

LocalSteps local_steps(const SymmetryToolkit &tk) {
    const auto n = tk.dim();
    const DenseOperator id = identity(n);
    LocalSteps s;
    s.e1 = (2.0 / 3.0) * tk.m3 * tk.a02;
    s.e2 = (2.0 / 3.0) * tk.m3 * tk.a01;
    s.e0 = (1.0 / 3.0) * tk.m3 * (id + 2.0 * tk.aop);
    s.e1p = (2.0 / 3.0) * tk.m3 * tk.s02;
    s.e2p = (2.0 / 3.0) * tk.m3 * tk.s01;
    s.e0p = (1.0 / 3.0) * tk.m3 * (id - 2.0 * tk.aop);
    s.e11 = 0.5 * tk.m3 * tk.a02;
    s.e12 = 0.5 * tk.m3 * tk.s02;
    s.e21 = 0.5 * tk.m3 * tk.a01;
    s.e22 = 0.5 * tk.m3 * tk.s01;
    s.f1 = tk.m3 * tk.s02;
    s.f2 = tk.m3 * tk.a02;
    s.f1p = tk.m3 * tk.s01;
    s.f2p = tk.m3 * tk.a01;
    return s;
}

LoccProtocol unamb_locc_protocol(std::size_t d_a, std::size_t d_b, bool alice_first) {
    auto bt = bipartite_toolkit(d_a, d_b);
    const auto &ta = *bt.alice;
    const auto &tb = *bt.bob;
    const LocalSteps sa = local_steps(ta);
    const LocalSteps sb = local_steps(tb);

    // Partner is totally symmetric (primed = false) or antisymmetric (primed = true).
    auto single = [](Party who, const SymmetryToolkit &tk, const LocalSteps &s, bool primed) {
        return make_node(who, tk.m3,
                         {branch_final("1", primed ? s.e1p : s.e1, 1), branch_final("2", primed ? s.e2p : s.e2, 2),
                          branch_final("0", primed ? s.e0p : s.e0, 0)});
    };

    // Both mixed: the first mover measures e_{a1 a2}, the second {f_b} or {f'_b}.
    Party first = alice_first ? Party::alice : Party::bob;
    Party second = alice_first ? Party::bob : Party::alice;
    const SymmetryToolkit &t1 = alice_first ? ta : tb;
    const SymmetryToolkit &t2 = alice_first ? tb : ta;
    const LocalSteps &s1 = alice_first ? sa : sb;
    const LocalSteps &s2 = alice_first ? sb : sa;
    auto second_step = [&](int a1, int a2) {
        const DenseOperator &g1 = a1 == 1 ? s2.f1 : s2.f1p;
        const DenseOperator &g2 = a1 == 1 ? s2.f2 : s2.f2p;
        return make_node(second, t2.m3,
                         {branch_final("1", g1, a2 == 1 ? a1 : 0), branch_final("2", g2, a2 == 2 ? a1 : 0)});
    };
    auto both_mixed = make_node(first, t1.m3,
                                {branch_to("11", s1.e11, second_step(1, 1)), branch_to("12", s1.e12, second_step(1, 2)),
                                 branch_to("21", s1.e21, second_step(2, 1)), branch_to("22", s1.e22, second_step(2, 2))});

    const auto nb = tb.dim();
    auto bob_sym = [&](char alice_outcome) {
        std::vector<ProtocolBranch> br;
        switch (alice_outcome) {
            case 'S':
                br.push_back(branch_final("S", tb.s3, 0));
                br.push_back(branch_to("M", tb.m3, single(Party::bob, tb, sb, false)));
                // S x A carries no weight: the whole state would be totally antisymmetric.
                br.push_back(branch_final("A", tb.a3, 0));
                break;
            case 'A':
                br.push_back(branch_final("S", tb.s3, 0));
                br.push_back(branch_to("M", tb.m3, single(Party::bob, tb, sb, true)));
                br.push_back(branch_final("A", tb.a3, 0));
                break;
            default:
                br.push_back(branch_to("S", tb.s3, single(Party::alice, ta, sa, false)));
                br.push_back(branch_to("M", tb.m3, both_mixed));
                br.push_back(branch_to("A", tb.a3, single(Party::alice, ta, sa, true)));
                break;
        }
        return make_node(Party::bob, identity(nb), std::move(br));
    };

    auto root = make_node(Party::alice, identity(ta.dim()),
                          {branch_to("S", ta.s3, bob_sym('S')), branch_to("M", ta.m3, bob_sym('M')),
                           branch_to("A", ta.a3, bob_sym('A'))});
    return LoccProtocol(d_a, d_b, root, alice_first ? "unamb-locc" : "unamb-locc-bob-first");
}

double baseline_no_reference() {
    return 0.0;
}

}  // namespace qident::unamb
