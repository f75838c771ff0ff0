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

#include "qident/cli.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qident/minerr.h"
#include "qident/simulate.h"
#include "qident/symmetry.h"
#include "qident/unambiguous.h"

namespace qident::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Largest local dimension for which d^3 x d^3 operators are assembled.
constexpr std::size_t kMaxAssembledD = 9;
// Monte Carlo acceptance band in standard errors.
constexpr double kMonteCarloSigmas = 3.0;

std::string fmt_label(const std::string &base, std::size_t d) {
    return base + "[d=" + std::to_string(d) + "]";
}

std::string fmt_label(const std::string &base, std::size_t d_a, std::size_t d_b) {
    return base + "[" + std::to_string(d_a) + "x" + std::to_string(d_b) + "]";
}

std::string fmt_eta(double eta) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", eta);
    return buf;
}

ojson round_all(const ojson &j) {
    if (j.is_number_float()) {
        return round12(j.get<double>());
    }
    if (j.is_structured()) {
        ojson out = j;
        for (auto it = out.begin(); it != out.end(); ++it) {
            *it = round_all(*it);
        }
        return out;
    }
    return j;
}

std::string csv_quote(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

ojson config_echo(const ExperimentConfig &c) {
    ojson j;
    j["command"] = c.command;
    if (c.d) j["d"] = *c.d;
    if (c.d_a) j["d_a"] = *c.d_a;
    if (c.d_b) j["d_b"] = *c.d_b;
    if (c.command == "minerr") j["eta1"] = c.eta1;
    if (c.locc) j["locc"] = true;
    if (c.baseline) j["baseline"] = true;
    if (c.simulate || c.command == "verify-all") j["seed"] = c.seed;
    if (c.simulate) j["n_trials"] = c.n_trials;
    if (c.inject_alpha) j["inject_alpha"] = *c.inject_alpha;
    j["copies"] = 1;
    return j;
}

void require_dims(const ExperimentConfig &c, bool allow_trivial_party) {
    if (c.d.has_value() == (c.d_a.has_value() || c.d_b.has_value())) {
        if (!c.d && !c.d_a && !c.d_b) {
            throw UsageError("give either --d or both --da and --db");
        }
        throw UsageError("--d cannot be combined with --da/--db");
    }
    if (c.d) {
        if (*c.d < 2) {
            throw UsageError("--d must be at least 2");
        }
        return;
    }
    if (!c.split()) {
        throw UsageError("--da and --db must be given together");
    }
    std::size_t lo = allow_trivial_party ? 1 : 2;
    if (*c.d_a < lo || *c.d_b < lo || (*c.d_a < 2 && *c.d_b < 2)) {
        throw UsageError(allow_trivial_party ? "--da/--db must be >= 1 with at least one >= 2"
                                             : "--da and --db must be at least 2");
    }
}

void require_priors(const ExperimentConfig &c) {
    if (!(c.eta1 >= 0.0 && c.eta1 <= 1.0)) {
        throw UsageError("--eta1 must lie in [0, 1]");
    }
}

ojson dims_json(const DimensionTable &t) {
    ojson j;
    j["d"] = t.d;
    j["d1"] = t.d1;
    j["d2"] = t.d2;
    j["d3"] = t.d3;
    j["dim_vs"] = t.dim_vs;
    j["dim_va"] = t.dim_va;
    j["dim_vm"] = t.dim_vm;
    return j;
}

ojson batch_json(const BatchStats &s) {
    ojson j;
    j["n_trials"] = s.n_trials;
    j["successes"] = s.successes;
    j["errors"] = s.errors;
    j["inconclusive"] = s.inconclusive;
    j["p_hat"] = s.p_hat;
    j["std_error"] = s.std_error;
    if (s.target) {
        j["target"] = *s.target;
        j["z"] = s.std_error > 0 ? (s.p_hat - *s.target) / s.std_error : 0.0;
    }
    return j;
}

void add_monte_carlo(Report &r, const BatchStats &s, bool require_no_errors) {
    r.monte_carlo = batch_json(s);
    r.add_equal("monte_carlo.p_hat", *s.target, s.p_hat, kMonteCarloSigmas * s.std_error,
                "tolerance is 3 standard errors");
    if (require_no_errors) {
        r.add_equal("monte_carlo.errors", 0.0, static_cast<double>(s.errors), 0.0);
    }
}

void toolkit_checks(Report &r, std::size_t d) {
    const auto tk = cached_toolkit(d);
    const auto t = dimension_table(static_cast<std::int64_t>(d));
    const auto n = tk->dim();
    const DenseOperator id = identity(n);
    const double vm = static_cast<double>(t.dim_vm);

    r.add_equal(fmt_label("toolkit.completeness", d), 0, max_abs(tk->s3 + tk->a3 + tk->m3 - id), 1e-10);
    double proj = 0;
    for (const DenseOperator *p : {&tk->s3, &tk->a3, &tk->m3, &tk->s01, &tk->s02, &tk->a01, &tk->a02}) {
        proj = std::max(proj, max_abs(*p * *p - *p));
    }
    proj = std::max({proj, max_abs(tk->s3 * tk->a3), max_abs(tk->s3 * tk->m3), max_abs(tk->a3 * tk->m3)});
    r.add_equal(fmt_label("toolkit.orthogonal_projectors", d), 0, proj, 1e-10);
    const DenseOperator d2 = tk->dop * tk->dop;
    r.add_equal(fmt_label("toolkit.D2_eq_three_quarters_M3", d), 0, max_abs(d2 - 0.75 * tk->m3), 1e-10);
    r.add_equal(fmt_label("toolkit.DA_anticommute", d), 0, max_abs(tk->dop * tk->aop + tk->aop * tk->dop), 1e-10);
    r.add_equal(fmt_label("toolkit.A2_eq_one_minus_D2", d), 0, max_abs(tk->aop * tk->aop - (id - d2)), 1e-10);
    r.add_equal(fmt_label("toolkit.tr_M3_T01", d), 0, std::abs((tk->m3 * tk->t01).trace()), 1e-9);
    r.add_equal(fmt_label("toolkit.tr_M3_T02", d), 0, std::abs((tk->m3 * tk->t02).trace()), 1e-9);
    double central = 0;
    for (const DenseOperator *tp : {&tk->t01, &tk->t02, &tk->t12}) {
        central = std::max(central, max_abs(tk->m3 * *tp - *tp * tk->m3));
    }
    r.add_equal(fmt_label("toolkit.M3_central", d), 0, central, 1e-10);
    r.add_equal(fmt_label("toolkit.tr_S3", d), static_cast<double>(t.dim_vs), tk->s3.trace().real(), 1e-8);
    r.add_equal(fmt_label("toolkit.tr_A3", d), static_cast<double>(t.dim_va), tk->a3.trace().real(), 1e-8);
    r.add_equal(fmt_label("toolkit.tr_M3", d), vm, tk->m3.trace().real(), 1e-8);
    r.add_equal(fmt_label("toolkit.tr_M3_A02_S01", d), 3.0 / 8 * vm, (tk->m3 * tk->a02 * tk->s01).trace().real(),
                1e-8);
    r.add_equal(fmt_label("toolkit.tr_M3_S02_A01", d), 3.0 / 8 * vm, (tk->m3 * tk->s02 * tk->a01).trace().real(),
                1e-8);
    r.add_equal(fmt_label("toolkit.tr_M3_S02_S01", d), 1.0 / 8 * vm, (tk->m3 * tk->s02 * tk->s01).trace().real(),
                1e-8);
    r.add_equal(fmt_label("toolkit.tr_M3_A02_A01", d), 1.0 / 8 * vm, (tk->m3 * tk->a02 * tk->a01).trace().real(),
                1e-8);
}

void delta_spectrum_check(Report &r, std::size_t d, const Priors &priors) {
    auto expected = minerr::expected_delta_spectrum(d, priors);
    Spectrum s = hermitian_eig(minerr::build_delta(d, priors));
    double worst = 0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        worst = std::max(worst, std::abs(expected[k] - s.eigenvalues[static_cast<Eigen::Index>(k)]));
    }
    r.add_equal(fmt_label("minerr.delta_spectrum", d) + "[eta1=" + fmt_eta(priors.eta1()) + "]", 0, worst, 1e-9);
}

double lambda_eigen(std::size_t d, const Priors &priors, bool plus) {
    const auto tk = cached_toolkit(d);
    DenseOperator dm = tk->m3 * minerr::build_delta(*tk, priors) * tk->m3;
    Spectrum s = hermitian_eig(dm);
    return plus ? s.eigenvalues.maxCoeff() : s.eigenvalues.minCoeff();
}

void minerr_locc_checks(Report &r, std::size_t d_a, std::size_t d_b, const Priors &priors, bool protocol) {
    const std::size_t d = d_a * d_b;
    const std::string tag = "[eta1=" + fmt_eta(priors.eta1()) + "]";
    Povm global = minerr::global_povm(d, priors);
    Povm local = minerr::locc_povm(d_a, d_b, priors);
    double t_global = minerr::trace_with_delta(global, d, priors);
    double t_local = minerr::trace_with_delta(local, d, priors);
    r.add_equal(fmt_label("minerr.locc_trace_vs_global", d_a, d_b) + tag, t_global, t_local, 1e-9);
    r.add_equal(fmt_label("minerr.locc_success_vs_closed_form", d_a, d_b) + tag, minerr::pmax_global(d, priors),
                minerr::mean_success(local, d, priors), 1e-9);
    double psd = std::min(min_eigenvalue(local.at(1)), min_eigenvalue(local.at(2)));
    r.add_greater(fmt_label("minerr.locc_elements_psd", d_a, d_b) + tag, psd, 0.0, -1e-10,
                  "smallest eigenvalue of E1^L and 1 - E1^L");
    if (protocol) {
        Povm flat = flatten(minerr::minerr_locc_protocol(d_a, d_b, priors));
        double worst = 0;
        for (int label : {1, 2}) {
            const DenseOperator *e = flat.find(label);
            worst = std::max(worst, e ? max_abs_diff(*e, local.at(label)) : max_abs(local.at(label)));
        }
        r.add_equal(fmt_label("minerr.protocol_equals_separable_povm", d_a, d_b) + tag, 0, worst, 1e-9);
    }
}

double max_element_diff(const Povm &flat, const unamb::UnambPovm &target) {
    double worst = 0;
    const std::pair<int, const DenseOperator *> pairs[] = {{1, &target.e1}, {2, &target.e2}, {0, &target.e0}};
    for (auto [label, op] : pairs) {
        const DenseOperator *e = flat.find(label);
        worst = std::max(worst, e ? max_abs_diff(*e, *op) : max_abs(*op));
    }
    return worst;
}

void unamb_locc_checks(Report &r, std::size_t d_a, std::size_t d_b, bool protocol) {
    const auto coeffs = unamb::SeparableCoeffs::optimal();
    const std::size_t d = d_a * d_b;
    const double p_global = unamb::pmax_unamb_global(d);
    const double p_local = unamb::pmax_unamb_locc(d_a, d_b);
    auto sep = unamb::separable_unamb_povm(d_a, d_b, coeffs);
    const auto tk = cached_toolkit(d);
    const auto t = dimension_table(static_cast<std::int64_t>(d));

    r.add_equal(fmt_label("unamb.locc_success_vs_closed_form", d_a, d_b), p_local, unamb::unamb_success(sep), 1e-10);
    r.add_equal(fmt_label("unamb.separable_trace_bookkeeping", d_a, d_b),
                unamb::separable_trace_closed_form(d_a, d_b, coeffs), (sep.e1 * tk->s01).trace().real(), 1e-8);
    r.add_equal(fmt_label("unamb.locc_trace_over_d1d2", d_a, d_b), p_local,
                unamb::separable_trace_closed_form(d_a, d_b, coeffs) / static_cast<double>(t.d1 * t.d2), 1e-10);
    r.add_greater(fmt_label("unamb.global_local_gap", d_a, d_b), p_global, p_local, 1e-3);
    r.add_equal(fmt_label("unamb.no_error_residual", d_a, d_b), 0, unamb::no_error_residual(sep), 1e-10);
    r.add_equal(fmt_label("unamb.exchange_symmetry", d_a, d_b), 0,
                std::max(max_abs_diff(sep.e2, tk->t12 * sep.e1 * tk->t12),
                         max_abs_diff(sep.e0, tk->t12 * sep.e0 * tk->t12)),
                1e-10);
    r.add_greater(fmt_label("unamb.e0_psd", d_a, d_b), min_eigenvalue(sep.e0), 0.0, -1e-10,
                  "smallest eigenvalue of E0^L");
    auto f = unamb::beta_feasibility(coeffs.beta1, coeffs.beta2);
    r.add_equal(fmt_label("unamb.gamma_plus_vs_x_block", d_a, d_b), f.gamma_plus,
                unamb::x_block_max_eigenvalue(d_a, d_b, coeffs.beta1, coeffs.beta2), 1e-9);
    if (protocol) {
        Povm flat = flatten(unamb::unamb_locc_protocol(d_a, d_b));
        r.add_equal(fmt_label("unamb.protocol_equals_separable_povm", d_a, d_b), 0, max_element_diff(flat, sep), 1e-9);
    }
}

}  // namespace

std::size_t ExperimentConfig::total_d() const {
    if (d) {
        return *d;
    }
    if (split()) {
        return *d_a * *d_b;
    }
    throw UsageError("no dimension given");
}

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        return x;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

void Report::add_equal(std::string name, double analytic, double oracle, double tol, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.analytic = analytic;
    c.oracle = oracle;
    c.diff = std::abs(analytic - oracle);
    c.tol = tol;
    c.relation = Relation::equal;
    c.pass = c.diff <= tol;
    c.detail = std::move(detail);
    checks.push_back(std::move(c));
}

void Report::add_greater(std::string name, double larger, double smaller, double margin, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.analytic = larger;
    c.oracle = smaller;
    c.diff = std::abs(larger - smaller);
    c.tol = margin;
    c.relation = Relation::greater;
    c.pass = larger - smaller > margin;
    c.detail = std::move(detail);
    checks.push_back(std::move(c));
}

void Report::add_flag(std::string name, bool ok, std::string detail) {
    Check c;
    c.name = std::move(name);
    c.analytic = 1;
    c.oracle = ok ? 1 : 0;
    c.diff = ok ? 0 : 1;
    c.pass = ok;
    c.detail = std::move(detail);
    checks.push_back(std::move(c));
}

bool Report::pass() const {
    for (const auto &c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> Report::failures() const {
    std::vector<std::string> out;
    for (const auto &c : checks) {
        if (!c.pass) {
            out.push_back(c.name);
        }
    }
    return out;
}

ojson Report::to_json(bool timestamp) const {
    ojson j;
    j["command"] = command;
    if (timestamp) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["generated_at"] = buf;
    }
    j["config"] = config;
    j["values"] = round_all(values);
    ojson arr = ojson::array();
    for (const auto &c : checks) {
        ojson cj;
        cj["name"] = c.name;
        cj["analytic"] = round12(c.analytic);
        cj["oracle"] = round12(c.oracle);
        cj["diff"] = round12(c.diff);
        cj["tol"] = round12(c.tol);
        cj["relation"] = c.relation == Relation::equal ? "eq" : "gt";
        cj["pass"] = c.pass;
        if (!c.detail.empty()) {
            cj["detail"] = c.detail;
        }
        arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    if (monte_carlo) {
        j["monte_carlo"] = round_all(*monte_carlo);
    }
    j["pass"] = pass();
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out.precision(12);
    out << "name,analytic,oracle,diff,tol,relation,pass,detail\n";
    for (const auto &c : checks) {
        out << c.name << ',' << c.analytic << ',' << c.oracle << ',' << c.diff << ',' << c.tol << ','
            << (c.relation == Relation::equal ? "eq" : "gt") << ',' << (c.pass ? "true" : "false") << ',' << csv_quote(c.detail) << '\n';
    }
    return out.str();
}

Report cmd_dims(const ExperimentConfig &c) {
    require_dims(c, true);
    Report r;
    r.command = "dims";
    r.config = config_echo(c);
    const std::size_t d = c.total_d();
    const auto t = dimension_table(static_cast<std::int64_t>(d));
    r.values["global"] = dims_json(t);
    r.add_equal(fmt_label("dims.sum_is_d_cubed", d), static_cast<double>(t.d * t.d * t.d),
                static_cast<double>(t.dim_vs + t.dim_va + t.dim_vm), 0);
    r.add_equal(fmt_label("dims.dim_vs_is_d3", d), static_cast<double>(t.d3), static_cast<double>(t.dim_vs), 0);
    if (d <= 6) {
        const auto tk = cached_toolkit(d);
        r.add_equal(fmt_label("dims.tr_S3", d), static_cast<double>(t.dim_vs), tk->s3.trace().real(), 1e-8);
        r.add_equal(fmt_label("dims.tr_A3", d), static_cast<double>(t.dim_va), tk->a3.trace().real(), 1e-8);
        r.add_equal(fmt_label("dims.tr_M3", d), static_cast<double>(t.dim_vm), tk->m3.trace().real(), 1e-8);
    }
    if (c.split()) {
        r.values["alice"] = dims_json(dimension_table(static_cast<std::int64_t>(*c.d_a)));
        r.values["bob"] = dims_json(dimension_table(static_cast<std::int64_t>(*c.d_b)));
        auto rel = check_dim_relation(static_cast<std::int64_t>(*c.d_a), static_cast<std::int64_t>(*c.d_b));
        r.values["dim_relation"] = {{"lhs", rel.lhs},
                                    {"rhs", static_cast<double>(rel.rhs_x2) / 2.0},
                                    {"residual", static_cast<double>(rel.residual_x2) / 2.0}};
        r.add_equal(fmt_label("dims.dim_vm_decomposition", *c.d_a, *c.d_b), static_cast<double>(rel.lhs_x2),
                    static_cast<double>(rel.rhs_x2), 0, "both sides doubled, exact integers");
    }
    return r;
}

Report cmd_minerr(const ExperimentConfig &c) {
    require_dims(c, true);
    require_priors(c);
    if (c.locc && !c.split()) {
        throw UsageError("--locc needs --da and --db");
    }
    const std::size_t d = c.total_d();
    const Priors priors(c.eta1);
    Report r;
    r.command = "minerr";
    r.config = config_echo(c);
    auto [lp, lm] = minerr::lambda_pm(priors);
    const double p_max = minerr::pmax_global(d, priors);
    r.values["lambda_plus"] = lp;
    r.values["lambda_minus"] = lm;
    r.values["p_max"] = p_max;
    r.values["dims"] = dims_json(dimension_table(static_cast<std::int64_t>(d)));
    if (c.baseline) {
        r.values["baseline_no_reference"] = minerr::baseline_no_reference(priors);
    }
    if (d <= kMaxAssembledD) {
        r.add_equal(fmt_label("minerr.pmax_closed_form_vs_eigen_sum", d), p_max, minerr::pmax_global_eigen(d, priors),
                    1e-9);
        if (priors.eta1() > 0 && priors.eta2() > 0) {
            r.add_equal(fmt_label("minerr.lambda_plus", d), lp, lambda_eigen(d, priors, true), 1e-9);
            r.add_equal(fmt_label("minerr.lambda_minus", d), lm, lambda_eigen(d, priors, false), 1e-9);
        }
        r.add_equal(fmt_label("minerr.global_povm_success", d), p_max,
                    minerr::mean_success(minerr::global_povm(d, priors), d, priors), 1e-9);
    }
    if (c.locc) {
        if (d > kMaxAssembledD) {
            throw UsageError("--locc supports d_a * d_b <= 9");
        }
        minerr_locc_checks(r, *c.d_a, *c.d_b, priors, true);
        r.values["p_max_locc"] = minerr::mean_success(minerr::locc_povm(*c.d_a, *c.d_b, priors), d, priors);
    }
    if (c.simulate) {
        TrialSpec spec;
        if (c.locc) {
            spec = LoccTrialSpec{std::make_shared<const LoccProtocol>(minerr::minerr_locc_protocol(*c.d_a, *c.d_b, priors)),
                                 priors};
        } else {
            if (d > kMaxAssembledD) {
                throw UsageError("--simulate supports d <= 9");
            }
            spec = GlobalTrialSpec{minerr::global_povm(d, priors), d, priors};
        }
        add_monte_carlo(r, run_batch(spec, c.n_trials, c.seed, c.workers, p_max), false);
    }
    return r;
}

Report cmd_unamb(const ExperimentConfig &c) {
    require_dims(c, false);
    const std::size_t d = c.total_d();
    Report r;
    r.command = "unamb";
    r.config = config_echo(c);
    const double p_global = unamb::pmax_unamb_global(d);
    r.values["p_max_global"] = p_global;
    r.values["dims"] = dims_json(dimension_table(static_cast<std::int64_t>(d)));
    if (c.baseline) {
        r.values["baseline_no_reference"] = unamb::baseline_no_reference();
    }
    if (d <= kMaxAssembledD) {
        auto g = unamb::global_unamb_povm(d);
        r.add_equal(fmt_label("unamb.global_success", d), p_global, unamb::unamb_success(g), 1e-10);
        r.add_equal(fmt_label("unamb.global_no_error_residual", d), 0, unamb::no_error_residual(g), 1e-10);
        r.add_greater(fmt_label("unamb.global_e0_psd", d), min_eigenvalue(g.e0), 0.0, -1e-10,
                      "smallest eigenvalue of E0");
    }
    if (c.split()) {
        const double p_local = unamb::pmax_unamb_locc(*c.d_a, *c.d_b);
        r.values["p_max_locc"] = p_local;
        r.values["gap"] = p_global - p_local;
        if (d > kMaxAssembledD) {
            throw UsageError("--da * --db must be at most 9");
        }
        unamb_locc_checks(r, *c.d_a, *c.d_b, true);
    } else if (c.locc) {
        throw UsageError("--locc needs --da and --db");
    }
    if (c.simulate) {
        TrialSpec spec;
        double target = p_global;
        if (c.split()) {
            target = unamb::pmax_unamb_locc(*c.d_a, *c.d_b);
            spec = LoccTrialSpec{std::make_shared<const LoccProtocol>(unamb::unamb_locc_protocol(*c.d_a, *c.d_b)),
                                 Priors(0.5)};
        } else {
            if (d > kMaxAssembledD) {
                throw UsageError("--simulate supports d <= 9");
            }
            spec = GlobalTrialSpec{unamb::global_unamb_povm(d).to_povm(), d, Priors(0.5)};
        }
        add_monte_carlo(r, run_batch(spec, c.n_trials, c.seed, c.workers, target), true);
    }
    return r;
}

Report cmd_verify_all(const ExperimentConfig &c) {
    Report r;
    r.command = "verify-all";
    r.config = config_echo(c);
    const double etas[] = {0.0, 0.1, 0.25, 0.5, 0.7, 0.9, 1.0};
    const double interior[] = {0.1, 0.3, 0.5, 0.7, 0.9};

    for (std::size_t d = 2; d <= 6; ++d) {
        toolkit_checks(r, d);
    }
    for (std::size_t d = 2; d <= 4; ++d) {
        for (double eta : interior) {
            delta_spectrum_check(r, d, Priors(eta));
        }
    }
    for (std::int64_t a = 2; a <= 5; ++a) {
        for (std::int64_t b = 2; b <= 5; ++b) {
            auto rel = check_dim_relation(a, b);
            r.add_equal(fmt_label("dims.dim_vm_decomposition", static_cast<std::size_t>(a), static_cast<std::size_t>(b)),
                        static_cast<double>(rel.lhs_x2), static_cast<double>(rel.rhs_x2), 0);
        }
    }
    for (std::size_t d = 2; d <= 6; ++d) {
        for (double eta : etas) {
            Priors priors(eta);
            const std::string tag = "[eta1=" + fmt_eta(eta) + "]";
            r.add_equal(fmt_label("minerr.pmax_closed_form_vs_eigen_sum", d) + tag, minerr::pmax_global(d, priors),
                        minerr::pmax_global_eigen(d, priors), 1e-9);
            r.add_greater(fmt_label("minerr.beats_baseline", d) + tag, minerr::pmax_global(d, priors),
                          minerr::baseline_no_reference(priors), -1e-12);
        }
    }
    const std::pair<std::size_t, std::size_t> splits[] = {{2, 2}, {2, 3}, {3, 2}};
    for (auto [a, b] : splits) {
        for (double eta : interior) {
            minerr_locc_checks(r, a, b, Priors(eta), false);
        }
    }
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
        for (double eta : {0.3, 0.5, 0.8}) {
            minerr_locc_checks(r, a, b, Priors(eta), true);
        }
    }

    for (std::size_t d = 2; d <= 4; ++d) {
        r.add_equal(fmt_label("unamb.global_wrong_acceptance", d), 0,
                    max_wrong_acceptance(unamb::global_unamb_povm(d).to_povm(), d, 1000, c.seed), 1e-10,
                    "max over 1000 Haar pairs");
    }
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}}) {
        auto sep = unamb::separable_unamb_povm(a, b, unamb::SeparableCoeffs::optimal());
        r.add_equal(fmt_label("unamb.locc_wrong_acceptance", a, b), 0,
                    max_wrong_acceptance(sep.to_povm(), a * b, 1000, c.seed + 1), 1e-10, "max over 1000 Haar pairs");
    }
    for (std::size_t a = 2; a <= 10; ++a) {
        for (std::size_t b = 2; b <= 10; ++b) {
            r.add_greater(fmt_label("unamb.global_local_gap", a, b), unamb::pmax_unamb_global(a * b),
                          unamb::pmax_unamb_locc(a, b), 0.0);
        }
    }
    for (std::size_t d = 2; d <= 6; ++d) {
        auto g = unamb::global_unamb_povm(d);
        r.add_equal(fmt_label("unamb.global_success", d), unamb::pmax_unamb_global(d), unamb::unamb_success(g), 1e-10);
    }
    for (auto [a, b] : splits) {
        unamb_locc_checks(r, a, b, a == 2);
    }
    {
        Povm flat = flatten(unamb::unamb_locc_protocol(2, 3, false));
        auto sep = unamb::separable_unamb_povm(2, 3, unamb::SeparableCoeffs::optimal());
        r.add_equal("unamb.protocol_bob_first_equals_separable_povm[2x3]", 0, max_element_diff(flat, sep), 1e-9);
    }

    auto coeffs = unamb::SeparableCoeffs::optimal();
    if (c.inject_alpha) {
        coeffs.alpha1 = *c.inject_alpha;
    }
    auto violation = unamb::coeffs_violation(coeffs);
    r.add_flag("unamb.separable_coefficients_feasible", !violation, violation.value_or(""));
    return r;
}

namespace {

Report dispatch(const ExperimentConfig &c) {
    if (c.command == "dims") return cmd_dims(c);
    if (c.command == "minerr") return cmd_minerr(c);
    if (c.command == "unamb") return cmd_unamb(c);
    return cmd_verify_all(c);
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Pure-state identification with two unknown bipartite references"};
    app.require_subcommand(1, 1);
    ExperimentConfig cfg;
    std::size_t d = 0, d_a = 0, d_b = 0;
    bool json = false, csv = false;

    auto add_common = [&](CLI::App *sub) {
        sub->add_flag("--json", json, "JSON output (default)");
        sub->add_flag("--csv", csv, "CSV output, one row per check");
        sub->add_option("--out", cfg.out_path, "Write the report to this file");
    };
    auto add_dims = [&](CLI::App *sub) {
        sub->add_option("--d", d, "Local dimension of each system");
        sub->add_option("--da", d_a, "Alice's local dimension");
        sub->add_option("--db", d_b, "Bob's local dimension");
    };
    auto add_sim = [&](CLI::App *sub) {
        sub->add_flag("--simulate", cfg.simulate, "Run a Monte Carlo batch");
        sub->add_option("--n", cfg.n_trials, "Number of trials")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "Base seed");
        sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--baseline", cfg.baseline, "Report the no-reference baseline");
    };

    auto *dims = app.add_subcommand("dims", "Subspace dimensions");
    add_dims(dims);
    add_common(dims);
    auto *minerr = app.add_subcommand("minerr", "Minimum-error identification");
    add_dims(minerr);
    minerr->add_option("--eta1", cfg.eta1, "Prior of the first reference");
    minerr->add_flag("--locc", cfg.locc, "Include the local protocol");
    add_sim(minerr);
    add_common(minerr);
    auto *unamb = app.add_subcommand("unamb", "Unambiguous identification");
    add_dims(unamb);
    unamb->add_flag("--locc", cfg.locc, "Include the local protocol (implied by --da/--db)");
    add_sim(unamb);
    add_common(unamb);
    auto *verify = app.add_subcommand("verify-all", "Run every analytic/oracle check");
    verify->add_option("--seed", cfg.seed, "Seed for the Haar-sampled checks");
    verify->add_option("--alpha", cfg.inject_alpha, "Override alpha1 of the separable coefficients");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    for (auto *sub : app.get_subcommands()) {
        cfg.command = sub->get_name();
        auto given = [sub](const char *name) {
            const auto *opt = sub->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        if (given("--d")) cfg.d = d;
        if (given("--da")) cfg.d_a = d_a;
        if (given("--db")) cfg.d_b = d_b;
    }
    if (json && csv) {
        err << "error: --json and --csv are exclusive\n";
        return 2;
    }
    cfg.format = csv ? OutputFormat::csv : OutputFormat::json;

    Report report;
    try {
        report = dispatch(cfg);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text = cfg.format == OutputFormat::csv ? report.to_csv() : report.to_json().dump(2) + "\n";
    if (cfg.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.out_path);
        if (!f) {
            err << "error: cannot write " << cfg.out_path << "\n";
            return 2;
        }
        f << text;
    }
    for (const auto &name : report.failures()) {
        err << "FAIL " << name << "\n";
    }
    return report.pass() ? 0 : 1;
}

}  // namespace qident::cli
