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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace qident::cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qident");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json check(const json &report, const std::string &name) {
    for (const auto &c : report["checks"]) {
        if (c["name"] == name) {
            return c;
        }
    }
    return nullptr;
}

}  // namespace

TEST(cli, dims) {
    auto r = run({"dims", "--d", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_EQ(j["values"]["global"]["dim_vs"], 10);
    ASSERT_EQ(j["values"]["global"]["dim_va"], 1);
    ASSERT_EQ(j["values"]["global"]["dim_vm"], 16);
    ASSERT_TRUE(j["pass"].get<bool>());
}

TEST(cli, dims_split) {
    auto r = run({"dims", "--da", "2", "--db", "2"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    ASSERT_EQ(j["values"]["dim_relation"]["residual"], 0.0);
    ASSERT_EQ(j["values"]["dim_relation"]["lhs"], 40);
}

TEST(cli, usage_errors) {
    ASSERT_EQ(run({"dims", "--d", "1"}).code, 2);
    ASSERT_EQ(run({"dims"}).code, 2);
    ASSERT_EQ(run({"dims", "--d", "2", "--da", "2", "--db", "2"}).code, 2);
    ASSERT_EQ(run({"minerr", "--d", "2", "--eta1", "1.5"}).code, 2);
    ASSERT_EQ(run({"minerr", "--d", "4", "--locc"}).code, 2);
    ASSERT_EQ(run({"unamb", "--da", "1", "--db", "3"}).code, 2);
    ASSERT_EQ(run({"dims", "--d", "3", "--json", "--csv"}).code, 2);
    ASSERT_EQ(run({"frobnicate"}).code, 2);
    ASSERT_EQ(run({}).code, 2);
    ASSERT_EQ(run({"minerr", "--d", "two"}).code, 2);
    ASSERT_FALSE(run({"dims", "--d", "1"}).err.empty());
}

TEST(cli, minerr) {
    auto r = run({"minerr", "--d", "2", "--eta1", "0.5", "--baseline"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_NEAR(j["values"]["p_max"].get<double>(), 0.6443376, 1e-7);
    ASSERT_EQ(j["values"]["baseline_no_reference"], 0.5);
    auto c = check(j, "minerr.pmax_closed_form_vs_eigen_sum[d=2]");
    ASSERT_FALSE(c.is_null());
    ASSERT_LT(c["diff"].get<double>(), 1e-9);
}

TEST(cli, minerr_locc) {
    auto r = run({"minerr", "--da", "2", "--db", "2", "--eta1", "0.3", "--locc"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    auto c = check(j, "minerr.locc_trace_vs_global[2x2][eta1=0.3]");
    ASSERT_FALSE(c.is_null());
    ASSERT_LT(c["diff"].get<double>(), 1e-9);
    ASSERT_TRUE(check(j, "minerr.protocol_equals_separable_povm[2x2][eta1=0.3]")["pass"].get<bool>());
}

TEST(cli, minerr_simulate) {
    auto r = run({"minerr", "--da", "2", "--db", "2", "--eta1", "0.5", "--locc", "--simulate", "--n", "100000",
                  "--seed", "7", "--workers", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto mc = json::parse(r.out)["monte_carlo"];
    ASSERT_NEAR(mc["p_hat"].get<double>(), 0.7165064, 3 * mc["std_error"].get<double>());
    ASSERT_EQ(mc["n_trials"], 100000);
}

TEST(cli, unamb) {
    auto r = run({"unamb", "--da", "2", "--db", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto v = json::parse(r.out)["values"];
    ASSERT_DOUBLE_EQ(v["p_max_global"].get<double>(), 0.25);
    ASSERT_DOUBLE_EQ(v["p_max_locc"].get<double>(), 0.2375);
    ASSERT_DOUBLE_EQ(v["gap"].get<double>(), 0.0125);

    auto r23 = run({"unamb", "--da", "2", "--db", "3"});
    auto v23 = json::parse(r23.out)["values"];
    ASSERT_NEAR(v23["p_max_global"].get<double>(), 5.0 / 18, 1e-12);
    ASSERT_NEAR(v23["p_max_locc"].get<double>(), 11.0 / 42, 1e-12);
}

TEST(cli, unamb_simulate) {
    auto r = run({"unamb", "--da", "2", "--db", "2", "--simulate", "--n", "100000", "--seed", "7", "--workers", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto mc = json::parse(r.out)["monte_carlo"];
    ASSERT_EQ(mc["errors"], 0);
    ASSERT_NEAR(mc["p_hat"].get<double>(), 0.2375, 3 * mc["std_error"].get<double>());
}

TEST(cli, verify_all_with_injected_fault) {
    auto r = run({"verify-all", "--alpha", "0.7"});
    ASSERT_EQ(r.code, 1);
    auto j = json::parse(r.out);
    ASSERT_FALSE(j["pass"].get<bool>());
    auto c = check(j, "unamb.separable_coefficients_feasible");
    ASSERT_FALSE(c["pass"].get<bool>());
    ASSERT_NE(c["detail"].get<std::string>().find("alpha1 = 0.7"), std::string::npos);
    ASSERT_NE(r.err.find("unamb.separable_coefficients_feasible"), std::string::npos);
    std::size_t failures = 0;
    for (const auto &k : j["checks"]) {
        failures += !k["pass"].get<bool>();
    }
    ASSERT_EQ(failures, 1);
}

TEST(cli, json_schema) {
    auto j = json::parse(run({"minerr", "--d", "3", "--eta1", "0.2"}).out);
    for (const char *key : {"command", "generated_at", "config", "values", "checks", "pass"}) {
        ASSERT_TRUE(j.contains(key)) << key;
    }
    ASSERT_EQ(j["config"]["eta1"], 0.2);
    ASSERT_FALSE(j["config"].contains("workers"));
    for (const auto &c : j["checks"]) {
        for (const char *key : {"name", "analytic", "oracle", "diff", "tol", "relation", "pass"}) {
            ASSERT_TRUE(c.contains(key)) << key;
        }
        ASSERT_TRUE(c["relation"] == "eq" || c["relation"] == "gt");
    }
}

TEST(cli, csv) {
    auto r = run({"dims", "--d", "2", "--csv"});
    ASSERT_EQ(r.code, 0);
    ASSERT_EQ(r.out.rfind("name,analytic,oracle,diff,tol,relation,pass,detail\n", 0), 0);
    ASSERT_NE(r.out.find("dims.sum_is_d_cubed[d=2],8,8,0,0,eq,true"), std::string::npos);
}

TEST(cli, out_file) {
    std::string path = testing::TempDir() + "qident_cli_out.json";
    auto r = run({"dims", "--d", "2", "--out", path});
    ASSERT_EQ(r.code, 0);
    ASSERT_TRUE(r.out.empty());
    std::ifstream f(path);
    auto j = json::parse(f);
    ASSERT_EQ(j["command"], "dims");
    std::remove(path.c_str());
}

TEST(cli, deterministic_across_workers) {
    ExperimentConfig c;
    c.command = "unamb";
    c.d_a = 2;
    c.d_b = 2;
    c.simulate = true;
    c.n_trials = 4000;
    c.seed = 5;
    c.workers = 1;
    auto a = cmd_unamb(c).to_json(false).dump();
    c.workers = 4;
    auto b = cmd_unamb(c).to_json(false).dump();
    ASSERT_EQ(a, b);
}

TEST(cli, round12) {
    ASSERT_EQ(round12(0.1 + 0.2), 0.3);
    ASSERT_EQ(round12(0.0), 0.0);
    ASSERT_EQ(round12(123456789.123456789), 123456789.123);
}

TEST(report, pass_and_failures) {
    Report r;
    r.add_equal("a", 1.0, 1.0 + 1e-12, 1e-9);
    r.add_greater("b", 0.3, 0.2, 0.05);
    ASSERT_TRUE(r.pass());
    r.add_greater("c", 0.3, 0.29, 0.05);
    r.add_flag("d", false, "boom");
    ASSERT_FALSE(r.pass());
    ASSERT_EQ(r.failures(), (std::vector<std::string>{"c", "d"}));
    ASSERT_FALSE(r.to_json(false).contains("generated_at"));
}
