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

#ifndef QIDENT_CLI_H
#define QIDENT_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qident::cli {

enum class OutputFormat { json, csv };

struct ExperimentConfig {
    std::string command;
    std::optional<std::size_t> d;
    std::optional<std::size_t> d_a, d_b;
    double eta1 = 0.5;
    bool locc = false;
    bool simulate = false;
    bool baseline = false;
    std::uint64_t n_trials = 100000;
    std::uint64_t seed = 7;
    /// Execution only; not echoed into reports.
    unsigned workers = 1;
    /// verify-all: replaces alpha1 of the optimal separable coefficients.
    std::optional<double> inject_alpha;
    OutputFormat format = OutputFormat::json;
    std::string out_path;

    /// Local dimension of each system: d, or d_a * d_b for a split.
    std::size_t total_d() const;
    bool split() const { return d_a.has_value() && d_b.has_value(); }
};

/// Thrown for invalid configurations; maps to exit code 2.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Relation { equal, greater };

/// One analytic/oracle comparison. For Relation::equal the check passes iff
/// diff <= tol; for Relation::greater iff analytic - oracle > tol.
struct Check {
    std::string name;
    double analytic = 0;
    double oracle = 0;
    double diff = 0;
    double tol = 0;
    Relation relation = Relation::equal;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    std::vector<Check> checks;
    std::optional<nlohmann::ordered_json> monte_carlo;

    void add_equal(std::string name, double analytic, double oracle, double tol, std::string detail = "");
    void add_greater(std::string name, double larger, double smaller, double margin, std::string detail = "");
    void add_flag(std::string name, bool ok, std::string detail);

    bool pass() const;
    std::vector<std::string> failures() const;
    /// Floats rounded to 12 significant digits. `timestamp` adds a
    /// generated_at field, which is outside the determinism contract.
    nlohmann::ordered_json to_json(bool timestamp = true) const;
    /// Header plus one row per check.
    std::string to_csv() const;
};

/// Rounds to 12 significant digits.
double round12(double x);

Report cmd_dims(const ExperimentConfig &config);
Report cmd_minerr(const ExperimentConfig &config);
Report cmd_unamb(const ExperimentConfig &config);
Report cmd_verify_all(const ExperimentConfig &config);

/// Parses argv, runs the command, writes the report. Returns the process exit
/// code: 0 all checks passed, 1 a check failed, 2 usage error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qident::cli

#endif
