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

#include <algorithm>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "qident/simulate.h"
#include "qident/symmetry.h"

namespace qident {

namespace {

constexpr double kProbabilitySumTol = 1e-8;
constexpr double kZeroBranch = 1e-14;

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

int sample_reference(const Priors &priors, RandomStream &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) < priors.eta1() ? 1 : 2;
}

/// Inverse CDF over the ordered outcome list.
std::size_t sample_index(const std::vector<double> &probs, double total, RandomStream &rng) {
    std::uniform_real_distribution<double> u(0.0, total);
    double x = u(rng);
    double cum = 0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] <= 0) {
            continue;
        }
        cum += probs[k];
        last_positive = k;
        if (x < cum) {
            return k;
        }
    }
    return last_positive;
}

void check_total(double total, const char *where) {
    if (std::abs(total - 1.0) > kProbabilitySumTol) {
        std::ostringstream msg;
        msg << where << ": outcome probabilities sum to " << total << ", not 1";
        throw TrialAborted(msg.str());
    }
}

void score(const TrialRecord &r, std::uint64_t &success, std::uint64_t &error, std::uint64_t &inconclusive) {
    if (r.declared_label == 0) {
        ++inconclusive;
    } else if (r.declared_label == r.true_label) {
        ++success;
    } else {
        ++error;
    }
}

}  // namespace

TrialRecord run_trial_global(const Povm &povm, std::size_t d, const Priors &priors, RandomStream &rng) {
    TrialRecord rec;
    rec.true_label = sample_reference(priors, rng);
    StateVector phi1 = haar_state(d, rng);
    StateVector phi2 = haar_state(d, rng);
    StateVector psi = kron(kron(rec.true_label == 1 ? phi1 : phi2, phi1), phi2);
    if (static_cast<Eigen::Index>(povm.dim()) != psi.size()) {
        throw std::invalid_argument("run_trial_global: POVM does not act on (C^d)^{x3}");
    }

    std::vector<double> probs;
    double total = 0;
    for (const auto &e : povm.elements) {
        double p = psi.dot(e.op * psi).real();
        probs.push_back(p);
        total += std::max(p, 0.0);
    }
    check_total(total, "run_trial_global");
    std::size_t k = sample_index(probs, total, rng);
    rec.declared_label = povm.elements[k].label;
    rec.transcript.push_back({Party::whole, std::to_string(rec.declared_label)});
    return rec;
}

TrialRecord run_trial_locc(const LoccProtocol &protocol, const Priors &priors, RandomStream &rng) {
    const auto &tk = protocol.toolkit();
    const auto na = static_cast<Eigen::Index>(tk.alice->dim());
    const auto nb = static_cast<Eigen::Index>(tk.bob->dim());
    const std::size_t d = protocol.d_a() * protocol.d_b();

    TrialRecord rec;
    rec.true_label = sample_reference(priors, rng);
    StateVector phi1 = haar_state(d, rng);
    StateVector phi2 = haar_state(d, rng);
    StateVector psi = kron(kron(rec.true_label == 1 ? phi1 : phi2, phi1), phi2);
    StateVector party_major = tk.regroup * psi;
    // Row index: Alice's triple; column index: Bob's triple.
    DenseOperator state = Eigen::Map<const RowMajor>(party_major.data(), na, nb);

    const ProtocolNode *node = &protocol.root();
    std::vector<DenseOperator> post;
    std::vector<double> probs;
    while (true) {
        post.clear();
        probs.clear();
        double total = 0;
        for (const auto &b : node->branches) {
            DenseOperator next = node->party == Party::alice ? DenseOperator(b.kraus * state)
                                                             : DenseOperator(state * b.kraus.transpose());
            double p = next.squaredNorm();
            probs.push_back(p);
            total += p;
            post.push_back(std::move(next));
        }
        check_total(total, "run_trial_locc");
        std::size_t k = sample_index(probs, total, rng);
        const ProtocolBranch &b = node->branches[k];
        if (probs[k] < kZeroBranch) {
            throw TrialAborted("run_trial_locc: sampled branch '" + b.outcome + "' has zero norm");
        }
        rec.transcript.push_back({node->party, b.outcome});
        state = post[k] / std::sqrt(probs[k]);
        if (b.terminal()) {
            rec.declared_label = b.final_label;
            return rec;
        }
        node = b.next.get();
    }
}

bool BatchStats::within(double k) const {
    return target.has_value() && std::abs(p_hat - *target) <= k * std_error;
}

BatchStats summarize(std::uint64_t successes, std::uint64_t errors, std::uint64_t inconclusive,
                     std::optional<double> target) {
    BatchStats s;
    s.successes = successes;
    s.errors = errors;
    s.inconclusive = inconclusive;
    s.n_trials = successes + errors + inconclusive;
    s.target = target;
    if (s.n_trials > 0) {
        const double n = static_cast<double>(s.n_trials);
        s.p_hat = static_cast<double>(successes) / n;
        s.std_error = std::sqrt(s.p_hat * (1.0 - s.p_hat) / n);
    }
    return s;
}

BatchStats run_batch(const TrialSpec &spec, std::uint64_t n, std::uint64_t base_seed, unsigned workers,
                     std::optional<double> target) {
    if (n == 0) {
        throw std::invalid_argument("run_batch: need at least one trial");
    }
    if (const auto *locc = std::get_if<LoccTrialSpec>(&spec); locc != nullptr && locc->protocol == nullptr) {
        throw std::invalid_argument("run_batch: missing protocol");
    }
    workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, n)));

    struct Tally {
        std::uint64_t success = 0, error = 0, inconclusive = 0;
        std::optional<std::uint64_t> failed_at;
        std::string failure;
    };
    std::vector<Tally> tallies(workers);

    auto work = [&](unsigned w) {
        Tally &t = tallies[w];
        const std::uint64_t begin = n * w / workers;
        const std::uint64_t end = n * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomStream rng = trial_stream(base_seed, i);
            try {
                TrialRecord r = std::visit(
                    [&](const auto &s) {
                        using T = std::decay_t<decltype(s)>;
                        if constexpr (std::is_same_v<T, GlobalTrialSpec>) {
                            return run_trial_global(s.povm, s.d, s.priors, rng);
                        } else {
                            return run_trial_locc(*s.protocol, s.priors, rng);
                        }
                    },
                    spec);
                score(r, t.success, t.error, t.inconclusive);
            } catch (const std::exception &e) {
                t.failed_at = i;
                t.failure = e.what();
                return;
            }
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    std::uint64_t success = 0, error = 0, inconclusive = 0;
    for (const auto &t : tallies) {
        // Chunks are ordered by trial index, so the first failing chunk holds
        // the lowest failing index.
        if (t.failed_at) {
            std::ostringstream msg;
            msg << "trial " << *t.failed_at << " aborted: " << t.failure;
            throw TrialAborted(msg.str(), *t.failed_at);
        }
        success += t.success;
        error += t.error;
        inconclusive += t.inconclusive;
    }
    return summarize(success, error, inconclusive, target);
}

double max_wrong_acceptance(const Povm &povm, std::size_t d, std::uint64_t n_pairs, std::uint64_t seed) {
    const DenseOperator *e1 = povm.find(1);
    const DenseOperator *e2 = povm.find(2);
    double worst = 0;
    for (std::uint64_t i = 0; i < n_pairs; ++i) {
        RandomStream rng = trial_stream(seed, i);
        StateVector phi1 = haar_state(d, rng);
        StateVector phi2 = haar_state(d, rng);
        StateVector refs = kron(phi1, phi2);
        if (e1 != nullptr) {
            StateVector psi = kron(phi2, refs);
            worst = std::max(worst, psi.dot(*e1 * psi).real());
        }
        if (e2 != nullptr) {
            StateVector psi = kron(phi1, refs);
            worst = std::max(worst, psi.dot(*e2 * psi).real());
        }
    }
    return worst;
}

double exact_success(const Povm &povm, std::size_t d, const Priors &priors) {
    const auto tk = cached_toolkit(d);
    auto t = dimension_table(static_cast<std::int64_t>(d));
    const double norm = static_cast<double>(t.d1 * t.d2);
    double p = 0;
    if (const auto *e1 = povm.find(1)) {
        p += priors.eta1() * ((*e1) * tk->s01).trace().real();
    }
    if (const auto *e2 = povm.find(2)) {
        p += priors.eta2() * ((*e2) * tk->s02).trace().real();
    }
    return p / norm;
}

double exact_error(const Povm &povm, std::size_t d, const Priors &priors) {
    const auto tk = cached_toolkit(d);
    auto t = dimension_table(static_cast<std::int64_t>(d));
    const double norm = static_cast<double>(t.d1 * t.d2);
    double p = 0;
    if (const auto *e2 = povm.find(2)) {
        p += priors.eta1() * ((*e2) * tk->s01).trace().real();
    }
    if (const auto *e1 = povm.find(1)) {
        p += priors.eta2() * ((*e1) * tk->s02).trace().real();
    }
    return p / norm;
}

}  // namespace qident
