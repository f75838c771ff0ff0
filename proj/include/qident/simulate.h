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

#ifndef QIDENT_SIMULATE_H
#define QIDENT_SIMULATE_H

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qident/povm.h"
#include "qident/protocol.h"

namespace qident {

using RandomStream = std::mt19937_64;

/// Child stream for one trial of a batch. Depends only on (base_seed, index),
/// so batch results do not depend on how trials are split across workers.
RandomStream trial_stream(std::uint64_t base_seed, std::uint64_t index);

/// Uniform (unitarily invariant) pure state on C^d: a standard complex
/// Gaussian vector, normalized.
StateVector haar_state(std::size_t d, RandomStream &rng);

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal moved into Q.
DenseOperator haar_unitary(std::size_t d, RandomStream &rng);

class HaarSampler {
   public:
    explicit HaarSampler(std::uint64_t seed) : rng_(seed) {
    }
    StateVector state(std::size_t d) { return haar_state(d, rng_); }
    DenseOperator unitary(std::size_t d) { return haar_unitary(d, rng_); }
    RandomStream &stream() { return rng_; }

   private:
    RandomStream rng_;
};

/// Raised when a trial cannot be completed consistently: outcome
/// probabilities that do not sum to one, or a zero-norm post-measurement state.
class TrialAborted : public std::runtime_error {
   public:
    TrialAborted(const std::string &what, std::uint64_t trial_index = 0)
        : std::runtime_error(what), trial_index_(trial_index) {
    }
    std::uint64_t trial_index() const { return trial_index_; }

   private:
    std::uint64_t trial_index_;
};

struct TranscriptEntry {
    Party party = Party::whole;
    std::string outcome;
    bool operator==(const TranscriptEntry &) const = default;
};

struct TrialRecord {
    int true_label = 0;
    int declared_label = 0;
    std::vector<TranscriptEntry> transcript;
    std::uint64_t base_seed = 0;
    std::uint64_t trial_index = 0;
};

/// Samples mu ~ priors, Haar phi1, phi2 on C^d, prepares
/// phi_mu x phi1 x phi2 and measures `povm` on it.
TrialRecord run_trial_global(const Povm &povm, std::size_t d, const Priors &priors, RandomStream &rng);

/// Same preparation on C^{d_a d_b}; the state is then regrouped party-major
/// and the protocol tree is executed with Kraus updates.
TrialRecord run_trial_locc(const LoccProtocol &protocol, const Priors &priors, RandomStream &rng);

struct GlobalTrialSpec {
    Povm povm;
    std::size_t d = 2;
    Priors priors{0.5};
};

struct LoccTrialSpec {
    std::shared_ptr<const LoccProtocol> protocol;
    Priors priors{0.5};
};

using TrialSpec = std::variant<GlobalTrialSpec, LoccTrialSpec>;

struct BatchStats {
    std::uint64_t n_trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t errors = 0;
    std::uint64_t inconclusive = 0;
    double p_hat = 0;
    double std_error = 0;
    std::optional<double> target;

    /// |p_hat - target| <= k * std_error. False without a target.
    bool within(double k) const;
    bool operator==(const BatchStats &) const = default;
};

BatchStats summarize(std::uint64_t successes, std::uint64_t errors, std::uint64_t inconclusive,
                     std::optional<double> target = std::nullopt);

/// Runs n trials with per-trial streams trial_stream(base_seed, i) over
/// `workers` threads. A failed trial is rethrown as TrialAborted carrying the
/// lowest failing trial index.
BatchStats run_batch(const TrialSpec &spec, std::uint64_t n, std::uint64_t base_seed, unsigned workers = 1,
                     std::optional<double> target = std::nullopt);

/// Largest probability, over n_pairs Haar-sampled reference pairs, that the
/// label-1 element fires on input phi2 or the label-2 element on input phi1.
/// Zero for a POVM meeting the no-error conditions.
double max_wrong_acceptance(const Povm &povm, std::size_t d, std::uint64_t n_pairs, std::uint64_t seed);

/// Exact mean success probability of a labeled POVM on (C^d)^{x3}:
/// sum_mu eta_mu tr[E_mu S(0 mu)] / (d1 d2).
double exact_success(const Povm &povm, std::size_t d, const Priors &priors);
/// Exact probability of declaring the wrong reference.
double exact_error(const Povm &povm, std::size_t d, const Priors &priors);

}  // namespace qident

#endif
