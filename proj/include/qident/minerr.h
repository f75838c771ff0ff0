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

#ifndef QIDENT_MINERR_H
#define QIDENT_MINERR_H

#include <utility>

#include "qident/povm.h"
#include "qident/protocol.h"
#include "qident/symmetry.h"

namespace qident::minerr {

/// Delta = eta1 S(01) - eta2 S(02).
DenseOperator build_delta(const SymmetryToolkit &tk, const Priors &priors);
DenseOperator build_delta(std::size_t d, const Priors &priors);

/// (1/2)(eta1 - eta2 + D + (eta1 - eta2) A): the same operator assembled from
/// D and A, used as a cross-check of build_delta.
DenseOperator delta_from_d_and_a(const SymmetryToolkit &tk, const Priors &priors);

/// Closed-form eigenvalues of Delta on the mixed-symmetry subspace,
/// (1/2)(eta1 - eta2 +- sqrt(1 - eta1 eta2)).
std::pair<double, double> lambda_pm(const Priors &priors);

/// Closed-form spectrum of Delta, descending: eta1 - eta2 with multiplicity
/// dim V_S, 0 with multiplicity dim V_A, lambda+ and lambda- each with
/// multiplicity dim V_M / 2.
std::vector<double> expected_delta_spectrum(std::size_t d, const Priors &priors);

/// Closed-form optimal mean success probability of the global measurement.
double pmax_global(std::size_t d, const Priors &priors);

/// eta2 + (sum of positive eigenvalues of Delta) / (d1 d2), from an
/// eigendecomposition of the assembled Delta.
double pmax_global_eigen(std::size_t d, const Priors &priors);

/// Optimal global POVM {1: P+(Delta), 2: 1 - P+}. For eta1 in {0, 1} the
/// POVM is the trivial always-guess measurement.
Povm global_povm(std::size_t d, const Priors &priors);

/// eta2 + tr[E1 Delta] / (d1 d2). Requires labels exactly {1, 2}.
double mean_success(const Povm &povm, std::size_t d, const Priors &priors);

/// tr[E1 Delta] for the label-1 element.
double trace_with_delta(const Povm &povm, std::size_t d, const Priors &priors);

struct MinErrSolution {
    Priors priors{0.5};
    std::size_t d = 0;
    DenseOperator delta;
    double lambda_plus = 0;
    double lambda_minus = 0;
    double p_max = 0;
    Povm povm;
};

MinErrSolution solve_global(std::size_t d, const Priors &priors);

/// Local ingredients of the separable optimal element for one party, all on
/// (C^{d_p})^{x3}.
struct LocalParts {
    /// Positive / negative eigenprojectors of the local Delta inside V_M.
    DenseOperator p_plus, p_minus;
    /// Positive / negative eigenprojectors of the rotated Y2 inside V_M.
    DenseOperator q_plus, q_minus;
};

struct LoccConstruction {
    Priors priors{0.5};
    /// Rotation angle with cos 2theta = (eta1-eta2)/(2 sqrt(1-eta1 eta2)),
    /// sin 2theta = sqrt(3)/(2 sqrt(1-eta1 eta2)).
    double theta = 0;
    LocalParts alice, bob;
    BipartiteToolkit toolkit;
    /// Separable element E1^L on the global system-major space.
    DenseOperator e1;
};

/// Requires eta1 <= eta2 and 0 < eta1.
LoccConstruction build_locc_construction(std::size_t d_a, std::size_t d_b, const Priors &priors);

/// {1: E1^L, 2: 1 - E1^L}. Rejects eta1 > eta2.
Povm build_locc_povm_element(std::size_t d_a, std::size_t d_b, const Priors &priors);

/// Same for any priors. For eta1 > eta2 the problem is mirrored: the element
/// is built for swapped priors, systems 1 and 2 are exchanged and labels
/// 1 <-> 2 are swapped.
Povm locc_povm(std::size_t d_a, std::size_t d_b, const Priors &priors);

/// Executable LOCC protocol whose effective POVM is locc_povm(d_a, d_b, priors).
LoccProtocol minerr_locc_protocol(std::size_t d_a, std::size_t d_b, const Priors &priors);

/// max(eta1, eta2): success probability without any reference copies.
double baseline_no_reference(const Priors &priors);

}  // namespace qident::minerr

#endif
