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

#ifndef QIDENT_UNAMBIGUOUS_H
#define QIDENT_UNAMBIGUOUS_H

#include <optional>
#include <string>

#include "qident/povm.h"
#include "qident/protocol.h"
#include "qident/symmetry.h"

/// Unambiguous identification at equal priors. Outcome 0 is inconclusive.
namespace qident::unamb {

enum class PovmKind { global, separable };

struct UnambPovm {
    DenseOperator e1, e2, e0;
    PovmKind kind = PovmKind::global;
    /// Local dimensions for the separable kind; d_a = d, d_b = 1 for global.
    std::size_t d_a = 0, d_b = 1;

    Povm to_povm() const;
};

/// Coefficients of the unitary-invariant, no-error separable family
///   E1 = a1 S3 x M3 A(02) + a2 A3 x M3 S(02) + a3 M3 S(02) x A3
///      + a4 M3 A(02) x S3 + b1 M3 S(02) x M3 A(02) + b2 M3 A(02) x M3 S(02).
struct SeparableCoeffs {
    double alpha1 = 0, alpha2 = 0, alpha3 = 0, alpha4 = 0;
    double beta1 = 0, beta2 = 0;

    double beta() const { return 0.5 * (beta1 + beta2); }
    double delta() const { return 0.5 * (beta1 - beta2); }

    /// alpha_i = 2/3, beta_i = 1/2.
    static SeparableCoeffs optimal();
};

struct BetaFeasibility {
    /// Largest eigenvalue of the V_M x V_M block of E1 + E2:
    /// (5/4) beta + sqrt((9/16) beta^2 + delta^2).
    double gamma_plus = 0;
    double gamma_minus = 0;
    bool feasible = false;
};

BetaFeasibility beta_feasibility(double beta1, double beta2);

/// Largest eigenvalue of the explicitly assembled V_M x V_M block operator
///   beta1 (S(02) A(02) + S(01) A(01)) + beta2 (A(02) S(02) + A(01) S(01)),
/// with Alice's factor first, restricted by M3 x M3.
double x_block_max_eigenvalue(std::size_t d_a, std::size_t d_b, double beta1, double beta2);

/// Empty when the coefficients are feasible; otherwise names the violated
/// constraint and its value.
std::optional<std::string> coeffs_violation(const SeparableCoeffs &c);

/// Global optimum: E1 = (2/3) M3 A(02), E2 = (2/3) M3 A(01),
/// E0 = (1/3) M3 (1 + 2A) + S3 + A3.
UnambPovm global_unamb_povm(std::size_t d);

/// Separable family member on (C^{d_a d_b})^{x3}. Throws std::invalid_argument
/// naming the violated constraint if the coefficients are infeasible.
UnambPovm separable_unamb_povm(std::size_t d_a, std::size_t d_b, const SeparableCoeffs &coeffs);

/// Same without the feasibility gate; E0 may fail to be PSD.
UnambPovm separable_unamb_povm_unchecked(std::size_t d_a, std::size_t d_b, const SeparableCoeffs &coeffs);

/// Max of |E1 S(02)| and |E2 S(01)| entrywise.
double no_error_residual(const UnambPovm &povm);

/// (tr[E1 S(01)] + tr[E2 S(02)]) / (2 d1 d2). Rejects POVMs whose no-error
/// residual exceeds 1e-8.
double unamb_success(const UnambPovm &povm);

/// (d - 1) / (3 d).
double pmax_unamb_global(std::size_t d);

/// (11 d_a^2 d_b^2 + d_a^2 + d_b^2 - 13) / (36 d_a d_b (d_a d_b + 1)).
double pmax_unamb_locc(std::size_t d_a, std::size_t d_b);

/// tr[E1^L S(01)] of the separable family from the subspace dimensions:
/// (3/8)(a1 S^a M^b + a2 A^a M^b + a3 M^a A^b + a4 M^a S^b) + (3/32)(b1 + b2) M^a M^b.
double separable_trace_closed_form(std::size_t d_a, std::size_t d_b, const SeparableCoeffs &coeffs);

/// Local POVMs used inside the LOCC protocol, on (C^d)^{x3}.
struct LocalSteps {
    // After partner found S3: {e1, e2, e0}; after A3: {e1', e2', e0'}.
    DenseOperator e1, e2, e0;
    DenseOperator e1p, e2p, e0p;
    // Both mixed, first mover: e_{a1 a2}.
    DenseOperator e11, e12, e21, e22;
    // Second mover: {f1, f2} if a1 = 1, {f1', f2'} otherwise.
    DenseOperator f1, f2, f1p, f2p;
};

LocalSteps local_steps(const SymmetryToolkit &tk);

/// Executable LOCC protocol realizing separable_unamb_povm(optimal()).
/// `alice_first` picks who measures e_{a1 a2} when both parties are mixed.
LoccProtocol unamb_locc_protocol(std::size_t d_a, std::size_t d_b, bool alice_first = true);

/// 0: no measurement identifies anything unambiguously without references.
double baseline_no_reference();

}  // namespace qident::unamb

#endif
