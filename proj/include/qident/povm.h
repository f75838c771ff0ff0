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

#ifndef QIDENT_POVM_H
#define QIDENT_POVM_H

#include <optional>
#include <string>
#include <vector>

#include "qident/linalg.h"

namespace qident {

/// Prior probabilities of the two reference states.
class Priors {
   public:
    /// eta2 = 1 - eta1. Throws std::invalid_argument unless eta1 in [0, 1].
    explicit Priors(double eta1);
    Priors(double eta1, double eta2);

    double eta1() const { return eta1_; }
    double eta2() const { return eta2_; }
    Priors swapped() const { return Priors(eta2_, eta1_); }

   private:
    double eta1_;
    double eta2_;
};

struct PovmElement {
    int label = 0;
    DenseOperator op;
};

/// Labeled measurement. Identification labels: 1 and 2 name the reference
/// states and 0 is the inconclusive outcome.
struct Povm {
    std::vector<PovmElement> elements;
    /// Projector the elements sum to. Empty means the identity.
    DenseOperator support;

    std::size_t dim() const { return elements.empty() ? support.rows() : elements.front().op.rows(); }
    /// Element with the given label, or nullptr.
    const DenseOperator *find(int label) const;
    const DenseOperator &at(int label) const;
};

/// Empty when the POVM is valid, otherwise a description of the first
/// violated invariant (PSD to -1e-10, completeness to 1e-10).
std::optional<std::string> povm_violation(const Povm &povm, double tol = 1e-10);
void validate_povm(const Povm &povm, double tol = 1e-10);

}  // namespace qident

#endif
