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

#include "qident/povm.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qident {

Priors::Priors(double eta1) : Priors(eta1, 1.0 - eta1) {
}

Priors::Priors(double eta1, double eta2) : eta1_(eta1), eta2_(eta2) {
    if (!(eta1 >= 0.0 && eta2 >= 0.0) || std::abs(eta1 + eta2 - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "invalid priors (" << eta1 << ", " << eta2 << ")";
        throw std::invalid_argument(msg.str());
    }
}

const DenseOperator *Povm::find(int label) const {
    for (const auto &e : elements) {
        if (e.label == label) {
            return &e.op;
        }
    }
    return nullptr;
}

const DenseOperator &Povm::at(int label) const {
    const DenseOperator *op = find(label);
    if (op == nullptr) {
        throw std::out_of_range("POVM has no element with label " + std::to_string(label));
    }
    return *op;
}

std::optional<std::string> povm_violation(const Povm &povm, double tol) {
    if (povm.elements.empty()) {
        return "POVM has no elements";
    }
    const auto n = povm.elements.front().op.rows();
    DenseOperator sum = DenseOperator::Zero(n, n);
    for (const auto &e : povm.elements) {
        if (e.op.rows() != n || e.op.cols() != n) {
            return "POVM elements have inconsistent shapes";
        }
        if (!is_hermitian(e.op, tol)) {
            return "element " + std::to_string(e.label) + " is not Hermitian";
        }
        double lo = min_eigenvalue(e.op);
        if (lo < -tol) {
            std::ostringstream msg;
            msg << "element " << e.label << " has negative eigenvalue " << lo;
            return msg.str();
        }
        sum += e.op;
    }
    DenseOperator target = povm.support.size() == 0 ? identity(n) : povm.support;
    double gap = max_abs_diff(sum, target);
    if (gap > tol) {
        std::ostringstream msg;
        msg << "elements do not sum to the support (max deviation " << gap << ")";
        return msg.str();
    }
    return std::nullopt;
}

void validate_povm(const Povm &povm, double tol) {
    if (auto v = povm_violation(povm, tol)) {
        throw std::invalid_argument("invalid POVM: " + *v);
    }
}

}  // namespace qident
