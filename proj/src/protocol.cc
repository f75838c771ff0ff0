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

#include "qident/protocol.h"

#include <functional>
#include <map>
#include <stdexcept>

namespace qident {

ProtocolBranch branch_to(std::string outcome, DenseOperator element, NodePtr next) {
    if (next == nullptr) {
        throw std::invalid_argument("branch_to: missing next node");
    }
    ProtocolBranch b;
    b.outcome = std::move(outcome);
    b.kraus = psd_sqrt(element);
    b.element = std::move(element);
    b.next = std::move(next);
    return b;
}

ProtocolBranch branch_final(std::string outcome, DenseOperator element, int label) {
    if (label < 0 || label > 2) {
        throw std::invalid_argument("branch_final: label must be 0, 1 or 2");
    }
    ProtocolBranch b;
    b.outcome = std::move(outcome);
    b.kraus = psd_sqrt(element);
    b.element = std::move(element);
    b.final_label = label;
    return b;
}

NodePtr make_node(Party party, DenseOperator support, std::vector<ProtocolBranch> branches) {
    if (party == Party::whole) {
        throw std::invalid_argument("make_node: the acting party must be alice or bob");
    }
    if (branches.empty()) {
        throw std::invalid_argument("make_node: a measurement needs at least one outcome");
    }
    Povm check;
    check.support = support;
    for (const auto &b : branches) {
        check.elements.push_back({b.final_label, b.element});
    }
    if (auto v = povm_violation(check)) {
        throw std::invalid_argument("make_node: " + *v);
    }
    auto node = std::make_shared<ProtocolNode>();
    node->party = party;
    node->support = std::move(support);
    node->branches = std::move(branches);
    return node;
}

LoccProtocol::LoccProtocol(std::size_t d_a, std::size_t d_b, NodePtr root, std::string name)
    : toolkit_(bipartite_toolkit(d_a, d_b)), root_(std::move(root)), name_(std::move(name)) {
    if (root_ == nullptr) {
        throw std::invalid_argument("LoccProtocol: missing root");
    }
    const std::size_t na = toolkit_.alice->dim();
    const std::size_t nb = toolkit_.bob->dim();
    std::function<void(const ProtocolNode &)> check = [&](const ProtocolNode &node) {
        std::size_t want = node.party == Party::alice ? na : nb;
        if (static_cast<std::size_t>(node.support.rows()) != want) {
            throw std::invalid_argument("LoccProtocol: node acts on a space of the wrong dimension");
        }
        for (const auto &b : node.branches) {
            if (b.next) {
                check(*b.next);
            }
        }
    };
    check(*root_);
}

std::size_t LoccProtocol::leaf_count() const {
    std::function<std::size_t(const ProtocolNode &)> count = [&](const ProtocolNode &node) {
        std::size_t n = 0;
        for (const auto &b : node.branches) {
            n += b.next ? count(*b.next) : 1;
        }
        return n;
    };
    return count(*root_);
}

Povm flatten(const LoccProtocol &protocol) {
    const auto &tk = protocol.toolkit();
    const std::size_t na = tk.alice->dim();
    const std::size_t nb = tk.bob->dim();
    const DenseOperator id_a = identity(na);
    const DenseOperator id_b = identity(nb);
    const std::size_t n = na * nb;

    std::map<int, DenseOperator> acc;
    std::function<void(const ProtocolNode &, const DenseOperator &)> walk = [&](const ProtocolNode &node,
                                                                                 const DenseOperator &path) {
        for (const auto &b : node.branches) {
            DenseOperator k = node.party == Party::alice ? kron(b.kraus, id_b) : kron(id_a, b.kraus);
            DenseOperator next_path = k * path;
            if (b.next) {
                walk(*b.next, next_path);
                continue;
            }
            auto [it, inserted] = acc.try_emplace(b.final_label, DenseOperator::Zero(n, n));
            it->second.noalias() += next_path.adjoint() * next_path;
        }
    };
    walk(protocol.root(), identity(n));

    Povm out;
    for (auto &[label, op] : acc) {
        out.elements.push_back({label, tk.to_system_major(op)});
    }
    return out;
}

}  // namespace qident
