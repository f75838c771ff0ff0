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

#ifndef QIDENT_PROTOCOL_H
#define QIDENT_PROTOCOL_H

#include <memory>
#include <string>
#include <vector>

#include "qident/povm.h"
#include "qident/symmetry.h"

namespace qident {

struct ProtocolNode;
using NodePtr = std::shared_ptr<const ProtocolNode>;

/// One outcome of a local measurement step. Either hands the post-measurement
/// state to `next`, or ends the protocol with `final_label`.
struct ProtocolBranch {
    std::string outcome;
    /// POVM element on the acting party's (C^{d_p})^{x3} space.
    DenseOperator element;
    /// Kraus operator applied on this outcome: the PSD square root of `element`.
    DenseOperator kraus;
    NodePtr next;
    int final_label = 0;

    bool terminal() const { return next == nullptr; }
};

/// A local measurement by one party. The elements of all branches sum to
/// `support`, a projector the incoming state is guaranteed to lie in.
struct ProtocolNode {
    Party party = Party::alice;
    DenseOperator support;
    std::vector<ProtocolBranch> branches;
};

ProtocolBranch branch_to(std::string outcome, DenseOperator element, NodePtr next);
ProtocolBranch branch_final(std::string outcome, DenseOperator element, int label);

/// Validates completeness of the node's measurement on its support.
NodePtr make_node(Party party, DenseOperator support, std::vector<ProtocolBranch> branches);

/// Finite tree of local measurements exchanged by classical communication
/// between Alice and Bob. The transcript of outcomes fixes the final label.
class LoccProtocol {
   public:
    LoccProtocol(std::size_t d_a, std::size_t d_b, NodePtr root, std::string name = "");

    std::size_t d_a() const { return toolkit_.d_a(); }
    std::size_t d_b() const { return toolkit_.d_b(); }
    const std::string &name() const { return name_; }
    const ProtocolNode &root() const { return *root_; }
    const BipartiteToolkit &toolkit() const { return toolkit_; }

    /// Number of root-to-leaf paths.
    std::size_t leaf_count() const;

   private:
    BipartiteToolkit toolkit_;
    NodePtr root_;
    std::string name_;
};

/// Effective POVM of the whole protocol on the global (system-major) space:
/// for every root-to-leaf path, K_path^dag K_path with K_path the ordered
/// product of local Kraus operators, summed per final label. Labels that no
/// leaf produces are absent.
Povm flatten(const LoccProtocol &protocol);

}  // namespace qident

#endif
