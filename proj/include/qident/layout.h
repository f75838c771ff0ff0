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

#ifndef QIDENT_LAYOUT_H
#define QIDENT_LAYOUT_H

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qident {

enum class Party { whole, alice, bob };

std::string party_name(Party p);

/// One tensor factor: a local space of dimension `dim` belonging to system
/// 0, 1 or 2, held whole or by one of the two parties.
struct Factor {
    int system = 0;
    Party party = Party::whole;
    std::size_t dim = 1;

    bool same_slot(const Factor &other) const {
        return system == other.system && party == other.party;
    }
    bool operator==(const Factor &other) const = default;
};

/// Ordered tensor-factor structure of a space.
///
/// The global basis index is the mixed-radix number over the factor indices,
/// most significant factor first. Every operator in the library follows this
/// convention.
class SpaceLayout {
   public:
    /// Validates: every factor dim >= 1, each (system, party) slot appears at
    /// most once, systems are in {0,1,2}, and a system is either held whole
    /// or split between alice and bob.
    explicit SpaceLayout(std::vector<Factor> factors);

    /// (0, 1, 2), each C^d held whole.
    static SpaceLayout whole(std::size_t d);
    /// (0a, 0b, 1a, 1b, 2a, 2b): the whole-system basis with i = a * d_b + b.
    static SpaceLayout system_major(std::size_t d_a, std::size_t d_b);
    /// (0a, 1a, 2a, 0b, 1b, 2b).
    static SpaceLayout party_major(std::size_t d_a, std::size_t d_b);
    /// (0p, 1p, 2p) for a single party p.
    static SpaceLayout local(Party p, std::size_t d);

    const std::vector<Factor> &factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    std::size_t dim() const;
    std::vector<std::size_t> dims() const;

    /// Layout whose m-th factor is factors()[perm[m]].
    SpaceLayout permuted(std::span<const std::size_t> perm) const;

    bool operator==(const SpaceLayout &other) const = default;

   private:
    std::vector<Factor> factors_;
};

/// Throws std::invalid_argument unless perm is a bijection on {0..n-1}.
void check_permutation(std::span<const std::size_t> perm, std::size_t n);

/// Composition matching the operator product of factor permutations:
/// permutation_matrix(compose(s, t)) == permutation_matrix(s) * permutation_matrix(t).
std::vector<std::size_t> compose(std::span<const std::size_t> s, std::span<const std::size_t> t);

}  // namespace qident

#endif
