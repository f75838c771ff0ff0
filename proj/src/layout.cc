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

#include "qident/layout.h"

#include <algorithm>
#include <stdexcept>

namespace qident {

std::string party_name(Party p) {
    switch (p) {
        case Party::whole:
            return "whole";
        case Party::alice:
            return "alice";
        case Party::bob:
            return "bob";
    }
    return "?";
}

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("SpaceLayout needs at least one factor");
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Factor &f = factors_[i];
        if (f.system < 0 || f.system > 2) {
            throw std::invalid_argument("SpaceLayout: system id must be 0, 1 or 2");
        }
        if (f.dim == 0) {
            throw std::invalid_argument("SpaceLayout: factor dimension must be positive");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const Factor &g = factors_[j];
            if (g.system != f.system) {
                continue;
            }
            if (g.party == f.party) {
                throw std::invalid_argument("SpaceLayout: duplicated factor");
            }
            if (g.party == Party::whole || f.party == Party::whole) {
                throw std::invalid_argument("SpaceLayout: a system is either whole or split");
            }
        }
    }
}

SpaceLayout SpaceLayout::whole(std::size_t d) {
    return SpaceLayout({{0, Party::whole, d}, {1, Party::whole, d}, {2, Party::whole, d}});
}

SpaceLayout SpaceLayout::system_major(std::size_t d_a, std::size_t d_b) {
    std::vector<Factor> f;
    for (int s = 0; s < 3; ++s) {
        f.push_back({s, Party::alice, d_a});
        f.push_back({s, Party::bob, d_b});
    }
    return SpaceLayout(std::move(f));
}

SpaceLayout SpaceLayout::party_major(std::size_t d_a, std::size_t d_b) {
    std::vector<Factor> f;
    for (int s = 0; s < 3; ++s) {
        f.push_back({s, Party::alice, d_a});
    }
    for (int s = 0; s < 3; ++s) {
        f.push_back({s, Party::bob, d_b});
    }
    return SpaceLayout(std::move(f));
}

SpaceLayout SpaceLayout::local(Party p, std::size_t d) {
    return SpaceLayout({{0, p, d}, {1, p, d}, {2, p, d}});
}

std::size_t SpaceLayout::dim() const {
    std::size_t n = 1;
    for (const auto &f : factors_) {
        n *= f.dim;
    }
    return n;
}

std::vector<std::size_t> SpaceLayout::dims() const {
    std::vector<std::size_t> out;
    out.reserve(factors_.size());
    for (const auto &f : factors_) {
        out.push_back(f.dim);
    }
    return out;
}

SpaceLayout SpaceLayout::permuted(std::span<const std::size_t> perm) const {
    check_permutation(perm, factors_.size());
    std::vector<Factor> f;
    f.reserve(perm.size());
    for (auto p : perm) {
        f.push_back(factors_[p]);
    }
    return SpaceLayout(std::move(f));
}

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
    if (perm.size() != n) {
        throw std::invalid_argument("permutation length does not match factor count");
    }
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        if (p >= n || seen[p]) {
            throw std::invalid_argument("not a permutation");
        }
        seen[p] = true;
    }
}

std::vector<std::size_t> compose(std::span<const std::size_t> s, std::span<const std::size_t> t) {
    check_permutation(s, s.size());
    check_permutation(t, s.size());
    std::vector<std::size_t> out(s.size());
    for (std::size_t m = 0; m < s.size(); ++m) {
        out[m] = t[s[m]];
    }
    return out;
}

}  // namespace qident
