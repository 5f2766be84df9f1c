// Copyright 2026 The sumprod authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sumprod/ring.hpp"

namespace sumprod {

/// Subset of O/p^level as a bit-vector over canonical element indices.
class RingSet {
public:
    RingSet() : level_(0), card_(0) {}
    RingSet(RingPtr ring, int level);

    static RingSet full(RingPtr ring, int level);
    static RingSet of(RingPtr ring, int level, const std::vector<std::uint32_t>& indices);

    const RingPtr& ring() const { return ring_; }
    int level() const { return level_; }
    std::uint64_t universe_size() const { return ring_->level_size(level_); }
    std::size_t card() const { return card_; }
    bool empty() const { return card_ == 0; }

    bool contains(std::uint32_t idx) const {
        return (bits_[idx >> 6] >> (idx & 63)) & 1;
    }
    void insert(std::uint32_t idx);
    /// Member indices in ascending order.
    std::vector<std::uint32_t> members() const;

    bool is_subset_of(const RingSet& other) const;
    friend bool operator==(const RingSet& a, const RingSet& b);
    friend bool operator!=(const RingSet& a, const RingSet& b) { return !(a == b); }

private:
    RingPtr ring_;
    int level_;
    std::vector<std::uint64_t> bits_;
    std::size_t card_;
};

/// Branching profile (m_0, ..., m_{L-1}) of a regular set: every surviving
/// level-k vertex has exactly m_k children.
struct GradedProfile {
    std::vector<std::int64_t> m;

    int levels() const { return (int)m.size(); }
    /// m_0 * ... * m_{k-1} = size of the level-k projection.
    std::int64_t prefix_product(int k) const {
        std::int64_t r = 1;
        for (int i = 0; i < k; ++i) r *= m[i];
        return r;
    }
    friend bool operator==(const GradedProfile&, const GradedProfile&) = default;
};

/// An arithmetic segment sitting inside a set: the multiples of p^n1 x
/// are contained in the set's level-n2 projection.
struct SegmentWitness {
    RingElem x;  // unit, at level n2
    int n1 = 0;
    int n2 = 0;
};

enum class SetOp { sumset, diffset, prodset };

RingSet combine(SetOp op, const RingSet& a, const RingSet& b);
RingSet sumset(const RingSet& a, const RingSet& b);
RingSet diffset(const RingSet& a, const RingSet& b);
RingSet prodset(const RingSet& a, const RingSet& b);

RingSet project_set(const RingSet& a, int k);
RingSet dilate_set(const RingElem& c, const RingSet& a);
RingSet translate_set(const RingElem& c, const RingSet& a);
RingSet intersect_set(const RingSet& a, const RingSet& b);

/// The elements of valuation at least m: the congruence ball p^m O.
RingSet valuation_ball(const RingPtr& ring, int level, int m);

/// Default budget for sum_product_set's C * |ring| cost guard.
inline constexpr std::uint64_t kDefaultCostGuard = 1ull << 26;

/// The C-fold sum-product span: the C-fold sumset D of the C-fold product
/// set, minus itself (exactly C factors and C summands). Monotone in C
/// when the set contains 0 and 1.
RingSet sum_product_set(const RingSet& a, int c_fold,
                        std::uint64_t guard = kDefaultCostGuard);

/// Returns the branching profile if every level-k vertex of the set's tree
/// has the same number of children, nullopt otherwise.
std::optional<GradedProfile> regularity_profile(const RingSet& a);

/// Extracts a large regular subset: leaves-to-root dyadic pigeonhole on
/// child counts, keeping the class of maximal mass per level (ties to the
/// smaller class) and pruning each kept vertex to its 2^t smallest-index
/// children. Guarantees |A'| >= |A| / (2 (floor(log2 q) + 1))^L.
std::pair<RingSet, GradedProfile> regularize(const RingSet& a);

/// Residues r such that some x with residue r has p^j x inside the set;
/// computed by enumerating the defining condition. A level-1 set.
RingSet graded_piece(const RingSet& x, int j);

/// J(X): the levels with a nonzero graded piece, computed as the set of
/// valuations of the nonzero members.
std::vector<int> graded_support(const RingSet& x);

/// Scans units x in digit order and level pairs n1 < n2, preferring the
/// largest n2 - n1, then the smallest n1, then the smallest x. Returns the
/// first witness whose gap meets min_gap, if any.
std::optional<SegmentWitness> segment_search(const RingSet& s, int min_gap);

}  // namespace sumprod
