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

#include "sumprod/set_algebra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace sumprod {

RingSet::RingSet(RingPtr ring, int level) : ring_(std::move(ring)), level_(level), card_(0) {
    if (level < 0 || level > ring_->depth()) throw std::invalid_argument("set: bad level");
    bits_.assign((ring_->level_size(level) + 63) / 64, 0);
}

RingSet RingSet::full(RingPtr ring, int level) {
    RingSet s(std::move(ring), level);
    for (std::uint64_t i = 0; i < s.universe_size(); ++i) s.insert((std::uint32_t)i);
    return s;
}

RingSet RingSet::of(RingPtr ring, int level, const std::vector<std::uint32_t>& indices) {
    RingSet s(std::move(ring), level);
    for (auto i : indices) s.insert(i);
    return s;
}

void RingSet::insert(std::uint32_t idx) {
    if (idx >= universe_size()) throw std::invalid_argument("set: index out of range");
    std::uint64_t mask = 1ull << (idx & 63);
    if (!(bits_[idx >> 6] & mask)) {
        bits_[idx >> 6] |= mask;
        ++card_;
    }
}

std::vector<std::uint32_t> RingSet::members() const {
    std::vector<std::uint32_t> out;
    out.reserve(card_);
    for (std::size_t blk = 0; blk < bits_.size(); ++blk) {
        std::uint64_t w = bits_[blk];
        while (w) {
            unsigned b = std::countr_zero(w);
            out.push_back((std::uint32_t)(blk * 64 + b));
            w &= w - 1;
        }
    }
    return out;
}

bool RingSet::is_subset_of(const RingSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~other.bits_[i]) return false;
    return true;
}

bool operator==(const RingSet& a, const RingSet& b) {
    return a.level_ == b.level_ && a.ring_->params() == b.ring_->params() && a.bits_ == b.bits_;
}

namespace {
void check_same_carrier(const RingSet& a, const RingSet& b) {
    if (!(a.ring()->params() == b.ring()->params()) || a.level() != b.level())
        throw std::invalid_argument("set: operands on different carriers");
}
}  // namespace

RingSet combine(SetOp op, const RingSet& a, const RingSet& b) {
    check_same_carrier(a, b);
    const auto& ring = a.ring();
    const int level = a.level();
    RingSet out(ring, level);
    const std::uint64_t universe = out.universe_size();
    auto ma = a.members(), mb = b.members();
    for (auto x : ma) {
        if (out.card() == universe) break;  // already everything
        for (auto y : mb) {
            std::uint32_t r;
            switch (op) {
                case SetOp::sumset: r = ring->add_idx(x, y, level); break;
                case SetOp::diffset: r = ring->sub_idx(x, y, level); break;
                default: r = ring->mul_idx(x, y, level); break;
            }
            out.insert(r);
        }
    }
    return out;
}

RingSet sumset(const RingSet& a, const RingSet& b) { return combine(SetOp::sumset, a, b); }
RingSet diffset(const RingSet& a, const RingSet& b) { return combine(SetOp::diffset, a, b); }
RingSet prodset(const RingSet& a, const RingSet& b) { return combine(SetOp::prodset, a, b); }

RingSet project_set(const RingSet& a, int k) {
    if (k > a.level()) throw std::invalid_argument("set: projection above level");
    RingSet out(a.ring(), k);
    std::uint64_t qk = a.ring()->level_size(k);
    for (auto x : a.members()) out.insert((std::uint32_t)(x % qk));
    return out;
}

RingSet dilate_set(const RingElem& c, const RingSet& a) {
    if (c.level() != a.level()) throw std::invalid_argument("set: dilation level mismatch");
    RingSet out(a.ring(), a.level());
    for (auto x : a.members()) out.insert(a.ring()->mul_idx(c.index(), x, a.level()));
    return out;
}

RingSet translate_set(const RingElem& c, const RingSet& a) {
    if (c.level() != a.level()) throw std::invalid_argument("set: translation level mismatch");
    RingSet out(a.ring(), a.level());
    for (auto x : a.members()) out.insert(a.ring()->add_idx(c.index(), x, a.level()));
    return out;
}

RingSet intersect_set(const RingSet& a, const RingSet& b) {
    check_same_carrier(a, b);
    RingSet out(a.ring(), a.level());
    for (auto x : a.members())
        if (b.contains(x)) out.insert(x);
    return out;
}

RingSet valuation_ball(const RingPtr& ring, int level, int m) {
    if (m < 0 || m > level) throw std::invalid_argument("set: ball valuation out of range");
    RingSet out(ring, level);
    std::uint64_t qm = ring->level_size(m);
    for (std::uint64_t w = 0; w < ring->level_size(level) / qm; ++w)
        out.insert((std::uint32_t)(w * qm));
    return out;
}

RingSet sum_product_set(const RingSet& a, int c_fold, std::uint64_t guard) {
    if (a.empty()) throw std::invalid_argument("set: sum-product span of the empty set");
    if (c_fold < 1) throw std::invalid_argument("set: fold count must be >= 1");
    if ((std::uint64_t)c_fold * a.universe_size() > guard)
        throw cost_guard_error("sum_product_set: C * |ring| exceeds cost guard");
    // once an iterate repeats, every later one is identical
    RingSet prod = a;
    for (int i = 1; i < c_fold; ++i) {
        RingSet next = prodset(prod, a);
        if (next == prod) break;
        prod = std::move(next);
    }
    RingSet sums = prod;
    for (int i = 1; i < c_fold; ++i) {
        RingSet next = sumset(sums, prod);
        if (next == sums) break;
        sums = std::move(next);
    }
    return diffset(sums, sums);
}

std::optional<GradedProfile> regularity_profile(const RingSet& a) {
    if (a.empty()) throw std::invalid_argument("set: profile of the empty set");
    const int levels = a.level();
    GradedProfile profile;
    profile.m.assign(levels, 1);
    auto mem = a.members();
    for (int k = 0; k < levels; ++k) {
        std::uint64_t qk = a.ring()->level_size(k);
        std::uint64_t qk1 = a.ring()->level_size(k + 1);
        std::vector<std::uint32_t> proj;
        proj.reserve(mem.size());
        for (auto x : mem) proj.push_back((std::uint32_t)(x % qk1));
        std::sort(proj.begin(), proj.end());
        proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
        std::map<std::uint32_t, std::size_t> child_count;
        for (auto c : proj) ++child_count[(std::uint32_t)(c % qk)];
        std::size_t count = child_count.begin()->second;
        for (const auto& [parent, cnt] : child_count)
            if (cnt != count) return std::nullopt;
        profile.m[k] = (std::int64_t)count;
    }
    return profile;
}

std::pair<RingSet, GradedProfile> regularize(const RingSet& a) {
    if (a.empty()) throw std::invalid_argument("set: regularize of the empty set");
    const auto& ring = a.ring();
    const int levels = a.level();
    std::vector<std::uint32_t> cur = a.members();

    for (int k = levels - 1; k >= 0; --k) {
        std::uint64_t qk = ring->level_size(k);
        std::uint64_t qk1 = ring->level_size(k + 1);
        // distinct children per level-k vertex, each list ascending
        std::vector<std::uint32_t> proj;
        proj.reserve(cur.size());
        for (auto x : cur) proj.push_back((std::uint32_t)(x % qk1));
        std::sort(proj.begin(), proj.end());
        proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
        std::map<std::uint32_t, std::vector<std::uint32_t>> children;
        for (auto c : proj) children[(std::uint32_t)(c % qk)].push_back(c);

        // dyadic classes [2^t, 2^(t+1)) of child counts; pick the class of
        // maximal mass (total children, since lower levels are already
        // uniform), ties to the smaller class
        std::map<int, std::uint64_t> class_mass;
        for (const auto& [parent, v] : children) {
            int t = 0;
            while ((2ull << t) <= v.size()) ++t;
            class_mass[t] += v.size();
        }
        int best_t = class_mass.begin()->first;
        std::uint64_t best_mass = class_mass.begin()->second;
        for (const auto& [t, mass] : class_mass)
            if (mass > best_mass) {
                best_t = t;
                best_mass = mass;
            }

        // keep class vertices, prune each to its 2^t smallest children
        std::map<std::uint32_t, bool> kept_children;
        for (const auto& [parent, v] : children) {
            int t = 0;
            while ((2ull << t) <= v.size()) ++t;
            if (t != best_t) continue;
            for (std::size_t i = 0; i < (1ull << t); ++i) kept_children[v[i]] = true;
        }
        std::vector<std::uint32_t> next;
        next.reserve(cur.size());
        for (auto x : cur)
            if (kept_children.count((std::uint32_t)(x % qk1))) next.push_back(x);
        cur.swap(next);
    }

    RingSet out = RingSet::of(ring, levels, cur);
    auto profile = regularity_profile(out);
    if (!profile) throw std::logic_error("regularize: output not regular");
    return {out, *profile};
}

RingSet graded_piece(const RingSet& x, int j) {
    const int level = x.level();
    if (j < 0 || j >= level) throw std::invalid_argument("set: graded piece level out of range");
    const auto& ring = x.ring();
    RingSet out(ring, 1);
    std::uint64_t qj = ring->level_size(j);
    std::uint64_t reps = ring->level_size(level - j);
    for (std::uint64_t w = 0; w < reps; ++w) {
        if (x.contains((std::uint32_t)(w * qj))) out.insert((std::uint32_t)(w % ring->q()));
    }
    return out;
}

std::vector<int> graded_support(const RingSet& x) {
    std::vector<bool> seen((std::size_t)x.level() + 1, false);
    for (auto s : x.members()) {
        if (s == 0) continue;
        seen[(std::size_t)x.ring()->val_idx(s, x.level())] = true;
    }
    std::vector<int> out;
    for (int j = 0; j <= x.level(); ++j)
        if (seen[(std::size_t)j]) out.push_back(j);
    return out;
}

std::optional<SegmentWitness> segment_search(const RingSet& s, int min_gap) {
    if (s.empty()) throw std::invalid_argument("set: segment search on the empty set");
    const auto& ring = s.ring();
    const int levels = s.level();
    if (min_gap < 1) min_gap = 1;

    std::vector<RingSet> proj;
    proj.reserve(levels + 1);
    for (int k = 0; k <= levels; ++k) proj.push_back(project_set(s, k));

    for (int gap = levels; gap >= min_gap; --gap) {
        for (int n1 = 0; n1 + gap <= levels; ++n1) {
            int n2 = n1 + gap;
            const RingSet& target = proj[n2];
            std::uint64_t qn2 = ring->level_size(n2);
            for (std::uint64_t x = 1; x < qn2; ++x) {
                if (x % ring->q() == 0) continue;  // units only
                std::uint32_t gen =
                    ring->mul_idx((std::uint32_t)x, (std::uint32_t)ring->level_size(n1), n2);
                // walk the additive orbit of gen
                bool ok = target.contains(0);
                std::uint32_t cursor = gen;
                while (ok && cursor != 0) {
                    ok = target.contains(cursor);
                    cursor = ring->add_idx(cursor, gen, n2);
                }
                if (ok) return SegmentWitness{ring->elem((std::uint32_t)x, n2), n1, n2};
            }
        }
    }
    return std::nullopt;
}

}  // namespace sumprod
