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

#include "sumprod/density.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sumprod {

TailSet::TailSet(std::vector<std::int64_t> finite, bool has_tail, std::int64_t threshold)
    : threshold_(threshold), has_tail_(has_tail), finite_(std::move(finite)) {
    for (auto v : finite_)
        if (v < 0) throw std::invalid_argument("tailset: negative member");
    if (threshold_ < 0) throw std::invalid_argument("tailset: negative threshold");
    std::sort(finite_.begin(), finite_.end());
    finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
    if (has_tail_) {
        // absorb finite members above the threshold, then pull it down
        while (!finite_.empty() && finite_.back() >= threshold_) finite_.pop_back();
        while (threshold_ > 0 && !finite_.empty() && finite_.back() == threshold_ - 1) {
            finite_.pop_back();
            --threshold_;
        }
    } else {
        threshold_ = 0;
    }
}

bool TailSet::contains(std::int64_t k) const {
    if (k < 0) return false;
    if (has_tail_ && k >= threshold_) return true;
    return std::binary_search(finite_.begin(), finite_.end(), k);
}

std::int64_t TailSet::count_upto(std::int64_t n) const {
    std::int64_t c = (std::int64_t)(std::upper_bound(finite_.begin(), finite_.end(), n) -
                                    finite_.begin());
    if (!finite_.empty() && finite_.front() == 0) --c;  // count [1, n] only
    if (has_tail_ && n >= threshold_) c += n - std::max(threshold_, (std::int64_t)1) + 1;
    return c;
}

Rational schnirelmann(const TailSet& x) {
    if (!x.has_tail()) return Rational(0);  // the ratio tends to 0
    std::int64_t window = std::max<std::int64_t>(2 * x.threshold(), 1);
    Rational best(1);
    for (std::int64_t n = 1; n <= window; ++n) {
        Rational r(x.count_upto(n), n);
        if (r < best) best = r;
    }
    return best;
}

TailSet tail_sumset(const TailSet& x, const TailSet& y) {
    const auto& fx = x.finite_part();
    const auto& fy = y.finite_part();
    std::set<std::int64_t> sums;
    for (auto a : fx)
        for (auto b : fy) sums.insert(a + b);

    bool tail = false;
    std::int64_t threshold = 0;
    if (x.has_tail() && y.has_tail()) {
        tail = true;
        threshold = x.threshold() + y.threshold();
    }
    if (x.has_tail() && !fy.empty()) {
        std::int64_t t = x.threshold() + fy.front();
        threshold = tail ? std::min(threshold, t) : t;
        tail = true;
    }
    if (y.has_tail() && !fx.empty()) {
        std::int64_t t = y.threshold() + fx.front();
        threshold = tail ? std::min(threshold, t) : t;
        tail = true;
    }
    std::vector<std::int64_t> finite(sums.begin(), sums.end());
    return TailSet(std::move(finite), tail, threshold);
}

TailSet kfold_sum(const TailSet& x, int k) {
    if (k < 1) throw std::invalid_argument("tailset: fold count must be >= 1");
    TailSet acc = x;
    for (int i = 1; i < k; ++i) acc = tail_sumset(acc, x);
    return acc;
}

MannCheck mann_check(const TailSet& x, const TailSet& y) {
    if (!x.contains(0) || !y.contains(0))
        throw std::invalid_argument("mann_check: both sets must contain 0");
    TailSet s = tail_sumset(x, y);
    if (s.is_all_non_negative()) return {true, std::nullopt};
    Rational bound = schnirelmann(x) + schnirelmann(y);
    Rational sigma = schnirelmann(s);
    if (sigma >= bound) return {true, std::nullopt};
    // locate the first n where the ratio drops below the bound
    std::int64_t window = std::max<std::int64_t>(2 * s.threshold(), 1);
    for (std::int64_t n = 1; n <= window; ++n)
        if (Rational(s.count_upto(n), n) < bound) return {false, n};
    return {false, std::nullopt};
}

ProfileStats profile_stats(const GradedProfile& profile, std::int64_t q) {
    ProfileStats st;
    st.m = profile.m;
    st.q = q;
    st.n = profile.levels();
    for (int i = 0; i < st.n; ++i) {
        if (st.m[i] < 1 || st.m[i] > q) throw std::invalid_argument("profile: branching out of range");
        if (st.m[i] > 1) st.b_set.push_back(i);
        if (st.m[i] * st.m[i] >= q) st.t_set.push_back(i);
    }
    return st;
}

int shift_defect(const ProfileStats& stats, int k) {
    // |(T intersect [0, n-1-k]) minus (T - k)|
    int d = 0;
    for (int i : stats.t_set) {
        if (i > stats.n - 1 - k) continue;
        if (!std::binary_search(stats.t_set.begin(), stats.t_set.end(), i + k)) ++d;
    }
    return d;
}

Rational avg_shift_defect(const ProfileStats& stats) {
    std::int64_t total = 0;
    for (int k = 0; k < stats.n; ++k) total += shift_defect(stats, k);
    return Rational(total, stats.n);
}

bool profile_meets_hypotheses(const ProfileStats& stats, const Rational& eps,
                              const Rational& delta) {
    if (stats.n < 2 || stats.m[0] <= 1 || stats.m[1] <= 1) return false;
    std::int64_t lo = ceil_scale(delta, stats.n);
    std::uint64_t prefix = 1;
    for (int l = 1; l <= stats.n; ++l) {
        prefix *= (std::uint64_t)stats.m[l - 1];
        if (l < lo) continue;
        if (!meets_power_bound(prefix, (std::uint64_t)stats.q, l, eps)) return false;
    }
    return true;
}

IntervalCover large_interval_cover(const ProfileStats& stats, const Rational& eps,
                                   const Rational& delta) {
    if (eps <= Rational(0)) throw std::invalid_argument("interval cover: eps must be positive");
    std::int64_t inv_eps = ceil_scale(Rational(1) / eps, 1);
    IntervalCover out;
    out.max_terms = (int)(3 * inv_eps);
    std::int64_t lo = floor_scale(delta * Rational(inv_eps), stats.n);  // open at lo
    std::int64_t hi = stats.n;                                          // open at hi

    // reach[s] = fewest terms from b_set summing to s, with parent links
    const std::int64_t limit = stats.n;
    std::vector<int> terms(limit + 1, -1);
    std::vector<std::int64_t> from(limit + 1, -1), used(limit + 1, -1);
    terms[0] = 0;
    for (int step = 1; step <= out.max_terms; ++step) {
        // extend states reached in exactly step-1 terms
        for (std::int64_t s = limit; s >= 0; --s) {
            if (terms[s] != step - 1) continue;
            for (int b : stats.b_set) {
                std::int64_t t = s + b;
                if (t <= limit && terms[t] == -1) {
                    terms[t] = step;
                    from[t] = s;
                    used[t] = b;
                }
            }
        }
    }
    for (std::int64_t v = lo + 1; v < hi; ++v) {
        if (terms[v] == -1) {
            out.uncovered.push_back(v);
            continue;
        }
        std::vector<std::int64_t> decomposition;
        for (std::int64_t c = v; c != 0; c = from[c]) decomposition.push_back(used[c]);
        std::sort(decomposition.begin(), decomposition.end());
        out.rep[v] = std::move(decomposition);
    }
    out.ok = out.uncovered.empty();
    return out;
}

}  // namespace sumprod
