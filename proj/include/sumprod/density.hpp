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
#include <map>
#include <optional>
#include <vector>

#include "sumprod/exact.hpp"
#include "sumprod/set_algebra.hpp"

namespace sumprod {

/// A set of non-negative integers of the form F + [t, oo), with F finite.
/// Canonical form: every finite member lies below the tail threshold and
/// the threshold is minimal (threshold - 1 is never a finite member of a
/// tailed set).
class TailSet {
public:
    TailSet() : threshold_(0), has_tail_(false) {}
    TailSet(std::vector<std::int64_t> finite, bool has_tail, std::int64_t threshold);

    static TailSet all_non_negative() { return TailSet({}, true, 0); }

    bool has_tail() const { return has_tail_; }
    std::int64_t threshold() const { return threshold_; }
    const std::vector<std::int64_t>& finite_part() const { return finite_; }

    bool contains(std::int64_t k) const;
    bool is_all_non_negative() const { return has_tail_ && threshold_ == 0; }
    /// |X intersect [1, n]|.
    std::int64_t count_upto(std::int64_t n) const;

    friend bool operator==(const TailSet&, const TailSet&) = default;

private:
    std::int64_t threshold_;
    bool has_tail_;
    std::vector<std::int64_t> finite_;  // sorted, distinct, all < threshold_ when tailed
};

/// Schnirelmann density: the infimum over n >= 1 of |X intersect [1,n]|/n.
/// Exact; 0 for sets without a tail, otherwise attained within the window
/// [1, threshold] since the ratio is non-decreasing past the threshold.
Rational schnirelmann(const TailSet& x);

TailSet tail_sumset(const TailSet& x, const TailSet& y);
TailSet kfold_sum(const TailSet& x, int k);

struct MannCheck {
    bool ok = false;
    std::optional<std::int64_t> violating_n;  // where the density bound first fails
};

/// Checks sigma(X+Y) >= sigma(X) + sigma(Y) or X+Y = Z>=0; both sets must
/// contain 0. A false result comes with the violating n.
MannCheck mann_check(const TailSet& x, const TailSet& y);

/// Derived index statistics of a branching profile: the sequence
/// x_i = log m_i / log q, kept exact as the pair (m_i, q); b_set collects
/// levels with m_i > 1 and t_set the levels with m_i^2 >= q.
struct ProfileStats {
    std::vector<std::int64_t> m;
    std::int64_t q = 0;
    int n = 0;
    std::vector<int> b_set;
    std::vector<int> t_set;
};

ProfileStats profile_stats(const GradedProfile& profile, std::int64_t q);

/// D_T(k): how many elements of T in range leave T when shifted by k.
int shift_defect(const ProfileStats& stats, int k);
Rational avg_shift_defect(const ProfileStats& stats);

struct IntervalCover {
    bool ok = false;
    int max_terms = 0;                                       // 3 * ceil(1/eps)
    std::vector<std::int64_t> uncovered;                     // integers missed
    std::map<std::int64_t, std::vector<std::int64_t>> rep;   // decomposition per integer
};

/// Verifies that every integer strictly between ceil(1/eps) * delta * n
/// and n is a sum of at most 3 ceil(1/eps) elements of b_set, returning
/// the decompositions.
IntervalCover large_interval_cover(const ProfileStats& stats, const Rational& eps,
                                   const Rational& delta);

/// Whether the profile satisfies the index-sum hypotheses used by the
/// interval-cover statement: m_0, m_1 > 1 and prefix products at least
/// q^(l * eps) for every level l in [n*delta, n].
bool profile_meets_hypotheses(const ProfileStats& stats, const Rational& eps,
                              const Rational& delta);

}  // namespace sumprod
