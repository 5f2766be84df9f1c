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
#include <vector>

#include "sumprod/exact.hpp"
#include "sumprod/ring.hpp"
#include "sumprod/set_algebra.hpp"

namespace sumprod {

/// Exact probability distribution on O/p^level (level 1 is the residue
/// field). Weights are rationals summing to exactly 1.
class FiniteMeasure {
public:
    FiniteMeasure() : level_(0) {}
    /// Normalizes the given non-negative weights; their sum must be positive.
    FiniteMeasure(RingPtr ring, int level, std::vector<Rational> weights);

    /// Uniform measure on a nonempty set.
    static FiniteMeasure counting(const RingSet& support);
    static FiniteMeasure point_mass(const RingElem& at);

    const RingPtr& ring() const { return ring_; }
    int level() const { return level_; }
    std::uint64_t carrier_size() const { return ring_->level_size(level_); }
    const Rational& weight(std::uint32_t idx) const { return w_[idx]; }
    const std::vector<Rational>& weights() const { return w_; }
    std::size_t support_size() const;

    friend bool operator==(const FiniteMeasure& a, const FiniteMeasure& b);
    friend bool operator!=(const FiniteMeasure& a, const FiniteMeasure& b) { return !(a == b); }

private:
    RingPtr ring_;
    int level_;
    std::vector<Rational> w_;
};

/// The partition of the carrier into fibers of the projection to a level.
/// Level 0 is the trivial partition; the carrier's own level gives
/// singletons. Partitions of lower level are coarser.
struct LevelPartition {
    int level = 0;
};

/// Pushforward along the projection to level k.
FiniteMeasure pushforward(const FiniteMeasure& mu, int k);

/// Conditional digit distribution at a level-n vertex with positive mass:
/// the fiber measure one level deeper, pulled back to the residue field
/// through the child labeling. A measure at level 1.
FiniteMeasure conditional_digit(const FiniteMeasure& mu, const RingElem& xbar);

/// Additive convolution of two measures on the same carrier.
FiniteMeasure convolve(const FiniteMeasure& mu, const FiniteMeasure& nu);

/// Pushforward under multiplication by c (dilation by 0 is the point mass
/// at 0) and under translation by c.
FiniteMeasure dilate(const RingElem& c, const FiniteMeasure& mu);
FiniteMeasure translate(const RingElem& c, const FiniteMeasure& mu);

/// Shannon entropy, natural log.
double entropy(const FiniteMeasure& mu);
/// Entropy of the level partition under mu.
double partition_entropy(const FiniteMeasure& mu, LevelPartition b);
/// Conditional entropy H(mu; fine | coarse), computed from the defining
/// double sum; requires coarse.level <= fine.level.
double conditional_entropy(const FiniteMeasure& mu, LevelPartition fine, LevelPartition coarse);

/// Sum of squared weights.
Rational l2_norm_sq(const FiniteMeasure& mu);

/// Number of quadruples x1 + y1 = x2 + y2 with x_i in X, y_i in Y.
std::int64_t additive_energy(const RingSet& x, const RingSet& y);

struct ScalarEnergyAverage {
    Rational empirical;    // average over nonzero residues of |P_A * alpha P_B|_2^2
    Rational closed_form;  // 1/(|A||B|) + (|A|-1)(|B|-1) / ((q-1)|A||B|)
};

/// Average of the collision mass of A + alpha B over nonzero scalars
/// alpha, for nonempty subsets of the residue field (level-1 sets),
/// together with its closed form. The two are equal; both are returned so
/// callers can check.
ScalarEnergyAverage avg_scalar_energy(const RingSet& abar, const RingSet& bbar);

}  // namespace sumprod
