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

#include "sumprod/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "sumprod/digits.hpp"

namespace sumprod {

FiniteMeasure::FiniteMeasure(RingPtr ring, int level, std::vector<Rational> weights)
    : ring_(std::move(ring)), level_(level), w_(std::move(weights)) {
    if (level < 0 || level > ring_->depth()) throw std::invalid_argument("measure: bad level");
    if (w_.size() != ring_->level_size(level)) throw std::invalid_argument("measure: weight count mismatch");
    Rational total(0);
    for (const auto& w : w_) {
        if (w < Rational(0)) throw std::invalid_argument("measure: negative weight");
        total += w;
    }
    if (total.is_zero()) throw std::invalid_argument("measure: zero total mass");
    if (total != Rational(1))
        for (auto& w : w_) w /= total;
}

FiniteMeasure FiniteMeasure::counting(const RingSet& support) {
    if (support.empty()) throw std::invalid_argument("measure: counting measure on the empty set");
    std::vector<Rational> w(support.universe_size(), Rational(0));
    Rational share(1, (std::int64_t)support.card());
    for (auto idx : support.members()) w[idx] = share;
    return FiniteMeasure(support.ring(), support.level(), std::move(w));
}

FiniteMeasure FiniteMeasure::point_mass(const RingElem& at) {
    std::vector<Rational> w(at.ring()->level_size(at.level()), Rational(0));
    w[at.index()] = Rational(1);
    return FiniteMeasure(at.ring(), at.level(), std::move(w));
}

std::size_t FiniteMeasure::support_size() const {
    std::size_t n = 0;
    for (const auto& w : w_)
        if (!w.is_zero()) ++n;
    return n;
}

bool operator==(const FiniteMeasure& a, const FiniteMeasure& b) {
    return a.level_ == b.level_ && a.ring_->params() == b.ring_->params() && a.w_ == b.w_;
}

namespace {
void check_same_carrier(const FiniteMeasure& a, const FiniteMeasure& b) {
    if (!(a.ring()->params() == b.ring()->params()) || a.level() != b.level())
        throw std::invalid_argument("measure: operands on different carriers");
}
}  // namespace

FiniteMeasure pushforward(const FiniteMeasure& mu, int k) {
    if (k > mu.level()) throw std::invalid_argument("measure: pushforward above level");
    std::uint64_t qk = mu.ring()->level_size(k);
    std::vector<Rational> w(qk, Rational(0));
    for (std::uint32_t i = 0; i < mu.carrier_size(); ++i)
        if (!mu.weight(i).is_zero()) w[i % qk] += mu.weight(i);
    return FiniteMeasure(mu.ring(), k, std::move(w));
}

FiniteMeasure conditional_digit(const FiniteMeasure& mu, const RingElem& xbar) {
    const int n = xbar.level();
    if (n + 1 > mu.level()) throw std::invalid_argument("measure: conditioning level too deep");
    FiniteMeasure down = pushforward(mu, n + 1);
    FiniteMeasure base = pushforward(mu, n);
    Rational mass = base.weight(xbar.index());
    if (mass.is_zero()) throw std::domain_error("measure: conditioning on a null fiber");
    std::vector<Rational> w(mu.ring()->q(), Rational(0));
    for (std::uint32_t alpha = 0; alpha < mu.ring()->q(); ++alpha)
        w[alpha] = down.weight(child_label(xbar, alpha).index()) / mass;
    return FiniteMeasure(mu.ring(), 1, std::move(w));
}

FiniteMeasure convolve(const FiniteMeasure& mu, const FiniteMeasure& nu) {
    check_same_carrier(mu, nu);
    const auto& ring = mu.ring();
    const int level = mu.level();
    std::vector<Rational> w(mu.carrier_size(), Rational(0));
    for (std::uint32_t a = 0; a < mu.carrier_size(); ++a) {
        if (mu.weight(a).is_zero()) continue;
        for (std::uint32_t b = 0; b < nu.carrier_size(); ++b) {
            if (nu.weight(b).is_zero()) continue;
            w[ring->add_idx(a, b, level)] += mu.weight(a) * nu.weight(b);
        }
    }
    return FiniteMeasure(ring, level, std::move(w));
}

FiniteMeasure dilate(const RingElem& c, const FiniteMeasure& mu) {
    if (c.level() != mu.level()) throw std::invalid_argument("measure: dilation level mismatch");
    std::vector<Rational> w(mu.carrier_size(), Rational(0));
    for (std::uint32_t a = 0; a < mu.carrier_size(); ++a)
        if (!mu.weight(a).is_zero()) w[mu.ring()->mul_idx(c.index(), a, mu.level())] += mu.weight(a);
    return FiniteMeasure(mu.ring(), mu.level(), std::move(w));
}

FiniteMeasure translate(const RingElem& c, const FiniteMeasure& mu) {
    if (c.level() != mu.level()) throw std::invalid_argument("measure: translation level mismatch");
    std::vector<Rational> w(mu.carrier_size(), Rational(0));
    for (std::uint32_t a = 0; a < mu.carrier_size(); ++a)
        if (!mu.weight(a).is_zero()) w[mu.ring()->add_idx(c.index(), a, mu.level())] += mu.weight(a);
    return FiniteMeasure(mu.ring(), mu.level(), std::move(w));
}

double entropy(const FiniteMeasure& mu) {
    double h = 0.0;
    for (const auto& w : mu.weights()) {
        if (w.is_zero()) continue;
        double x = w.to_double();
        h -= x * std::log(x);
    }
    return h;
}

double partition_entropy(const FiniteMeasure& mu, LevelPartition b) {
    return entropy(pushforward(mu, b.level));
}

double conditional_entropy(const FiniteMeasure& mu, LevelPartition fine, LevelPartition coarse) {
    if (coarse.level > fine.level)
        throw std::invalid_argument("measure: conditional entropy needs a refining pair");
    FiniteMeasure fine_mu = pushforward(mu, fine.level);
    FiniteMeasure coarse_mu = pushforward(mu, coarse.level);
    std::uint64_t qc = mu.ring()->level_size(coarse.level);
    // sum of -w log(w / block mass), one pass over the fine carrier
    double h = 0.0;
    for (std::uint32_t i = 0; i < fine_mu.carrier_size(); ++i) {
        const Rational& w = fine_mu.weight(i);
        if (w.is_zero()) continue;
        double ratio = (w / coarse_mu.weight(i % qc)).to_double();
        h -= w.to_double() * std::log(ratio);
    }
    return h;
}

Rational l2_norm_sq(const FiniteMeasure& mu) {
    Rational total(0);
    for (const auto& w : mu.weights())
        if (!w.is_zero()) total += w * w;
    return total;
}

std::int64_t additive_energy(const RingSet& x, const RingSet& y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("energy: empty set");
    if (!(x.ring()->params() == y.ring()->params()) || x.level() != y.level())
        throw std::invalid_argument("energy: operands on different carriers");
    std::vector<std::int64_t> counts(x.universe_size(), 0);
    auto mx = x.members(), my = y.members();
    for (auto a : mx)
        for (auto b : my) ++counts[x.ring()->add_idx(a, b, x.level())];
    std::int64_t e = 0;
    for (auto c : counts) e += c * c;
    return e;
}

ScalarEnergyAverage avg_scalar_energy(const RingSet& abar, const RingSet& bbar) {
    if (abar.empty() || bbar.empty()) throw std::invalid_argument("energy: empty set");
    if (abar.level() != 1 || bbar.level() != 1)
        throw std::invalid_argument("energy: scalar average needs residue-field sets");
    const auto& ring = abar.ring();
    const std::int64_t q = (std::int64_t)ring->q();
    FiniteMeasure pa = FiniteMeasure::counting(abar);
    FiniteMeasure pb = FiniteMeasure::counting(bbar);
    Rational total(0);
    for (std::uint32_t alpha = 1; alpha < (std::uint32_t)q; ++alpha)
        total += l2_norm_sq(convolve(pa, dilate(ring->elem(alpha, 1), pb)));
    Rational empirical = total / Rational(q - 1);
    std::int64_t na = (std::int64_t)abar.card(), nb = (std::int64_t)bbar.card();
    Rational closed = Rational(1, na * nb) + Rational((na - 1) * (nb - 1)) / Rational((q - 1) * na * nb);
    return {empirical, closed};
}

}  // namespace sumprod
