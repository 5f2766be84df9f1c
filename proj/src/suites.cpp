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

#include "sumprod/suites.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sumprod/density.hpp"
#include "sumprod/measures.hpp"

namespace sumprod {

namespace {

constexpr double kTol = 1e-9;

struct Recorder {
    SuiteResult result;
    int trial = 0;

    void check(bool ok, const std::string& what, ordered_json witness = {}) {
        ++result.checks;
        if (!ok) result.failures.push_back({trial, what, std::move(witness)});
    }

    // a trial aborted by a cost cap is reported, not failed
    template <typename Body>
    void guarded(Body&& body) {
        try {
            body();
        } catch (const cost_guard_error& e) {
            result.capped.emplace_back(trial, e.what());
        }
    }
};

RingSet random_nonempty(const RingPtr& ring, int level, SplitMix64& rng) {
    return random_subset(ring, level, rng);
}

FiniteMeasure random_measure(const RingPtr& ring, int level, SplitMix64& rng) {
    std::vector<Rational> w(ring->level_size(level), Rational(0));
    bool any = false;
    for (auto& x : w) {
        if (rng.coin(2, 3)) continue;
        x = Rational((std::int64_t)rng.below(16) + 1, 1);
        any = true;
    }
    if (!any) w[rng.below(w.size())] = Rational(1);
    return FiniteMeasure(ring, level, std::move(w));
}

}  // namespace

RingSet random_subset(const RingPtr& ring, int level, SplitMix64& rng, std::uint64_t keep_num,
                      std::uint64_t keep_den) {
    RingSet s(ring, level);
    for (std::uint64_t i = 0; i < ring->level_size(level); ++i)
        if (rng.coin(keep_num, keep_den)) s.insert((std::uint32_t)i);
    if (s.empty()) s.insert((std::uint32_t)rng.below(ring->level_size(level)));
    return s;
}

// -- ring ---------------------------------------------------------------------

SuiteResult run_ring_suite(const SuiteConfig& config) {
    Recorder rec;
    rec.result.name = "ring";
    rec.result.trials = config.trials;
    RingPtr ring = make_ring(config.ring);
    const int n = ring->depth();
    const std::uint64_t size = ring->size();

    // digit round trip and projection-truncation, exhaustive up to 2^12
    if (size <= (1u << 12)) {
        for (std::uint64_t i = 0; i < size; ++i) {
            RingElem a = ring->elem((std::uint32_t)i);
            auto d = a.digits();
            std::uint64_t back = 0;
            for (std::size_t t = d.size(); t-- > 0;) back = back * ring->q() + d[t];
            rec.check(back == i, "digit round trip", {{"index", i}});
            for (int k = 0; k <= n; ++k)
                rec.check(encode(project(a, k)) == i % ring->level_size(k),
                          "projection equals digit truncation", {{"index", i}, {"k", k}});
        }
        // valuation census: |{a : val(a) >= k}| = q^(n-k)
        for (int k = 0; k <= n; ++k) {
            std::uint64_t count = 0;
            for (std::uint64_t i = 0; i < size; ++i)
                if (ring->val_idx((std::uint32_t)i, n) >= k) ++count;
            rec.check(count == ring->level_size(n - k), "valuation census", {{"k", k}});
        }
    }

    // Teichmuller: fixed point of the q-power map, multiplicative for q <= 16
    for (std::uint32_t r = 0; r < ring->q(); ++r) {
        RingElem z = ring->teichmuller(r);
        RingElem zq = z;
        for (std::uint64_t i = 1; i < ring->q(); ++i) zq = zq * z;
        rec.check(zq == z, "Teichmuller is a q-power fixed point", {{"residue", r}});
        rec.check(project(z, 1).index() == r, "Teichmuller lift has the right residue",
                  {{"residue", r}});
    }
    if (ring->q() <= 16) {
        for (std::uint32_t a = 0; a < ring->q(); ++a)
            for (std::uint32_t b = 0; b < ring->q(); ++b)
                rec.check(ring->teichmuller(a) * ring->teichmuller(b) ==
                              ring->teichmuller(ring->res_mul(a, b)),
                          "Teichmuller multiplicativity", {{"a", a}, {"b", b}});
    }

    // sampled arithmetic laws and valuation behavior
    for (rec.trial = 0; rec.trial < config.trials; ++rec.trial) {
        SplitMix64 rng = SplitMix64::substream(config.seed, (std::uint64_t)rec.trial);
        RingElem a = ring->elem((std::uint32_t)rng.below(size));
        RingElem b = ring->elem((std::uint32_t)rng.below(size));
        RingElem c = ring->elem((std::uint32_t)rng.below(size));
        rec.check(a + b == b + a, "addition commutes");
        rec.check(a * b == b * a, "multiplication commutes");
        rec.check((a + b) + c == a + (b + c), "addition associates");
        rec.check((a * b) * c == a * (b * c), "multiplication associates");
        rec.check(a * (b + c) == a * b + a * c, "distributivity");
        rec.check(a + (-a) == ring->zero(n), "additive inverse");

        int va = valuation(a), vb = valuation(b);
        rec.check(valuation(a + b) >= std::min(va, vb), "valuation superadditive on sums");
        if (va != vb)
            rec.check(valuation(a + b) == std::min(va, vb),
                      "valuation equality for distinct valuations");
        rec.check(valuation(a * b) == std::min(va + vb, n), "valuation of products");

        int k = (int)rng.below((std::uint64_t)n + 1);
        rec.check(project(a + b, k) == project(a, k) + project(b, k),
                  "projection is additive");
        rec.check(project(a * b, k) == project(a, k) * project(b, k),
                  "projection is multiplicative");
    }
    return rec.result;
}

// -- digits -------------------------------------------------------------------

SuiteResult run_digits_suite(const SuiteConfig& config) {
    Recorder rec;
    rec.result.name = "digits";
    rec.result.trials = config.trials;
    RingPtr ring = make_ring(config.ring);
    const int n = ring->depth();
    const std::uint64_t q = ring->q();
    CocycleFn cocycle = config.cocycle_fn;
    if (!cocycle)
        cocycle = [](const RingPtr& r, std::uint32_t alpha, int k, std::uint32_t x1,
                     std::uint32_t x2) { return carry_cocycle(r, alpha, k, x1, x2); };

    bool exhaustive = ring->size() <= 81;

    auto check_cocycle = [&](std::uint32_t alpha, int k, std::uint32_t x1, std::uint32_t x2) {
        std::uint32_t sigma = cocycle(ring, alpha, k, x1, x2);
        ordered_json witness{{"alpha", alpha}, {"k", k}, {"x1", x1}, {"x2", x2}, {"sigma", sigma}};
        rec.check(cocycle_membership(ring, alpha, k, x1, x2, sigma),
                  "carry digit satisfies the defining membership", witness);
        int solutions = 0;
        for (std::uint32_t s = 0; s < q; ++s)
            if (cocycle_membership(ring, alpha, k, x1, x2, s)) ++solutions;
        rec.check(solutions == 1, "carry digit is unique", witness);
        if (x2 == 0) rec.check(sigma == 0, "no carry from zero", witness);

        // digit-carry consistency: child sums match the carry relation,
        // exhaustively over the digit pairs on small rings
        RingElem xb1 = ring->elem(x1, k), xb2 = ring->elem(x2, k);
        RingElem alpha_lift = project(ring->teichmuller(alpha), k + 1);
        std::uint32_t a1_lo = 0, a1_hi = (std::uint32_t)q;
        std::uint32_t a2_lo = 0, a2_hi = (std::uint32_t)q;
        if (!exhaustive) {
            a1_lo = (std::uint32_t)(x1 * 7 % q);
            a1_hi = a1_lo + 1;
            a2_lo = (std::uint32_t)((x2 + alpha) % q);
            a2_hi = a2_lo + 1;
        }
        for (std::uint32_t alpha1 = a1_lo; alpha1 < a1_hi; ++alpha1)
            for (std::uint32_t alpha2 = a2_lo; alpha2 < a2_hi; ++alpha2) {
                RingElem lhs = child_label(xb1, alpha1) + alpha_lift * child_label(xb2, alpha2);
                std::uint32_t beta = (std::uint32_t)(lhs.index() / ring->level_size(k));
                rec.check(
                    ring->res_add(ring->res_add(alpha1, ring->res_mul(alpha, alpha2)), sigma) ==
                        beta,
                    "child digits compose through the carry",
                    {{"alpha", alpha}, {"k", k}, {"x1", x1}, {"x2", x2}, {"a1", alpha1}, {"a2", alpha2}});
            }
    };

    if (exhaustive) {
        for (int k = 0; k + 1 <= n; ++k)
            for (std::uint32_t alpha = 0; alpha < q; ++alpha)
                for (std::uint64_t x1 = 0; x1 < ring->level_size(k); ++x1)
                    for (std::uint64_t x2 = 0; x2 < ring->level_size(k); ++x2)
                        check_cocycle(alpha, k, (std::uint32_t)x1, (std::uint32_t)x2);
    } else {
        for (rec.trial = 0; rec.trial < config.trials; ++rec.trial) {
            SplitMix64 rng = SplitMix64::substream(config.seed, (std::uint64_t)rec.trial);
            int k = (int)rng.below((std::uint64_t)n);
            check_cocycle((std::uint32_t)rng.below(q), k,
                          (std::uint32_t)rng.below(ring->level_size(k)),
                          (std::uint32_t)rng.below(ring->level_size(k)));
        }
    }

    // section defect: no sampled section of the residue map into level 2 is
    // additive (unramified case)
    if (config.ring.e == 1 && n >= 2 && config.ring.p <= 5) {
        auto section_is_additive = [&](const std::vector<std::uint32_t>& sec) {
            for (std::uint32_t x1 = 0; x1 < q; ++x1)
                for (std::uint32_t x2 = 0; x2 < q; ++x2) {
                    std::uint32_t lhs = ring->add_idx(sec[x1], sec[x2], 2);
                    if (lhs != sec[ring->res_add(x1, x2)]) return false;
                }
            return true;
        };
        std::vector<std::uint32_t> teich_section(q);
        for (std::uint32_t r = 0; r < q; ++r) teich_section[r] = r;  // lift digits (r, 0)
        rec.trial = -1;
        rec.check(!section_is_additive(teich_section), "Teichmuller section is not additive");
        for (rec.trial = 0; rec.trial < std::max(config.trials, 1000); ++rec.trial) {
            SplitMix64 rng = SplitMix64::substream(config.seed ^ 0x5ec7104u, (std::uint64_t)rec.trial);
            std::vector<std::uint32_t> sec(q);
            for (std::uint32_t r = 0; r < q; ++r)
                sec[r] = (std::uint32_t)(r + q * rng.below(q));  // digits (r, random)
            rec.check(!section_is_additive(sec), "random section is not additive",
                      {{"section", sec}});
        }
    }
    return rec.result;
}

// -- sets ---------------------------------------------------------------------

SuiteResult run_sets_suite(const SuiteConfig& config) {
    Recorder rec;
    rec.result.name = "sets";
    rec.result.trials = config.trials;
    RingPtr ring = make_ring(config.ring);
    const int n = ring->depth();

    for (rec.trial = 0; rec.trial < config.trials; ++rec.trial) {
        SplitMix64 rng = SplitMix64::substream(config.seed, (std::uint64_t)rec.trial);
        RingSet x1 = random_nonempty(ring, n, rng);
        RingSet x2 = random_nonempty(ring, n, rng);

        // graded support is additive under products and unit-dilation invariant
        auto j1 = graded_support(x1), j2 = graded_support(x2);
        auto jp = graded_support(prodset(x1, x2));
        for (int a : j1)
            for (int b : j2) {
                if (a + b >= n) continue;
                rec.check(std::binary_search(jp.begin(), jp.end(), a + b),
                          "graded support adds under products",
                          {{"a", a}, {"b", b}, {"set1", set_to_json(x1)}, {"set2", set_to_json(x2)}});
            }
        std::uint32_t lambda = (std::uint32_t)rng.below(ring->size());
        if (!ring->is_unit_idx(lambda)) lambda = 1;
        auto jd = graded_support(dilate_set(ring->elem(lambda), x1));
        rec.check(jd == j1, "graded support is unit-dilation invariant", {{"lambda", lambda}});

        // valuation set agrees with the enumerated graded pieces
        for (int j = 0; j < n; ++j) {
            bool nonzero = false;
            for (auto r : graded_piece(x1, j).members())
                if (r != 0) nonzero = true;
            rec.check(nonzero == std::binary_search(j1.begin(), j1.end(), j),
                      "graded piece enumeration matches valuations", {{"j", j}});
        }

        // span monotonicity when 0, 1 are present
        rec.guarded([&] {
            RingSet with01 = x1;
            with01.insert(0);
            with01.insert(1);
            RingSet prev = sum_product_set(with01, 1, config.params.combine_guard);
            for (int c = 2; c <= 3; ++c) {
                RingSet next = sum_product_set(with01, c, config.params.combine_guard);
                rec.check(prev.is_subset_of(next), "span is monotone in the fold count",
                          {{"C", c}});
                prev = next;
            }
        });

        // combine size bounds and commutativity
        RingSet s = sumset(x1, x2);
        rec.check(s == sumset(x2, x1), "sumset commutes");
        rec.check(s.card() <= std::min((std::uint64_t)x1.card() * x2.card(), ring->size()),
                  "sumset size bound");
        rec.check(prodset(x1, x2) == prodset(x2, x1), "prodset commutes");

        // regularization: subset, regular, size bound, projection products
        auto [reg, profile] = regularize(x1);
        rec.check(reg.is_subset_of(x1), "regularized set is a subset");
        auto reprofile = regularity_profile(reg);
        rec.check(reprofile.has_value() && *reprofile == profile, "regularized set is regular");
        int log2q = 0;
        while ((2u << log2q) <= ring->q()) ++log2q;
        BigUint lhs = BigUint::pow(2ull * (std::uint64_t)(log2q + 1), (std::uint64_t)n);
        lhs = lhs * BigUint(reg.card());
        rec.check(lhs >= BigUint(x1.card()), "regularized set is large",
                  {{"card", x1.card()}, {"kept", reg.card()}});
        for (int k = 0; k <= n; ++k)
            rec.check((std::int64_t)project_set(reg, k).card() == profile.prefix_product(k),
                      "regular projections multiply the profile", {{"k", k}});
    }
    return rec.result;
}

// -- measures -------------------------------------------------------------------

bool conditional_convolution_decomposition(const RingPtr& ring, const RingSet& a,
                                           const RingSet& b, std::uint32_t alpha, int k,
                                           ordered_json* why) {
    const int n = ring->depth();
    FiniteMeasure pa = FiniteMeasure::counting(a);
    FiniteMeasure pb = FiniteMeasure::counting(b);
    FiniteMeasure conv = convolve(pa, dilate(ring->teichmuller(alpha, n), pb));
    FiniteMeasure conv_k = pushforward(conv, k);
    FiniteMeasure pa_k = pushforward(pa, k);
    FiniteMeasure pb_k = pushforward(pb, k);

    // fiber conditionals, computed once per surviving vertex
    std::vector<std::optional<FiniteMeasure>> cond_a(ring->level_size(k));
    std::vector<std::optional<FiniteMeasure>> cond_b(ring->level_size(k));
    for (std::uint32_t v = 0; v < ring->level_size(k); ++v) {
        if (!pa_k.weight(v).is_zero()) cond_a[v] = conditional_digit(pa, ring->elem(v, k));
        if (!pb_k.weight(v).is_zero()) cond_b[v] = conditional_digit(pb, ring->elem(v, k));
    }

    for (std::uint32_t xb = 0; xb < ring->level_size(k); ++xb) {
        if (conv_k.weight(xb).is_zero()) continue;
        FiniteMeasure lhs = conditional_digit(conv, ring->elem(xb, k));
        std::vector<Rational> rhs(ring->q(), Rational(0));
        for (std::uint32_t x1 = 0; x1 < ring->level_size(k); ++x1) {
            if (!cond_a[x1]) continue;
            for (std::uint32_t x2 = 0; x2 < ring->level_size(k); ++x2) {
                if (!cond_b[x2]) continue;
                if (ring->add_idx(x1, ring->mul_idx(alpha, x2, k), k) != xb) continue;
                Rational coef = pa_k.weight(x1) * pb_k.weight(x2) / conv_k.weight(xb);
                FiniteMeasure inner =
                    convolve(*cond_a[x1], dilate(ring->elem(alpha, 1), *cond_b[x2]));
                std::uint32_t shift = carry_cocycle(ring, alpha, k, x1, x2);
                FiniteMeasure shifted = translate(ring->elem(shift, 1), inner);
                for (std::uint32_t d = 0; d < ring->q(); ++d)
                    rhs[d] += coef * shifted.weight(d);
            }
        }
        for (std::uint32_t d = 0; d < ring->q(); ++d) {
            if (lhs.weight(d) != rhs[d]) {
                if (why)
                    *why = {{"alpha", alpha}, {"k", k},     {"vertex", xb},
                            {"digit", d},    {"lhs", lhs.weight(d).to_string()},
                            {"rhs", rhs[d].to_string()}};
                return false;
            }
        }
    }
    return true;
}

bool conditional_entropy_inequality(const RingPtr& ring, const RingSet& a, const RingSet& b,
                                    std::uint32_t alpha, int k, ordered_json* why) {
    const int n = ring->depth();
    FiniteMeasure pa = FiniteMeasure::counting(a);
    FiniteMeasure pb = FiniteMeasure::counting(b);
    FiniteMeasure conv = convolve(pa, dilate(ring->teichmuller(alpha, n), pb));
    double lhs = conditional_entropy(conv, {k + 1}, {k});

    RingSet pka = project_set(a, k), pkb = project_set(b, k);
    double sum = 0.0;
    for (auto x1 : pka.members())
        for (auto x2 : pkb.members()) {
            FiniteMeasure inner =
                convolve(conditional_digit(pa, ring->elem(x1, k)),
                         dilate(ring->elem(alpha, 1), conditional_digit(pb, ring->elem(x2, k))));
            sum += entropy(inner);
        }
    double rhs = sum / ((double)pka.card() * (double)pkb.card());
    if (lhs + kTol < rhs) {
        if (why) *why = {{"alpha", alpha}, {"k", k}, {"lhs", lhs}, {"rhs", rhs}};
        return false;
    }
    return true;
}

SuiteResult run_measures_suite(const SuiteConfig& config) {
    Recorder rec;
    rec.result.name = "measures";
    rec.result.trials = config.trials;
    RingPtr ring = make_ring(config.ring);
    const int n = ring->depth();

    for (rec.trial = 0; rec.trial < config.trials; ++rec.trial) {
        SplitMix64 rng = SplitMix64::substream(config.seed, (std::uint64_t)rec.trial);

        // entropy laws on a random measure
        FiniteMeasure mu = random_measure(ring, n, rng);
        int k = (int)rng.below((std::uint64_t)n + 1);
        double h = entropy(mu);
        rec.check(std::abs(h - partition_entropy(mu, {k}) - conditional_entropy(mu, {n}, {k})) <=
                      kTol,
                  "entropy chain rule", {{"k", k}});
        rec.check(h <= std::log((double)mu.support_size()) + kTol, "entropy support bound");
        rec.check(h + kTol >= -std::log(l2_norm_sq(mu).to_double()), "entropy collision bound");

        FiniteMeasure nu = random_measure(ring, n, rng);
        std::int64_t wa = (std::int64_t)rng.below(7) + 1, wb = (std::int64_t)rng.below(7) + 1;
        Rational ca(wa, wa + wb), cb(wb, wa + wb);
        std::vector<Rational> mix(mu.carrier_size());
        for (std::uint32_t i = 0; i < mu.carrier_size(); ++i)
            mix[i] = ca * mu.weight(i) + cb * nu.weight(i);
        FiniteMeasure mixed(ring, n, std::move(mix));
        rec.check(entropy(mixed) + kTol >= ca.to_double() * entropy(mu) +
                                               cb.to_double() * entropy(nu),
                  "entropy concavity");

        // convolution identities
        rec.check(convolve(FiniteMeasure::point_mass(ring->zero(n)), mu) == mu,
                  "point mass at zero is the convolution identity");
        rec.check(dilate(ring->zero(n), mu) == FiniteMeasure::point_mass(ring->zero(n)),
                  "dilation by zero collapses to the point mass");

        // exact scalar-energy average on residue-field sets
        RingSet abar = random_nonempty(ring, 1, rng);
        RingSet bbar = random_nonempty(ring, 1, rng);
        auto avg = avg_scalar_energy(abar, bbar);
        rec.check(avg.empirical == avg.closed_form, "scalar energy average closed form",
                  {{"A", set_to_json(abar)}, {"B", set_to_json(bbar)}});
        Rational cap(1);
        Rational bound = Rational(1, (std::int64_t)(abar.card() * bbar.card())) +
                         Rational(1, (std::int64_t)ring->q());
        rec.check(avg.empirical <= (cap < bound ? cap : bound),
                  "scalar energy average obeys the min bound");

        // conditional convolution decomposition on a regular pair (small rings)
        if (ring->size() <= 64) {
            RingSet a = regularize(random_nonempty(ring, n, rng)).first;
            RingSet b = regularize(random_nonempty(ring, n, rng)).first;
            std::uint32_t alpha = (std::uint32_t)rng.below(ring->q() - 1) + 1;
            ordered_json why;
            for (int kk = 0; kk < n; ++kk) {
                rec.check(conditional_convolution_decomposition(ring, a, b, alpha, kk, &why),
                          "conditional convolution decomposition", why);
                rec.check(conditional_entropy_inequality(ring, a, b, alpha, kk, &why),
                          "conditional entropy inequality", why);
            }
        }
    }
    return rec.result;
}

// -- density --------------------------------------------------------------------

namespace {

TailSet random_tailset(SplitMix64& rng, std::int64_t max_t, bool force_zero) {
    std::int64_t t = (std::int64_t)rng.below((std::uint64_t)max_t) + 1;
    std::vector<std::int64_t> finite;
    if (force_zero) finite.push_back(0);
    for (std::int64_t v = 0; v < t; ++v)
        if (rng.coin()) finite.push_back(v);
    return TailSet(std::move(finite), true, t);
}

}  // namespace

SuiteResult run_density_suite(const SuiteConfig& config) {
    Recorder rec;
    rec.result.name = "density";
    rec.result.trials = config.trials;

    for (rec.trial = 0; rec.trial < config.trials; ++rec.trial) {
        SplitMix64 rng = SplitMix64::substream(config.seed, (std::uint64_t)rec.trial);

        // sumset oracle on a window, then Mann's inequality
        TailSet x = random_tailset(rng, 24, true);
        TailSet y = random_tailset(rng, 24, true);
        TailSet s = tail_sumset(x, y);
        std::int64_t window = 3 * (x.threshold() + y.threshold()) + 3;
        for (std::int64_t v = 0; v <= window; ++v) {
            bool direct = false;
            for (std::int64_t u = 0; u <= v && !direct; ++u)
                if (x.contains(u) && y.contains(v - u)) direct = true;
            rec.check(s.contains(v) == direct, "tail sumset matches the direct oracle",
                      {{"v", v}});
        }
        auto mann = mann_check(x, y);
        rec.check(mann.ok, "Mann density inequality",
                  {{"violating_n", mann.violating_n ? ordered_json(*mann.violating_n)
                                                    : ordered_json(nullptr)}});

        // shift defect: both formulas agree, subadditive over all pairs
        int len = (int)rng.below(63) + 2;
        ProfileStats stats;
        stats.q = 4;
        stats.n = len;
        stats.m.assign((std::size_t)len, 1);
        for (int i = 0; i < len; ++i)
            if (rng.coin()) {
                stats.m[(std::size_t)i] = 2;
                stats.b_set.push_back(i);
                stats.t_set.push_back(i);
            }
        for (int k = 0; k < len; ++k) {
            int direct = shift_defect(stats, k);
            int mirrored = 0;
            for (int i : stats.t_set) {
                int shifted = i + k;
                if (shifted > len - 1) continue;
                if (!std::binary_search(stats.t_set.begin(), stats.t_set.end(), shifted))
                    ++mirrored;
            }
            rec.check(direct == mirrored, "shift defect formulas agree", {{"k", k}});
        }
        for (int k1 = 1; k1 < len; ++k1)
            for (int k2 = 1; k1 + k2 < len; ++k2)
                rec.check(shift_defect(stats, k1 + k2) <=
                              shift_defect(stats, k1) + shift_defect(stats, k2),
                          "shift defect is subadditive", {{"k1", k1}, {"k2", k2}});

        // interval cover under the index hypotheses
        std::int64_t qs[] = {4, 8, 9, 16};
        std::int64_t q = qs[rng.below(4)];
        int levels = (int)rng.below(12) + 4;
        GradedProfile profile;
        for (int i = 0; i < levels; ++i) profile.m.push_back((std::int64_t)rng.below((std::uint64_t)q) + 1);
        ProfileStats ps = profile_stats(profile, q);
        Rational eps(1, 2), delta(1, 16);
        if (profile_meets_hypotheses(ps, eps, delta)) {
            auto cover = large_interval_cover(ps, eps, delta);
            rec.check(cover.ok, "interval covered by bounded sums",
                      {{"m", profile.m}, {"q", q}});
        }
    }
    return rec.result;
}

// -- procedures -------------------------------------------------------------------

namespace {

RingSet field_closure_oracle(const RingPtr& ring, const RingSet& b) {
    RingSet s = b;
    s.insert(0);
    s.insert(1);
    for (;;) {
        RingSet next = s;
        auto mem = s.members();
        for (auto x : mem)
            for (auto y : mem) {
                next.insert(ring->res_add(x, y));
                next.insert(ring->res_mul(x, y));
            }
        if (next == s) return s;
        s = next;
    }
}

}  // namespace

SuiteResult run_procedures_suite(const SuiteConfig& config) {
    Recorder rec;
    rec.result.name = "procedures";
    rec.result.trials = config.trials;
    RingPtr ring = make_ring(config.ring);
    const int n = ring->depth();

    // subfield closure against the field-operations oracle, exhaustively
    // over the small fields
    for (RingParams fp : {RingParams{2, 2, 1, 1}, RingParams{2, 3, 1, 1}, RingParams{3, 2, 1, 1}}) {
        RingPtr field = make_ring(fp);
        std::uint64_t q = field->q();
        for (std::uint64_t code = 0; code < (1ull << (q - 2)); ++code) {
            RingSet b(field, 1);
            b.insert(0);
            b.insert(1);
            std::uint64_t c = code;
            for (std::uint32_t r = 2; r < q; ++r, c >>= 1)
                if (c & 1) b.insert(r);
            auto closure = subfield_closure(b);
            rec.check(closure.field == field_closure_oracle(field, b),
                      "subfield closure equals the field oracle",
                      {{"q", q}, {"set", set_to_json(b)}});
        }
    }

    for (rec.trial = 0; rec.trial < config.trials; ++rec.trial) {
        SplitMix64 rng = SplitMix64::substream(config.seed, (std::uint64_t)rec.trial);

        // scalar-sum growth of a regular pair beats the profile bound
        RingSet a = regularize(random_nonempty(ring, n, rng)).first;
        RingSet b = regularize(random_nonempty(ring, n, rng)).first;
        auto pa = regularity_profile(a), pb = regularity_profile(b);
        Rational bound = scalar_sum_bound(*pa, *pb, (std::int64_t)ring->q());
        auto emp = empirical_scalar_sum(a, b);
        rec.check(Rational(emp.max_size) >= bound, "scalar-sum growth respects the bound",
                  {{"empirical", emp.max_size},
                   {"bound", bound.to_string()},
                   {"A", set_to_json(a)},
                   {"B", set_to_json(b)}});

        // bounded generation: found certificates verify; reductions re-verify
        RingSet seed_set = random_nonempty(ring, n, rng);
        seed_set.insert(0);
        seed_set.insert(1);
        rec.guarded([&] {
            auto search = bg_search(seed_set, config.params.eps2, config.params);
            if (!search.cert) return;
            rec.check(verify_bg(seed_set, *search.cert, config.params.combine_guard),
                      "certificate verifies independently");
            auto step = reduce_or_inject(seed_set, *search.cert, config.params.delta0,
                                         config.params);
            if (step.reduced) {
                rec.check(step.cert.verified, "reduced certificate re-verifies",
                          {{"cert", certificate_to_json(step.cert)}});
            } else if (step.closeness_level >= 1 &&
                       config.params.delta0 > search.cert->eps) {
                auto closure =
                    additive_closure_check(seed_set, search.cert->c_fold, search.cert->eps,
                                           config.params.delta0, config.params.combine_guard);
                rec.check(closure.closed,
                          "injectivity implies projected additive closure",
                          {{"cert", certificate_to_json(*search.cert)}});
            }
        });

        // grading detection stays within the ramification bound: once the
        // span holds p-fold sums of 1, the valuation e of p is present
        rec.guarded([&] {
            int c1 = std::max(2, (int)((config.ring.p + 1) / 2));
            auto grading = min_nonzero_grading(seed_set, c1, config.params.combine_guard);
            if (grading.e0 && config.ring.e < n)
                rec.check(*grading.e0 <= config.ring.e,
                          "minimal grading bounded by the ramification index",
                          {{"e0", *grading.e0}});
        });

        // tail extraction postconditions on a regular set
        auto te = extract_tail_set(a, Rational(1, 2));
        rec.check(te.m + te.nbar == n, "tail extraction splits the depth");
        rec.check(te.tail_profile.m ==
                      std::vector<std::int64_t>(pa->m.begin() + te.nbar, pa->m.end()),
                  "tail profile is the suffix of the original");
    }
    return rec.result;
}

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteConfig& config) {
    std::vector<SuiteResult> out;
    auto want = [&](const std::string& s) { return name == "all" || name == s; };
    if (want("ring")) out.push_back(run_ring_suite(config));
    if (want("digits")) out.push_back(run_digits_suite(config));
    if (want("sets")) out.push_back(run_sets_suite(config));
    if (want("measures")) out.push_back(run_measures_suite(config));
    if (want("density")) out.push_back(run_density_suite(config));
    if (want("procedures")) out.push_back(run_procedures_suite(config));
    if (out.empty()) throw std::invalid_argument("unknown suite: " + name);
    return out;
}

// -- hypothesis-set generation ----------------------------------------------------

bool verify_hypotheses(const RingSet& s, const Rational& eps,
                       const std::vector<int>& witness_vals) {
    if (s.empty()) return false;
    const auto& ring = s.ring();
    const int n = s.level();
    for (int i = 1; i <= n; ++i)
        if (!meets_power_bound(project_set(s, i).card(), ring->q(), i, eps)) return false;
    if (!witness_vals.empty()) {
        RingSet diffs = diffset(s, s);
        auto support = graded_support(diffs);
        for (int v : witness_vals) {
            if (v == n) continue;  // 0 is always a difference
            if (!std::binary_search(support.begin(), support.end(), v)) return false;
        }
    }
    return true;
}

RingSet generate_hypothesis_set(const GenerateConfig& config) {
    RingPtr ring = make_ring(config.ring);
    const int n = ring->depth();
    for (int v : config.witness_vals)
        if (v < 0 || v > n) throw std::invalid_argument("generate: witness valuation out of range");
    if (config.eps > Rational(1) || config.eps < Rational(0))
        throw std::invalid_argument("generate: eps must lie in [0, 1]");

    std::size_t min_card = std::min<std::size_t>(config.min_card, ring->size());
    RingSet s(ring, n);
    s.insert(0);
    s.insert(1);
    for (int v : config.witness_vals)
        if (v < n) s.insert((std::uint32_t)ring->level_size(v));  // p^v, a valuation-v witness

    std::vector<std::uint64_t> targets((std::size_t)n + 1, 1);
    for (int i = 1; i <= n; ++i)
        targets[(std::size_t)i] = ceil_power(ring->q(), i, config.eps, ring->level_size(i));

    SplitMix64 rng = SplitMix64::substream(config.seed, 0);
    auto deficient = [&]() {
        for (int i = 1; i <= n; ++i)
            if (project_set(s, i).card() < targets[(std::size_t)i]) return true;
        return s.card() < min_card;
    };
    std::uint64_t budget = 64 * ring->size() + 4096;
    while (deficient() && budget-- > 0) s.insert((std::uint32_t)rng.below(ring->size()));
    for (std::uint32_t i = 0; deficient() && i < ring->size(); ++i) s.insert(i);

    if (!verify_hypotheses(s, config.eps, config.witness_vals))
        throw std::logic_error("generate: constructed set fails its own hypotheses");
    return s;
}

}  // namespace sumprod
