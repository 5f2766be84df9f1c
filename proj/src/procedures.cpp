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

#include "sumprod/procedures.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumprod {

namespace {

Rational rational_pow(const Rational& base, int exp) {
    Rational r(1);
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::uint64_t checked_ceil(const Rational& r, std::int64_t n) {
    std::int64_t v = ceil_scale(r, n);
    if (v < 0 || v > n) throw std::invalid_argument("procedures: exponent scales outside [0, n]");
    return (std::uint64_t)v;
}

}  // namespace

Rational scalar_sum_bound(const GradedProfile& a, const GradedProfile& b, std::int64_t q) {
    if (a.levels() != b.levels()) throw std::invalid_argument("scalar_sum_bound: profile length mismatch");
    Rational bound(1);
    for (int i = 0; i < a.levels(); ++i) {
        // (1/(m l) + 1/q)^-1 = q m l / (q + m l)
        Rational factor(q * a.m[i] * b.m[i], q + a.m[i] * b.m[i]);
        if (factor > Rational(1)) bound *= factor;
    }
    return bound;
}

ScalarSumMax empirical_scalar_sum(const RingSet& a, const RingSet& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("scalar sum: empty set");
    const auto& ring = a.ring();
    const int level = a.level();
    ScalarSumMax out;
    for (std::uint32_t omega = 1; omega < ring->q(); ++omega) {
        RingSet shifted = sumset(a, dilate_set(ring->teichmuller(omega, level), b));
        if ((std::int64_t)shifted.card() > out.max_size) {
            out.max_size = (std::int64_t)shifted.card();
            out.omega = omega;
        }
    }
    return out;
}

RingSet bg_cover_set(const RingSet& a, const ScalarList& scalars, int c_fold,
                     std::uint64_t guard) {
    RingSet span = sum_product_set(a, c_fold, guard);
    RingSet cover = span;
    for (auto alpha : scalars)
        cover = sumset(cover, dilate_set(a.ring()->teichmuller(alpha, a.level()), span));
    return cover;
}

bool verify_bg(const RingSet& a, const BGCertificate& cert, std::uint64_t guard) {
    std::uint64_t m = checked_ceil(cert.eps, a.level());
    RingSet target = valuation_ball(a.ring(), a.level(), (int)m);
    return target.is_subset_of(bg_cover_set(a, cert.scalars, cert.c_fold, guard));
}

BGSearchResult bg_search(const RingSet& a, const Rational& eps, const ProcedureParams& params) {
    if (a.empty()) throw std::invalid_argument("bg_search: empty set");
    const auto& ring = a.ring();
    const int level = a.level();
    const std::uint32_t q = (std::uint32_t)ring->q();
    std::uint64_t m = checked_ceil(eps, level);
    RingSet target = valuation_ball(ring, level, (int)m);

    BGSearchResult result;
    std::vector<std::optional<RingSet>> span_memo((std::size_t)params.max_fold + 1);
    auto span_of = [&](int c) -> const RingSet& {
        auto& slot = span_memo[(std::size_t)c];
        if (!slot) slot = sum_product_set(a, c, params.combine_guard);
        return *slot;
    };

    for (int k = 0; k <= params.max_scalars; ++k) {
        for (int c = 1; c <= params.max_fold; ++c) {
            const RingSet* span = nullptr;
            try {
                span = &span_of(c);
            } catch (const cost_guard_error&) {
                result.caps_exhausted = true;
                break;
            }
            if (k == 0) {
                if (target.is_subset_of(*span)) {
                    result.cert = BGCertificate{{}, c, eps, true};
                    return result;
                }
                continue;
            }

            std::uint64_t step_cost = (std::uint64_t)(q - 1) * span->card() * span->card();
            if (step_cost > params.search_guard) {
                result.caps_exhausted = true;
                continue;
            }
            std::vector<RingSet> dil;
            dil.reserve(q);
            dil.emplace_back();  // residue 0 unused
            for (std::uint32_t alpha = 1; alpha < q; ++alpha)
                dil.push_back(dilate_set(ring->teichmuller(alpha, level), *span));

            // greedy: extend by the scalar adding the most target coverage
            RingSet covered = *span;
            ScalarList chosen;
            for (int step = 0; step < k; ++step) {
                std::uint32_t best_alpha = 1;
                std::size_t best_cover = 0;
                RingSet best_set;
                for (std::uint32_t alpha = 1; alpha < q; ++alpha) {
                    RingSet cand = sumset(covered, dil[alpha]);
                    std::size_t cover = intersect_set(cand, target).card();
                    if (cover > best_cover) {
                        best_cover = cover;
                        best_alpha = alpha;
                        best_set = std::move(cand);
                    }
                }
                covered = best_set.ring() ? std::move(best_set) : sumset(covered, dil[1]);
                chosen.push_back(best_alpha);
            }
            if (target.is_subset_of(covered)) {
                result.cert = BGCertificate{chosen, c, eps, true};
                return result;
            }

            // exhaustive over non-decreasing scalar tuples for small k
            if (k > 3) continue;
            std::uint64_t tuples = 1;
            for (int i = 0; i < k; ++i) tuples *= (q - 1 + (std::uint64_t)i);
            for (int i = 2; i <= k; ++i) tuples /= (std::uint64_t)i;
            if (tuples * span->card() * span->card() > params.search_guard) {
                result.caps_exhausted = true;
                continue;
            }
            ScalarList stack;
            std::vector<RingSet> prefix{*span};
            auto dfs = [&](auto&& self, std::uint32_t from) -> bool {
                if ((int)stack.size() == k) return target.is_subset_of(prefix.back());
                for (std::uint32_t alpha = from; alpha < q; ++alpha) {
                    stack.push_back(alpha);
                    prefix.push_back(sumset(prefix.back(), dil[alpha]));
                    if (self(self, alpha)) return true;
                    prefix.pop_back();
                    stack.pop_back();
                }
                return false;
            };
            if (dfs(dfs, 1)) {
                result.cert = BGCertificate{stack, c, eps, true};
                return result;
            }
        }
    }
    return result;
}

ReduceOrInject reduce_or_inject(const RingSet& a, const BGCertificate& cert,
                                const Rational& delta0, const ProcedureParams& params) {
    if (delta0 <= Rational(0) || delta0 >= Rational(1))
        throw std::invalid_argument("reduce_or_inject: delta0 must lie in (0, 1)");
    const auto& ring = a.ring();
    const int level = a.level();
    const int k = (int)cert.scalars.size();
    ReduceOrInject out;
    out.closeness_level = (int)floor_scale(delta0, level);
    if (out.closeness_level <= 0) return out;  // everything is within the trivial ball
    if (k == 0) return out;  // a bare scalar sum collides only with itself

    RingSet span2 = sum_product_set(a, 2 * cert.c_fold, params.combine_guard);
    RingSet diffs = diffset(span2, span2);
    auto diff_members = diffs.members();

    std::vector<std::uint32_t> far;
    for (auto d : diff_members)
        if (ring->val_idx(d, level) < out.closeness_level) far.push_back(d);
    if (far.empty()) return out;

    // residue coefficients of the scalar sum, coordinate 0 carrying 1
    std::vector<std::uint32_t> coeff{1};
    coeff.insert(coeff.end(), cert.scalars.begin(), cert.scalars.end());

    if ((std::uint64_t)(k + 1) * diffs.card() * diffs.universe_size() > params.search_guard)
        throw cost_guard_error("reduce_or_inject: collision scan exceeds cost guard");

    for (int far_coord = 0; far_coord <= k; ++far_coord) {
        // partial sums of the remaining coordinates' dilated difference sets
        std::vector<int> coords;
        for (int i = 0; i <= k; ++i)
            if (i != far_coord) coords.push_back(i);
        std::vector<RingSet> partial;
        partial.push_back(RingSet::of(ring, level, {0}));
        for (int i : coords) {
            RingElem c = ring->teichmuller(coeff[(std::size_t)i], level);
            partial.push_back(sumset(partial.back(), dilate_set(c, diffs)));
        }
        RingElem cf = ring->teichmuller(coeff[(std::size_t)far_coord], level);
        for (auto d : far) {
            std::uint32_t t = ring->neg_idx(ring->mul_idx(cf.index(), d, level), level);
            if (!partial.back().contains(t)) continue;
            // reconstruct the remaining coordinates of the collision
            std::vector<std::uint32_t> diff_vec((std::size_t)k + 1, 0);
            diff_vec[(std::size_t)far_coord] = d;
            std::uint32_t residual = t;
            for (std::size_t j = coords.size(); j-- > 0;) {
                RingElem cj = ring->teichmuller(coeff[(std::size_t)coords[j]], level);
                for (auto dj : diff_members) {
                    std::uint32_t back =
                        ring->sub_idx(residual, ring->mul_idx(cj.index(), dj, level), level);
                    if (partial[j].contains(back)) {
                        diff_vec[(std::size_t)coords[j]] = dj;
                        residual = back;
                        break;
                    }
                }
            }
            out.witness = CollisionWitness{diff_vec, far_coord};

            // rebuild the certificate with one scalar fewer
            ScalarList reduced;
            if (far_coord == 0) {
                std::uint32_t inv = ring->res_inv(cert.scalars[0]);
                for (std::size_t i = 1; i < cert.scalars.size(); ++i)
                    reduced.push_back(ring->res_mul(cert.scalars[i], inv));
            } else {
                for (int i = 1; i <= k; ++i)
                    if (i != far_coord) reduced.push_back(cert.scalars[(std::size_t)i - 1]);
            }
            BGCertificate next{reduced, 8 * cert.c_fold, cert.eps + delta0, false};
            next.verified = verify_bg(a, next, params.combine_guard);
            out.reduced = true;
            out.cert = next;
            return out;
        }
    }
    return out;  // delta0-injective
}

ClosureCheck additive_closure_check(const RingSet& a, int c_fold, const Rational& eps,
                                    const Rational& delta0, std::uint64_t guard) {
    const int level = a.level();
    int m1 = (int)checked_ceil(eps, level);
    int m0 = (int)floor_scale(delta0, level);
    if (m0 < 1) throw std::invalid_argument("closure check: floor(delta0 * level) must be >= 1");
    RingSet inner = intersect_set(sum_product_set(a, c_fold, guard),
                                  valuation_ball(a.ring(), level, m1));
    RingSet s = project_set(inner, m0);
    auto mem = s.members();
    for (auto x : mem)
        for (auto y : mem)
            if (!s.contains(a.ring()->add_idx(x, y, m0))) return {false, std::make_pair(x, y)};
    return {true, std::nullopt};
}

namespace {

bool is_subfield(const RingSet& s) {
    if (s.level() != 1) return false;
    if (!s.contains(0) || !s.contains(1)) return false;
    auto mem = s.members();
    for (auto x : mem)
        for (auto y : mem) {
            if (!s.contains(s.ring()->res_add(x, y))) return false;
            if (!s.contains(s.ring()->res_mul(x, y))) return false;
        }
    return true;
}

}  // namespace

SubfieldClosure subfield_closure(const RingSet& b, std::uint64_t guard) {
    if (b.level() != 1) throw std::invalid_argument("subfield closure: needs a residue-field set");
    if (!b.contains(0) || !b.contains(1))
        throw std::invalid_argument("subfield closure: set must contain 0 and 1");
    for (int c = 1; c <= (1 << 20); c *= 2) {
        RingSet span = sum_product_set(b, c, guard);
        if (is_subfield(span)) return {span, c};
    }
    throw std::logic_error("subfield closure: no stabilization");  // unreachable
}

GradingDetect min_nonzero_grading(const RingSet& a, int c1, std::uint64_t guard) {
    if (a.empty()) throw std::invalid_argument("grading: empty set");
    const auto& ring = a.ring();
    const int level = a.level();
    GradingDetect out;
    RingSet diffs = diffset(a, a);
    std::uint32_t unit = 0;
    for (auto d : diffs.members())
        if (ring->is_unit_idx(d)) {
            unit = d;
            break;
        }
    if (unit == 0) {
        out.normalized = a;
        out.note = "no unit among differences";
        return out;
    }
    out.unit_found = true;
    RingElem inv = ring->elem(ring->inv_idx(unit, level), level);
    out.normalized = dilate_set(inv, diffs);
    RingSet span = sum_product_set(out.normalized, 2 * c1, guard);
    auto support = graded_support(span);
    for (int j : support)
        if (j > 0 && j < level) {
            out.e0 = j;
            break;
        }
    if (!out.e0) out.note = "no nonzero non-unit in the span";
    return out;
}

TailExtract extract_tail_set(const RingSet& a_regular, const Rational& eps) {
    auto profile = regularity_profile(a_regular);
    if (!profile) throw std::invalid_argument("tail extract: set is not regular");
    const auto& ring = a_regular.ring();
    const int level = a_regular.level();
    const Rational quarter_eps = eps * Rational(1, 4);

    TailExtract out;
    std::uint64_t prefix = 1;
    for (int k = 1; k <= level - 1; ++k) {
        prefix *= (std::uint64_t)profile->m[(std::size_t)k - 1];
        if (!meets_power_bound(prefix, ring->q(), k, quarter_eps)) out.nbar = k;
    }
    out.m = level - out.nbar;
    out.n_prime = out.nbar;

    std::uint32_t xi = project_set(a_regular, out.nbar).members().front();
    RingSet tail(ring, out.m);
    std::uint64_t qn = ring->level_size(out.nbar);
    for (auto x : a_regular.members()) {
        if (x % qn != xi) continue;
        std::uint32_t d = ring->sub_idx(x, xi, level);  // valuation >= nbar
        tail.insert((std::uint32_t)(d / qn));
    }
    out.tail = tail;
    auto tail_profile = regularity_profile(tail);
    if (!tail_profile) throw std::logic_error("tail extract: translated fiber lost regularity");
    out.tail_profile = *tail_profile;

    out.projection_bounds_ok = true;
    for (int i = 1; i <= out.m; ++i) {
        std::uint64_t count = project_set(tail, i).card();
        if (!meets_power_bound(count, ring->q(), i, quarter_eps)) {
            out.projection_bounds_ok = false;
            break;
        }
    }
    return out;
}

DenseFiberExtract dense_fiber_extract(const RingSet& a, const ProcedureParams& params) {
    if (a.empty()) throw std::invalid_argument("fiber extract: empty set");
    const auto& ring = a.ring();
    const int level = a.level();
    DenseFiberExtract out;
    BigUint card4 = BigUint::pow(a.card(), 4);
    for (int k = 1; k <= level - 1; ++k) {
        std::uint64_t qk = ring->level_size(k);
        std::vector<std::uint32_t> fiber_count((std::size_t)qk, 0);
        for (auto x : a.members()) ++fiber_count[x % qk];
        std::uint64_t best = *std::max_element(fiber_count.begin(), fiber_count.end());
        if (BigUint::pow(best, 4) * BigUint::pow(ring->q(), 3 * (std::uint64_t)k) > card4)
            out.n0 = k;
    }
    // densest fiber at level n0 (ties to the smallest vertex), renormalized
    std::uint64_t qn = ring->level_size(out.n0);
    std::vector<std::uint32_t> fiber_count((std::size_t)qn, 0);
    for (auto x : a.members()) ++fiber_count[x % qn];
    std::uint32_t xi = 0;
    for (std::uint32_t v = 1; v < qn; ++v)
        if (fiber_count[v] > fiber_count[xi]) xi = v;
    RingSet fiber(ring, level - out.n0);
    for (auto x : a.members()) {
        if (x % qn != xi) continue;
        std::uint32_t d = ring->sub_idx(x, xi, level);
        fiber.insert((std::uint32_t)(d / qn));
    }
    out.fiber = fiber;
    for (int c = 1; c <= params.saturation_cap; ++c) {
        RingSet span = sum_product_set(fiber, c, params.combine_guard);
        if (span.card() == span.universe_size()) {
            out.saturation_c = c;
            break;
        }
    }
    out.cap_reached = !out.saturation_c.has_value();
    return out;
}

PropagationReport propagate_coverage(const RingSet& a, int m, const Rational& eps2,
                                     const BGCertificate& cert, const ProcedureParams& params) {
    if (m < 1) throw std::invalid_argument("propagate: m must be >= 1");
    const auto& ring = a.ring();
    const int level = a.level();
    PropagationReport out;
    Rational deep = rational_pow(eps2, m);
    out.level_m = (int)floor_scale(rational_pow(eps2, m - 1), level);
    out.target_valuation = (int)checked_ceil(deep, level);
    if (out.level_m < 1 || out.level_m > level)
        throw std::invalid_argument("propagate: reduced level out of range");

    RingSet diffs = diffset(a, a);
    std::int64_t j_max = floor_scale(Rational(1) / deep, 1);
    std::vector<RingElem> witnesses;
    for (std::int64_t j = 1; j <= j_max; ++j) {
        int want = (int)floor_scale(deep * Rational(j), level);
        std::optional<std::uint32_t> found;
        for (auto d : diffs.members())
            if (ring->val_idx(d, level) == want) {
                found = d;
                break;
            }
        if (found)
            witnesses.push_back(ring->elem(*found, level));
        else
            out.missing_witness_j.push_back((int)j);
    }

    out.cert_ok = verify_bg(project_set(a, out.level_m), cert, params.combine_guard);
    if (!out.missing_witness_j.empty()) return out;

    RingSet assembled = bg_cover_set(a, cert.scalars, cert.c_fold, params.combine_guard);
    RingSet base = assembled;
    for (const auto& x : witnesses) assembled = sumset(assembled, dilate_set(x, base));
    out.covered =
        valuation_ball(ring, level, out.target_valuation).is_subset_of(assembled);
    return out;
}

namespace {

// bounded generation, reduction loop, and segment search over one working set
void run_bg_and_segment(const RingSet& working, const ProcedureParams& params,
                        PipelineResult& out) {
    try {
        BGSearchResult search = bg_search(working, params.eps2, params);
        out.cert = search.cert;
        while (out.cert && !out.cert->scalars.empty()) {
            ReduceOrInject step = reduce_or_inject(working, *out.cert, params.delta0, params);
            if (step.reduced && step.cert.verified) {
                out.cert = step.cert;
                ++out.reductions;
            } else if (step.reduced) {
                out.note += "[reduced certificate failed re-verification]";
                break;
            } else {
                out.injectivity_halt = true;
                break;
            }
        }
        if (out.cert) {
            RingSet covered =
                bg_cover_set(working, out.cert->scalars, out.cert->c_fold, params.combine_guard);
            out.witness = segment_search(covered, 1);
        }
    } catch (const cost_guard_error& e) {
        out.note += std::string("[") + e.what() + "]";
    }
    // escalate the plain span until a segment appears
    for (int c = 1; !out.witness && c <= params.max_fold; ++c) {
        try {
            out.witness = segment_search(sum_product_set(working, c, params.combine_guard), 1);
        } catch (const cost_guard_error& e) {
            out.note += std::string("[") + e.what() + "]";
            break;
        }
    }
}

}  // namespace

PipelineResult segment_pipeline(const RingSet& a, const Rational& eps,
                                const ProcedureParams& params) {
    PipelineResult out;
    auto [regular, profile] = regularize(a);
    out.profile = profile;
    out.tail = extract_tail_set(regular, eps);

    // preferred route: the renormalized tail of the regular core
    GradingDetect grading = min_nonzero_grading(out.tail.tail, 2, params.combine_guard);
    out.e0 = grading.e0;
    if (out.tail.tail.card() >= 2 && grading.unit_found)
        run_bg_and_segment(grading.normalized, params, out);

    // at desk scale the regular core of a sparse set can collapse (the
    // dyadic-pigeonhole constant is vacuous for tiny residue fields); fall
    // back to the normalized differences of the original set, which the
    // hypotheses keep dense
    if (!out.witness) {
        GradingDetect full = min_nonzero_grading(a, 2, params.combine_guard);
        if (!out.e0) out.e0 = full.e0;
        if (full.unit_found) {
            out.note += "[tail route gave no witness; using normalized differences]";
            run_bg_and_segment(full.normalized, params, out);
        }
    }
    return out;
}

}  // namespace sumprod
