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

#include <doctest.h>

#include "sumprod/procedures.hpp"
#include "sumprod/rng.hpp"
#include "sumprod/suites.hpp"

using namespace sumprod;

TEST_CASE("scalar-sum bound of a regular profile pair") {
    GradedProfile p{{2, 1}};
    CHECK(scalar_sum_bound(p, p, 5) == Rational(20, 9));
    GradedProfile ones{{1, 1, 1}};
    CHECK(scalar_sum_bound(ones, ones, 7) == Rational(1));
    CHECK_THROWS_AS(scalar_sum_bound(p, ones, 5), std::invalid_argument);
}

TEST_CASE("empirical scalar sums beat the bound on {0,1} mod 25") {
    RingPtr r = make_ring({5, 1, 1, 2});
    RingSet a = RingSet::of(r, 2, {0, 1});
    auto emp = empirical_scalar_sum(a, a);
    CHECK(emp.max_size == 4);
    CHECK(emp.omega == 2);  // teich(2) = 7 mod 25 gives {0, 1, 7, 8}
    auto profile = regularity_profile(a);
    REQUIRE(profile.has_value());
    CHECK(Rational(emp.max_size) >= scalar_sum_bound(*profile, *profile, 5));
}

TEST_CASE("bounded generation search finds minimal certificates") {
    ProcedureParams params;
    RingPtr f3 = make_ring({3, 1, 1, 1});
    RingSet a3 = RingSet::of(f3, 1, {0, 1});
    auto res = bg_search(a3, Rational(0), params);
    REQUIRE(res.cert.has_value());
    CHECK(res.cert->scalars.empty());  // {0,1} - {0,1} already fills F_3
    CHECK(res.cert->c_fold == 1);
    CHECK(verify_bg(a3, *res.cert));
    // the two-scalar certificate from the wider family also verifies
    BGCertificate wide{{1, 2}, 1, Rational(0), false};
    CHECK(verify_bg(a3, wide));

    RingPtr r4 = make_ring({2, 1, 1, 2});
    RingSet a4 = RingSet::of(r4, 2, {0, 1});
    auto res4 = bg_search(a4, Rational(0), params);
    REQUIRE(res4.cert.has_value());
    CHECK(res4.cert->scalars.empty());
    CHECK(res4.cert->c_fold == 2);  // the 1-fold span {0,1,3} misses 2

    RingSet whole = RingSet::full(r4, 2);
    auto resw = bg_search(whole, Rational(0), params);
    REQUIRE(resw.cert.has_value());
    CHECK(resw.cert->scalars.empty());
    CHECK(resw.cert->c_fold == 1);
}

TEST_CASE("bg search uses scalars when spans alone stall") {
    // {0, 5} in F_25: products stay inside {0, 5, 0} and sums inside 5 F_5,
    // so spans never escape the line through 5; scalars are required
    RingPtr r = make_ring({5, 2, 1, 1});
    RingSet a = RingSet::of(r, 1, {0, 5});
    ProcedureParams params;
    params.max_fold = 3;
    params.max_scalars = 3;
    auto res = bg_search(a, Rational(0), params);
    if (res.cert) {
        CHECK(!res.cert->scalars.empty());
        CHECK(verify_bg(a, *res.cert));
    } else {
        CHECK(res.caps_exhausted);
    }
}

TEST_CASE("reduce-or-inject on the full ring collides and re-verifies") {
    RingPtr r4 = make_ring({2, 1, 1, 2});
    RingSet whole = RingSet::full(r4, 2);
    BGCertificate cert{{1}, 1, Rational(0), true};
    REQUIRE(verify_bg(whole, cert));
    auto step = reduce_or_inject(whole, cert, Rational(1, 2));
    CHECK(step.closeness_level == 1);
    REQUIRE(step.reduced);
    REQUIRE(step.witness.has_value());
    CHECK(step.cert.scalars.empty());
    CHECK(step.cert.c_fold == 8);
    CHECK(step.cert.eps == Rational(1, 2));
    CHECK(step.cert.verified);
    // the witness difference really escapes the closeness ball
    const auto& w = *step.witness;
    CHECK(r4->val_idx(w.diff[(std::size_t)w.far_coordinate], 2) < step.closeness_level);
    // and the scalar sum of the differences vanishes
    std::uint32_t sum = w.diff[0];
    sum = r4->add_idx(sum, r4->mul_idx(r4->teichmuller(1, 2).index(), w.diff[1], 2), 2);
    CHECK(sum == 0);
}

TEST_CASE("reduce-or-inject certifies injectivity when no pair escapes") {
    RingPtr r4 = make_ring({2, 1, 1, 2});
    RingSet zero = RingSet::of(r4, 2, {0});
    BGCertificate cert{{1}, 1, Rational(1), true};
    auto step = reduce_or_inject(zero, cert, Rational(1, 2));
    CHECK_FALSE(step.reduced);
    CHECK_FALSE(step.witness.has_value());
    // scalar-free certificates never produce collisions
    RingSet whole = RingSet::full(r4, 2);
    BGCertificate bare{{}, 1, Rational(0), true};
    auto step0 = reduce_or_inject(whole, bare, Rational(1, 2));
    CHECK_FALSE(step0.reduced);
}

TEST_CASE("injectivity implies the projected additive closure") {
    // {0, 8} in mod 16 spans only itself, so the scalar sum is injective far
    // beyond the target valuation and the projected slice must be closed
    RingPtr r16 = make_ring({2, 1, 1, 4});
    RingSet a = RingSet::of(r16, 4, {0, 8});
    BGCertificate cert{{1}, 1, Rational(3, 4), false};
    REQUIRE(verify_bg(a, cert));
    auto step = reduce_or_inject(a, cert, Rational(15, 16));
    CHECK(step.closeness_level == 3);
    CHECK_FALSE(step.reduced);
    auto closure = additive_closure_check(a, cert.c_fold, cert.eps, Rational(15, 16));
    CHECK(closure.closed);
}

TEST_CASE("projected additive closure check") {
    RingPtr r8 = make_ring({2, 1, 1, 3});
    // the even subgroup is closed
    auto good = additive_closure_check(RingSet::of(r8, 3, {0, 2, 4, 6}), 1, Rational(1, 3),
                                       Rational(1, 3));
    CHECK(good.closed);
    // {0,1,2}: span {0,1,2,6,7}, ball cut {0,2,6}, and 2+2 = 4 escapes
    auto bad = additive_closure_check(RingSet::of(r8, 3, {0, 1, 2}), 1, Rational(1, 3),
                                      Rational(1));
    CHECK_FALSE(bad.closed);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->first == 2);
    CHECK(bad.witness->second == 2);
    auto whole = additive_closure_check(RingSet::full(r8, 3), 2, Rational(1, 3), Rational(2, 3));
    CHECK(whole.closed);
}

TEST_CASE("subfield closure finds the generated subfield") {
    RingPtr f4 = make_ring({2, 2, 1, 1});
    auto prime = subfield_closure(RingSet::of(f4, 1, {0, 1}));
    CHECK(prime.field.members() == std::vector<std::uint32_t>{0, 1});
    CHECK(prime.c_min == 1);
    auto full = subfield_closure(RingSet::of(f4, 1, {0, 1, 2}));
    CHECK(full.field.card() == 4);  // differences already reach every element
    CHECK(full.c_min == 1);
    RingPtr f9 = make_ring({3, 2, 1, 1});
    auto f3 = subfield_closure(RingSet::of(f9, 1, {0, 1, 2}));
    CHECK(f3.field.members() == std::vector<std::uint32_t>{0, 1, 2});
    RingPtr f16 = make_ring({2, 4, 1, 1});
    auto sub = subfield_closure(RingSet::of(f16, 1, {0, 1}));
    CHECK(sub.field.members() == std::vector<std::uint32_t>{0, 1});
    CHECK_THROWS_AS(subfield_closure(RingSet::of(f4, 1, {0})), std::invalid_argument);
}

TEST_CASE("minimal nonzero grading") {
    RingPtr r4 = make_ring({2, 1, 1, 2});
    auto g = min_nonzero_grading(RingSet::of(r4, 2, {0, 1}), 1);
    REQUIRE(g.e0.has_value());
    CHECK(*g.e0 == 1);
    RingPtr ram = make_ring({2, 1, 2, 2});
    auto gr = min_nonzero_grading(RingSet::of(ram, 2, {0, 1, 2}), 1);  // contains y
    REQUIRE(gr.e0.has_value());
    CHECK(*gr.e0 == 1);
    // all differences stay units: nothing of positive valuation in the span
    RingPtr f5 = make_ring({5, 1, 1, 1});
    auto none = min_nonzero_grading(RingSet::full(f5, 1), 1);
    CHECK_FALSE(none.e0.has_value());
    CHECK(none.note == "no nonzero non-unit in the span");
}

TEST_CASE("tail extraction renormalizes thin prefixes") {
    RingPtr r25 = make_ring({5, 1, 1, 2});
    // profile (1, 5): the fiber over the single level-1 vertex
    RingSet thin = RingSet::of(r25, 2, {0, 5, 10, 15, 20});
    auto te = extract_tail_set(thin, Rational(1));
    CHECK(te.nbar == 1);
    CHECK(te.m == 1);
    CHECK(te.n_prime == 1);
    CHECK(te.tail.card() == 5);
    CHECK(te.tail.level() == 1);
    CHECK(te.tail_profile.m == std::vector<std::int64_t>{5});
    CHECK(te.projection_bounds_ok);

    // reconstruction: the tail really is a translated, divided fiber of A
    std::uint32_t xi = project_set(thin, te.nbar).members().front();
    for (auto b : te.tail.members()) {
        std::uint32_t lifted = r25->add_idx(
            r25->mul_idx(b, (std::uint32_t)r25->level_size(te.nbar), 2), xi, 2);
        CHECK(thin.contains(lifted));
    }

    RingPtr r8 = make_ring({2, 1, 1, 3});
    auto whole = extract_tail_set(RingSet::full(r8, 3), Rational(1, 2));
    CHECK(whole.nbar == 0);
    CHECK(whole.tail == RingSet::full(r8, 3));
    auto single = extract_tail_set(RingSet::of(r8, 3, {5}), Rational(1, 2));
    CHECK(single.nbar == 2);
    CHECK(single.m == 1);
    // 5 has digits (1,0,1); translating away the thin prefix leaves digit 1
    CHECK(single.tail.members() == std::vector<std::uint32_t>{1});
    CHECK_THROWS_AS(extract_tail_set(RingSet::of(r8, 3, {0, 1, 3}), Rational(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("dense fiber extraction and saturation") {
    RingPtr r4 = make_ring({2, 1, 1, 2});
    auto whole = dense_fiber_extract(RingSet::full(r4, 2));
    CHECK(whole.n0 == 0);
    CHECK(whole.saturation_c == 1);
    auto small = dense_fiber_extract(RingSet::of(r4, 2, {0, 1}));
    CHECK(small.n0 == 0);
    CHECK(small.saturation_c == 2);
    // everything concentrated in one odd fiber of mod 8
    RingPtr r8 = make_ring({2, 1, 1, 3});
    auto packed = dense_fiber_extract(RingSet::of(r8, 3, {1, 3, 5, 7}));
    CHECK(packed.n0 == 2);
    CHECK(packed.fiber.level() == 1);
    CHECK(packed.fiber.card() == 2);
}

TEST_CASE("propagation composes valuation witnesses with a certificate") {
    RingPtr r8 = make_ring({2, 1, 1, 3});
    RingSet a = RingSet::of(r8, 3, {0, 1, 2, 4});
    BGCertificate cert{{}, 1, Rational(1, 3), true};
    auto rep = propagate_coverage(a, 1, Rational(1, 3), cert);
    CHECK(rep.level_m == 3);
    CHECK(rep.target_valuation == 1);
    CHECK(rep.missing_witness_j.empty());
    CHECK(rep.cert_ok);
    CHECK(rep.covered);
    // without a valuation-1 difference the first witness is missing
    RingSet sparse = RingSet::of(r8, 3, {0, 1});
    auto bad = propagate_coverage(sparse, 1, Rational(1, 3), cert);
    CHECK(bad.missing_witness_j == std::vector<int>{1, 2});
    CHECK_FALSE(bad.covered);
}

TEST_CASE("propagation lifts a certificate across two level reductions") {
    GenerateConfig gen;
    gen.ring = {2, 1, 1, 8};
    gen.seed = 77;
    gen.eps = Rational(1, 2);
    gen.witness_vals = {0, 1, 2, 4, 6};  // the valuations floor(2j) the lift consumes
    gen.min_card = 48;
    RingSet a = generate_hypothesis_set(gen);
    // certificate for the reduced-level projection
    Rational eps2(1, 2);
    RingSet reduced = project_set(a, 4);  // floor(eps2 * 8)
    ProcedureParams params;
    auto search = bg_search(reduced, eps2, params);
    REQUIRE(search.cert.has_value());
    auto rep = propagate_coverage(a, 2, eps2, *search.cert, params);
    CHECK(rep.level_m == 4);
    CHECK(rep.target_valuation == 2);
    CHECK(rep.missing_witness_j.empty());
    CHECK(rep.cert_ok);
    CHECK(rep.covered);
}

TEST_CASE("segment pipeline produces witnesses on generated sets") {
    for (RingParams params : {RingParams{2, 1, 1, 6}, RingParams{3, 1, 1, 4}}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            GenerateConfig gen;
            gen.ring = params;
            gen.seed = seed;
            gen.eps = Rational(1, 2);
            gen.min_card = 24;
            RingSet a = generate_hypothesis_set(gen);
            REQUIRE(verify_hypotheses(a, gen.eps, gen.witness_vals));
            auto result = segment_pipeline(a, Rational(1, 2));
            REQUIRE_MESSAGE(result.witness.has_value(), result.note);
            CHECK(result.witness->n2 - result.witness->n1 >= 1);
        }
    }
}
