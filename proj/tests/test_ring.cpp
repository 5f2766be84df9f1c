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

#include "sumprod/ring.hpp"
#include "sumprod/rng.hpp"
#include "sumprod/suites.hpp"

using namespace sumprod;

TEST_CASE("rational prime ring behaves like integers mod p^n") {
    RingPtr r = make_ring({2, 1, 1, 3});
    CHECK(r->q() == 2);
    CHECK(r->size() == 8);
    // indices equal values when p = 2
    CHECK(r->to_int(r->from_int(5) + r->from_int(5)) == 2);
    CHECK(encode(r->from_int(5)) == 5);
    CHECK(r->from_int(5).digits() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(valuation(r->from_int(4)) == 2);
    CHECK(valuation(r->from_int(0)) == 3);
    CHECK(r->to_int(project(r->from_int(5), 2)) == 1);
}

TEST_CASE("Teichmuller digits of the mod-9 ring") {
    RingPtr r = make_ring({3, 1, 1, 2});
    // digit set {0, 1, 8}: the fixed points of the cube map mod 9
    CHECK(r->to_int(r->teichmuller(0)) == 0);
    CHECK(r->to_int(r->teichmuller(1)) == 1);
    CHECK(r->to_int(r->teichmuller(2)) == 8);
    // element 5 = 8 + 8*3 mod 9 has digits (2, 2) and index 8
    RingElem five = r->from_int(5);
    CHECK(five.digits() == std::vector<std::uint32_t>{2, 2});
    CHECK(encode(five) == 8);
    CHECK(r->to_int(r->from_int(8) * r->from_int(8)) == 1);
    CHECK(r->to_int(project(five, 1)) == 2);
}

TEST_CASE("ramified quadratic ring squares the uniformizer to p") {
    RingPtr r = make_ring({2, 1, 2, 2});
    CHECK(r->size() == 4);
    RingElem y = r->uniformizer_pow(1, 2);
    CHECK(valuation(y) == 1);
    CHECK((y * y).is_zero());  // y^2 = 2 vanishes at depth 2
    RingPtr r3 = make_ring({3, 1, 2, 3});
    RingElem y3 = r3->uniformizer_pow(1, 3);
    CHECK(y3 * y3 == r3->from_int(3));  // y^2 = p survives at depth 3
    CHECK(valuation(y3 * y3) == 2);
}

TEST_CASE("descriptors are deterministic and validated") {
    RingPtr a = make_ring({2, 2, 1, 3});
    RingPtr b = make_ring({2, 2, 1, 3});
    CHECK(a->residue_poly() == b->residue_poly());
    CHECK(a->residue_poly() == std::vector<std::int64_t>{1, 1, 1});  // x^2 + x + 1
    RingPtr f9 = make_ring({3, 2, 1, 1});
    CHECK(f9->residue_poly() == std::vector<std::int64_t>{1, 0, 1});  // x^2 + 1
    CHECK_THROWS_AS(make_ring({4, 1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_ring({2, 1, 1, 30}), std::invalid_argument);  // cap
    CHECK_THROWS_AS(make_ring({2, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("projection commutes with arithmetic on every level") {
    for (RingParams params : {RingParams{2, 1, 1, 5}, RingParams{3, 1, 1, 3},
                              RingParams{2, 2, 1, 3}, RingParams{2, 1, 2, 4},
                              RingParams{3, 1, 2, 4}, RingParams{2, 2, 2, 4},
                              RingParams{5, 1, 1, 3}, RingParams{2, 1, 3, 5}}) {
        RingPtr r = make_ring(params);
        SplitMix64 rng(11);
        for (int t = 0; t < 200; ++t) {
            RingElem a = r->elem((std::uint32_t)rng.below(r->size()));
            RingElem b = r->elem((std::uint32_t)rng.below(r->size()));
            int k = (int)rng.below((std::uint64_t)r->depth() + 1);
            CHECK(project(a + b, k) == project(a, k) + project(b, k));
            CHECK(project(a * b, k) == project(a, k) * project(b, k));
            CHECK(encode(project(a, k)) == encode(a) % r->level_size(k));
        }
    }
}

TEST_CASE("valuation census and filtration") {
    for (RingParams params :
         {RingParams{2, 1, 1, 6}, RingParams{3, 1, 2, 4}, RingParams{2, 2, 1, 4}}) {
        RingPtr r = make_ring(params);
        const int n = r->depth();
        for (int k = 0; k <= n; ++k) {
            std::uint64_t count = 0;
            for (std::uint64_t i = 0; i < r->size(); ++i)
                if (r->val_idx((std::uint32_t)i, n) >= k) ++count;
            CHECK(count == r->level_size(n - k));
        }
        // multiplying by the uniformizer shifts digits
        SplitMix64 rng(3);
        for (int t = 0; t < 50; ++t) {
            RingElem a = r->elem((std::uint32_t)rng.below(r->size()));
            RingElem shifted = a * r->uniformizer_pow(1, n);
            CHECK(encode(shifted) == encode(a) % r->level_size(n - 1) * r->q());
        }
    }
}

TEST_CASE("units invert exactly") {
    RingPtr r = make_ring({3, 1, 2, 4});
    SplitMix64 rng(5);
    int seen = 0;
    while (seen < 50) {
        std::uint32_t a = (std::uint32_t)rng.below(r->size());
        if (!r->is_unit_idx(a)) continue;
        ++seen;
        std::uint32_t inv = r->inv_idx(a, r->depth());
        CHECK(r->mul_idx(a, inv, r->depth()) == 1u);
    }
    CHECK_THROWS_AS(r->inv_idx(3 * 1, 4), std::domain_error);  // index q is the uniformizer
}

TEST_CASE("the unramified quadratic ring over Z/4 has the known structure") {
    // Z4[x]/(x^2 + x + 1): 16 elements, the uniformizer is 2, and the
    // Teichmuller units form the cyclic group of order 3
    RingPtr r = make_ring({2, 2, 1, 2});
    CHECK(r->size() == 16);
    CHECK(r->from_int(2) == r->uniformizer_pow(1, 2));
    CHECK(valuation(r->from_int(2)) == 1);
    RingElem one = r->one(2);
    CHECK(r->from_int(4).is_zero());
    RingElem g = r->teichmuller(2);  // lift of the residue generator x
    CHECK(g * g * g == one);
    CHECK(g * g == r->teichmuller(3));
    CHECK_FALSE(g * g == g);
    // the lift is a true cube root of unity, so 1 + g + g^2 = 0 exactly
    // ((g - 1) is a unit and (g - 1)(g^2 + g + 1) = g^3 - 1 = 0)
    CHECK((one + g + g * g).is_zero());
    // additive order of 1 is p^ceil(n/e) = 4
    CHECK_FALSE((one + one).is_zero());
    CHECK((one + one + one + one).is_zero());
    // for unramified rings the uniformizer is p itself in every depth
    for (RingParams params : {RingParams{3, 1, 1, 3}, RingParams{5, 1, 1, 2},
                              RingParams{2, 3, 1, 2}}) {
        RingPtr u = make_ring(params);
        CHECK(u->from_int(params.p) == u->uniformizer_pow(1, u->depth()));
    }
}

TEST_CASE("residue field arithmetic matches level-1 ring arithmetic") {
    for (RingParams params : {RingParams{2, 2, 1, 2}, RingParams{3, 2, 1, 1},
                              RingParams{2, 3, 1, 1}, RingParams{5, 1, 1, 2}}) {
        RingPtr r = make_ring(params);
        for (std::uint32_t a = 0; a < r->q(); ++a)
            for (std::uint32_t b = 0; b < r->q(); ++b) {
                CHECK(r->res_add(a, b) == r->add_idx(a, b, 1));
                CHECK(r->res_mul(a, b) == r->mul_idx(a, b, 1));
            }
        for (std::uint32_t a = 1; a < r->q(); ++a)
            CHECK(r->res_mul(a, r->res_inv(a)) == 1u);
    }
}

TEST_CASE("known smallest irreducible polynomials") {
    CHECK(make_ring({2, 3, 1, 1})->residue_poly() ==
          std::vector<std::int64_t>{1, 1, 0, 1});  // x^3 + x + 1
    CHECK(make_ring({2, 4, 1, 1})->residue_poly() ==
          std::vector<std::int64_t>{1, 1, 0, 0, 1});  // x^4 + x + 1
    CHECK(make_ring({5, 2, 1, 1})->residue_poly() ==
          std::vector<std::int64_t>{2, 0, 1});  // x^2 + 2
    CHECK(make_ring({7, 1, 1, 2})->residue_poly() == std::vector<std::int64_t>{0, 1});  // x
}

TEST_CASE("rational prime rings agree with plain modular arithmetic") {
    for (RingParams params :
         {RingParams{2, 1, 1, 8}, RingParams{3, 1, 1, 5}, RingParams{7, 1, 1, 3}}) {
        RingPtr r = make_ring(params);
        std::int64_t mod = 1;
        for (int i = 0; i < params.n; ++i) mod *= params.p;
        SplitMix64 rng(19);
        for (int t = 0; t < 300; ++t) {
            std::int64_t a = (std::int64_t)rng.below((std::uint64_t)mod);
            std::int64_t b = (std::int64_t)rng.below((std::uint64_t)mod);
            CHECK(r->to_int(r->from_int(a) + r->from_int(b)) == (a + b) % mod);
            CHECK(r->to_int(r->from_int(a) * r->from_int(b)) == a * b % mod);
            CHECK(r->to_int(-r->from_int(a)) == (mod - a) % mod);
        }
    }
}

TEST_CASE("ramified arithmetic agrees with an independent Eisenstein model") {
    // second model of O/p^n: coefficient vectors over y with y^e = p, each
    // slot reduced mod p^ceil((n-j)/e); multiplication written from scratch
    for (RingParams params : {RingParams{3, 1, 2, 4}, RingParams{2, 1, 3, 6},
                              RingParams{5, 1, 2, 3}}) {
        RingPtr r = make_ring(params);
        const int e = params.e, n = params.n;
        const std::int64_t p = params.p;
        std::vector<std::int64_t> slot_mod(e, 1);
        for (int j = 0; j < e; ++j)
            for (int t = 0; t < (n - j + e - 1) / e; ++t) slot_mod[j] *= p;
        auto model_mul = [&](std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
            std::vector<std::int64_t> c(e, 0);
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j) {
                    int s = i + j;
                    std::int64_t v = a[i] * b[j];
                    if (s >= e) {
                        s -= e;
                        v *= p;
                    }
                    c[s] = (c[s] + v) % slot_mod[s];
                }
            return c;
        };
        auto to_ring = [&](const std::vector<std::int64_t>& c) {
            RingElem acc = r->zero(n);
            for (int j = 0; j < e; ++j)
                acc = acc + r->from_int(c[j]) * r->uniformizer_pow(j, n);
            return acc;
        };
        SplitMix64 rng(23);
        for (int t = 0; t < 200; ++t) {
            std::vector<std::int64_t> a(e), b(e);
            for (int j = 0; j < e; ++j) {
                a[j] = (std::int64_t)rng.below((std::uint64_t)slot_mod[j]);
                b[j] = (std::int64_t)rng.below((std::uint64_t)slot_mod[j]);
            }
            CHECK(to_ring(a) * to_ring(b) == to_ring(model_mul(a, b)));
        }
    }
}

TEST_CASE("ring and digits suites hold across a systematic ring family") {
    int rings_checked = 0;
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int f = 1; f <= 2; ++f) {
            for (int e = 1; e <= 3; ++e) {
                std::uint64_t q = 1;
                for (int i = 0; i < f; ++i) q *= (std::uint64_t)p;
                for (int n = 1;; ++n) {
                    bool fits = true;
                    std::uint64_t size = 1;
                    for (int i = 0; i < n; ++i) {
                        size *= q;
                        if (size > 256) fits = false;
                    }
                    if (!fits) break;
                    SuiteConfig config;
                    config.ring = {p, f, e, n};
                    config.seed = 99;
                    config.trials = 5;
                    INFO("ring ", p, " ", f, " ", e, " ", n);
                    CHECK(run_ring_suite(config).passed());
                    CHECK(run_digits_suite(config).passed());
                    ++rings_checked;
                }
            }
        }
    }
    CHECK(rings_checked > 50);
}

TEST_CASE("element equality demands matching carriers") {
    RingPtr r = make_ring({2, 1, 1, 3});
    CHECK_THROWS_AS((void)(r->elem(1, 2) == r->elem(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS((void)(r->elem(1, 2) + r->elem(1, 3)), std::invalid_argument);
    RingPtr other = make_ring({3, 1, 1, 2});
    CHECK_THROWS_AS((void)(r->elem(1, 2) + other->elem(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(project(r->elem(1, 2), 3), std::invalid_argument);
    CHECK_THROWS_AS(decode(r, 2, 4), std::invalid_argument);
    CHECK(decode(r, 3, 0).is_zero());
}
