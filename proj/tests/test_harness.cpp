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

#include <cstdio>

#include "sumprod/suites.hpp"

using namespace sumprod;

TEST_CASE("set files round-trip through json") {
    RingPtr r = make_ring({3, 1, 2, 3});
    RingSet s = RingSet::of(r, 3, {0, 5, 11, 26});
    ordered_json j = set_to_json(s);
    CHECK(j["ring"] == ordered_json({3, 1, 2, 3}));
    CHECK(j["elements"] == ordered_json({"0", "5", "11", "26"}));
    RingSet back = set_from_json(j);
    CHECK(back == s);
    std::string path = "test_set_roundtrip.json";
    write_set_file(path, s);
    CHECK(read_set_file(path) == s);
    std::remove(path.c_str());
    CHECK_THROWS(set_from_json(ordered_json{{"ring", {4, 1, 1, 1}}, {"elements", {"0"}}}));
    CHECK_THROWS(set_from_json(ordered_json{{"ring", {2, 1, 1, 2}}, {"elements", {"4"}}}));
    CHECK_THROWS(set_from_json(ordered_json{{"elements", {"0"}}}));
}

TEST_CASE("certificates round-trip through json") {
    BGCertificate cert{{2, 5}, 4, Rational(1, 3), true};
    BGCertificate back = certificate_from_json(certificate_to_json(cert));
    CHECK(back.scalars == cert.scalars);
    CHECK(back.c_fold == cert.c_fold);
    CHECK(back.eps == cert.eps);
    CHECK(back.verified == cert.verified);
}

TEST_CASE("generated sets always satisfy their hypotheses") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenerateConfig gen;
        gen.ring = {2, 1, 1, 8};
        gen.seed = seed;
        gen.eps = Rational(1, 2);
        gen.witness_vals = {0, 1};
        RingSet s = generate_hypothesis_set(gen);
        CHECK(verify_hypotheses(s, gen.eps, gen.witness_vals));
        // determinism
        CHECK(generate_hypothesis_set(gen) == s);
    }
    GenerateConfig trivial;
    trivial.ring = {2, 1, 1, 3};
    trivial.eps = Rational(0);
    trivial.witness_vals = {};
    CHECK(verify_hypotheses(generate_hypothesis_set(trivial), Rational(0), {}));
    // demanding the whole ring forces the whole ring
    GenerateConfig full;
    full.ring = {2, 1, 1, 3};
    full.eps = Rational(1);
    CHECK(generate_hypothesis_set(full).card() == 8);
}

TEST_CASE("suites pass on default configurations") {
    SuiteConfig config;
    config.ring = {2, 1, 1, 3};
    config.seed = 42;
    config.trials = 25;
    for (const auto& result : run_suites("all", config)) {
        INFO(result.name);
        CHECK(result.passed());
        CHECK(result.checks > 0);
    }
    SuiteConfig ramified = config;
    ramified.ring = {3, 1, 2, 3};
    ramified.trials = 10;
    for (const auto& result : run_suites("all", ramified)) {
        INFO(result.name);
        CHECK(result.passed());
    }
    // odd-characteristic unramified rings drive the section-defect sampling
    for (RingParams params : {RingParams{3, 1, 1, 2}, RingParams{5, 1, 1, 2}}) {
        SuiteConfig odd = config;
        odd.ring = params;
        odd.trials = 10;
        CHECK(run_digits_suite(odd).passed());
    }
    CHECK_THROWS_AS(run_suites("bogus", config), std::invalid_argument);
}

TEST_CASE("ring suite is exhaustive at the 2^12 cap") {
    SuiteConfig config;
    config.ring = {2, 1, 1, 12};
    config.seed = 3;
    config.trials = 20;
    SuiteResult result = run_ring_suite(config);
    CHECK(result.passed());
    // round trip and projection checks ran for all 4096 elements
    CHECK(result.checks > 4096 * 13);
}

TEST_CASE("suites are deterministic given a seed") {
    SuiteConfig config;
    config.ring = {3, 1, 1, 2};
    config.seed = 7;
    config.trials = 10;
    auto a = run_suites("measures", config);
    auto b = run_suites("measures", config);
    CHECK(a.front().checks == b.front().checks);
    CHECK(a.front().failures.size() == b.front().failures.size());
}

TEST_CASE("a corrupted carry implementation fails the digits suite with a witness") {
    SuiteConfig config;
    config.ring = {2, 1, 1, 3};
    config.seed = 1;
    config.trials = 5;
    config.cocycle_fn = [](const RingPtr& ring, std::uint32_t alpha, int k, std::uint32_t x1,
                           std::uint32_t x2) {
        std::uint32_t good = carry_cocycle(ring, alpha, k, x1, x2);
        return (std::uint32_t)((good + 1) % ring->q());  // injected off-by-one
    };
    SuiteResult result = run_digits_suite(config);
    CHECK_FALSE(result.passed());
    REQUIRE(!result.failures.empty());
    // the witness pins down the offending tuple
    const auto& w = result.failures.front().witness;
    CHECK(w.contains("alpha"));
    CHECK(w.contains("k"));
    CHECK(w.contains("x1"));
    CHECK(w.contains("x2"));
}
