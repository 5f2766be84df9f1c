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

#include "sumprod/digits.hpp"

using namespace sumprod;

TEST_CASE("section lift pads digits with zeros") {
    RingPtr r9 = make_ring({3, 1, 1, 2});
    // 2 mod 3 lifts to the Teichmuller digit, the element 8 mod 9
    CHECK(r9->to_int(section_lift(r9->elem(2, 1), 2)) == 8);
    RingPtr r8 = make_ring({2, 1, 1, 3});
    CHECK(r8->to_int(section_lift(r8->elem(1, 2), 3)) == 1);
    CHECK(section_lift(r8->zero(1), 3).is_zero());
    CHECK(project(section_lift(r8->elem(3, 2), 3), 2) == r8->elem(3, 2));
    CHECK_THROWS_AS(section_lift(r8->elem(1, 2), 1), std::invalid_argument);
}

TEST_CASE("child labels append one digit") {
    RingPtr r4 = make_ring({2, 1, 1, 2});
    CHECK(r4->to_int(child_label(r4->zero(1), 1)) == 2);
    RingPtr r9 = make_ring({3, 1, 1, 2});
    // vertex 2 mod 3, digit 2: 8 + 8*3 = 5 mod 9
    RingElem child = child_label(r9->elem(2, 1), 2);
    CHECK(r9->to_int(child) == 5);
    CHECK(child.digits() == std::vector<std::uint32_t>{2, 2});
    // digit 0 is the section lift
    CHECK(child_label(r9->elem(2, 1), 0) == section_lift(r9->elem(2, 1), 2));
    // labels enumerate the fiber bijectively
    RingPtr r = make_ring({2, 2, 1, 3});
    for (std::uint64_t v = 0; v < r->level_size(2); ++v) {
        std::uint32_t seen = 0;
        for (std::uint32_t alpha = 0; alpha < r->q(); ++alpha) {
            RingElem c = child_label(r->elem((std::uint32_t)v, 2), alpha);
            CHECK(project(c, 2) == r->elem((std::uint32_t)v, 2));
            seen |= 1u << (c.index() / r->level_size(2));
        }
        CHECK(seen == (1u << r->q()) - 1);
    }
    CHECK_THROWS_AS(child_label(r9->elem(5, 2), 1), std::invalid_argument);
}

TEST_CASE("carry cocycle reproduces binary and ternary carries") {
    RingPtr r8 = make_ring({2, 1, 1, 3});
    // 1 + 1 carries in base 2
    CHECK(carry_cocycle(r8, 1, 1, 1, 1) == 1);
    // no carry from zero
    CHECK(carry_cocycle(r8, 1, 1, 1, 0) == 0);
    CHECK(carry_cocycle(r8, 0, 1, 1, 1) == 0);
    // ternary: alpha = 2, x2 = 2 at level 1 has no carry at depth 3
    RingPtr r27 = make_ring({3, 1, 1, 3});
    CHECK(carry_cocycle(r27, 2, 1, 0, 2) == 0);
    CHECK_THROWS_AS(carry_cocycle(r8, 1, 3, 0, 0), std::invalid_argument);
}

TEST_CASE("cocycle membership holds uniquely on a ramified ring") {
    RingPtr r = make_ring({2, 1, 2, 4});
    const int n = r->depth();
    for (int k = 0; k + 1 <= n; ++k)
        for (std::uint32_t alpha = 0; alpha < r->q(); ++alpha)
            for (std::uint32_t x1 = 0; x1 < r->level_size(k); ++x1)
                for (std::uint32_t x2 = 0; x2 < r->level_size(k); ++x2) {
                    int solutions = 0;
                    for (std::uint32_t s = 0; s < r->q(); ++s)
                        if (cocycle_membership(r, alpha, k, x1, x2, s)) ++solutions;
                    CHECK(solutions == 1);
                }
}
