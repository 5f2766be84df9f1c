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

#include "sumprod/digits.hpp"

#include <stdexcept>

namespace sumprod {

RingElem section_lift(const RingElem& xbar, int target_level) {
    if (target_level < xbar.level())
        throw std::invalid_argument("digits: section target below element level");
    return xbar.ring()->elem(xbar.index(), target_level);
}

RingElem child_label(const RingElem& xbar, std::uint32_t alpha) {
    const auto& ring = xbar.ring();
    int k = xbar.level();
    if (k + 1 > ring->depth()) throw std::invalid_argument("digits: child level overflows ring");
    if (alpha >= ring->q()) throw std::invalid_argument("digits: residue out of range");
    // digits (d_0, ..., d_{k-1}, alpha)
    std::uint64_t idx = xbar.index() + (std::uint64_t)alpha * ring->level_size(k);
    return ring->elem((std::uint32_t)idx, k + 1);
}

bool cocycle_membership(const RingPtr& ring, std::uint32_t alpha, int k, std::uint32_t x1,
                        std::uint32_t x2, std::uint32_t sigma) {
    const int n = ring->depth();
    if (k + 1 > n) throw std::invalid_argument("digits: cocycle level overflows ring");
    // all terms at full depth; lifts are index-preserving
    std::uint32_t ax2_k = ring->mul_idx(alpha, x2, k);          // alpha x2 at level k
    std::uint32_t sum_k = ring->add_idx(x1, ax2_k, k);          // x1 + alpha x2 at level k
    std::uint32_t t = ring->sub_idx(sum_k, x1, n);              // lift(sum) - lift(x1)
    t = ring->sub_idx(t, ring->mul_idx(alpha, x2, n), n);       // ... - teich(alpha) lift(x2)
    std::uint32_t shift = ring->mul_idx(sigma, (std::uint32_t)ring->level_size(k), n);
    t = ring->add_idx(t, shift, n);
    return ring->val_idx(t, n) >= k + 1;
}

std::uint32_t carry_cocycle(const RingPtr& ring, std::uint32_t alpha, int k, std::uint32_t x1,
                            std::uint32_t x2) {
    std::uint32_t found = 0;
    int hits = 0;
    for (std::uint32_t sigma = 0; sigma < ring->q(); ++sigma) {
        if (cocycle_membership(ring, alpha, k, x1, x2, sigma)) {
            found = sigma;
            ++hits;
        }
    }
    if (hits != 1) throw std::logic_error("digits: carry digit not unique");
    return found;
}

}  // namespace sumprod
