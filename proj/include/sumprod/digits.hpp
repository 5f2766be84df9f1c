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

#include "sumprod/ring.hpp"

namespace sumprod {

/// Digit section: lifts a level-k element to the target level by padding
/// its digit expansion with zeros. A right inverse of project().
RingElem section_lift(const RingElem& xbar, int target_level);

/// Labels the children of a level-k vertex by residues: appends alpha as
/// digit k, a bijection from the residue field onto the fiber of xbar one
/// level down the tree.
RingElem child_label(const RingElem& xbar, std::uint32_t alpha);

/// The additive carry cocycle sigma_{alpha,k}(x1, x2): the unique residue
/// sigma such that
///   lift(x1 + alpha x2) - lift(x1) - teich(alpha) lift(x2) + teich(sigma) p^k
/// vanishes one level deeper than k. Found by direct search over the q
/// candidates; uniqueness is checked, not assumed.
///
/// x1, x2 are level-k indices; requires k + 1 <= ring depth.
std::uint32_t carry_cocycle(const RingPtr& ring, std::uint32_t alpha, int k,
                            std::uint32_t x1, std::uint32_t x2);

/// Whether the defining membership of the carry cocycle holds for a given
/// candidate digit. carry_cocycle() is the search over this predicate; it
/// is exposed separately so suites can count solutions independently.
bool cocycle_membership(const RingPtr& ring, std::uint32_t alpha, int k, std::uint32_t x1,
                        std::uint32_t x2, std::uint32_t sigma);

}  // namespace sumprod
