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
#include <optional>
#include <string>
#include <vector>

#include "sumprod/density.hpp"
#include "sumprod/exact.hpp"
#include "sumprod/set_algebra.hpp"

namespace sumprod {

/// Residue indices of the nonzero scalars used in a bounded-generation
/// sum; the actual ring scalars are their Teichmuller lifts.
using ScalarList = std::vector<std::uint32_t>;

/// Certificate that the congruence ball of valuation ceil(eps * level) is
/// covered by the C-fold span plus scalar-dilated copies of it.
struct BGCertificate {
    ScalarList scalars;
    int c_fold = 1;
    Rational eps;
    bool verified = false;
};

/// Cost caps and default parameters for the search procedures.
struct ProcedureParams {
    Rational eps2{1, 2};          // ball exponent for bounded-generation search
    Rational delta0{1, 4};        // closeness threshold in reduce-or-inject
    int max_scalars = 3;          // largest scalar count tried
    int max_fold = 8;             // largest C tried
    int saturation_cap = 16;      // C cap for saturation scans
    std::uint64_t combine_guard = kDefaultCostGuard;
    std::uint64_t search_guard = 1ull << 27;  // pairwise-work budget for searches
};

// -- scalar-sum growth -------------------------------------------------------

/// Product over levels of max(1, (1/(m_i l_i) + 1/q)^{-1}): the guaranteed
/// scalar-sum growth of a regular pair.
Rational scalar_sum_bound(const GradedProfile& a, const GradedProfile& b, std::int64_t q);

struct ScalarSumMax {
    std::int64_t max_size = 0;
    std::uint32_t omega = 0;  // first residue attaining the maximum
};

/// max over nonzero residues omega of |A + teich(omega) B|.
ScalarSumMax empirical_scalar_sum(const RingSet& a, const RingSet& b);

// -- bounded generation ------------------------------------------------------

/// The covered set of a certificate: span(A, C) + sum of teich(alpha_i) * span(A, C).
RingSet bg_cover_set(const RingSet& a, const ScalarList& scalars, int c_fold,
                     std::uint64_t guard = kDefaultCostGuard);

/// Re-checks a certificate's coverage by enumeration.
bool verify_bg(const RingSet& a, const BGCertificate& cert,
               std::uint64_t guard = kDefaultCostGuard);

struct BGSearchResult {
    std::optional<BGCertificate> cert;
    bool caps_exhausted = false;  // search cut short by a budget, not disproved
};

/// Ordered search for the smallest (scalar count, then C) certificate:
/// greedy scalar selection by new coverage with ties to the smallest
/// residue, exhaustive over small tuples when the greedy pass misses.
BGSearchResult bg_search(const RingSet& a, const Rational& eps, const ProcedureParams& params);

struct CollisionWitness {
    std::vector<std::uint32_t> diff;  // per-coordinate differences, some far from zero
    int far_coordinate = 0;
};

struct ReduceOrInject {
    bool reduced = false;
    BGCertificate cert;  // when reduced: rebuilt certificate, coverage re-verified
    std::optional<CollisionWitness> witness;
    int closeness_level = 0;  // floor(delta0 * level)
};

/// Either finds a colliding pair of scalar-sum tuples over span(A, 2C)
/// whose difference escapes the delta0-ball — yielding a certificate with
/// one scalar fewer, eps + delta0, and 8C — or certifies that no such
/// pair exists (the scalar sum is delta0-injective).
ReduceOrInject reduce_or_inject(const RingSet& a, const BGCertificate& cert,
                                const Rational& delta0, const ProcedureParams& params = {});

struct ClosureCheck {
    bool closed = false;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;  // violating pair
};

/// Whether the projection to level floor(delta0 * L) of
/// span(A, C) intersected with the ball of valuation ceil(eps * L) is
/// closed under addition.
ClosureCheck additive_closure_check(const RingSet& a, int c_fold, const Rational& eps,
                                    const Rational& delta0,
                                    std::uint64_t guard = kDefaultCostGuard);

// -- field and grading structure ---------------------------------------------

struct SubfieldClosure {
    RingSet field;  // level-1 set, verified closed under +, -, *
    int c_min = 1;  // first C in 1, 2, 4, ... whose span is a subfield
};

/// Doubles C until the span of B (a residue-field set containing 0 and 1)
/// is a subfield.
SubfieldClosure subfield_closure(const RingSet& b, std::uint64_t guard = kDefaultCostGuard);

struct GradingDetect {
    std::optional<int> e0;   // min of the nonzero graded support
    bool unit_found = false; // a difference unit existed, so normalized holds 0 and 1
    RingSet normalized;      // u^-1 (A - A) for the smallest difference unit u
    std::string note;        // reason when e0 is absent
};

/// Normalizes A - A by a difference unit and returns the least positive
/// level with nonzero graded piece of its 2C-fold span.
GradingDetect min_nonzero_grading(const RingSet& a, int c1,
                                  std::uint64_t guard = kDefaultCostGuard);

struct TailExtract {
    int nbar = 0;     // deepest level whose projection is still thin
    int m = 0;        // remaining depth
    int n_prime = 0;  // uniformizer shift relating the tail set back to A
    RingSet tail;     // fiber above the smallest thin vertex, translated and divided down
    GradedProfile tail_profile;
    bool projection_bounds_ok = false;  // |pi_i(tail)| >= q^(i eps / 4) for i <= m
};

/// Splits a regular set at the last level where its projection stays below
/// q^(k eps / 4) and renormalizes the densest part of the tree.
TailExtract extract_tail_set(const RingSet& a_regular, const Rational& eps);

struct DenseFiberExtract {
    int n0 = 0;
    RingSet fiber;  // renormalized densest fiber, in O/p^(L - n0)
    std::optional<int> saturation_c;  // least C with full span, if within cap
    bool cap_reached = false;
};

/// Finds the deepest level where one fiber still holds more than
/// q^(-3k/4) of the set, renormalizes that fiber, and reports the least C
/// whose span of it is the whole quotient.
DenseFiberExtract dense_fiber_extract(const RingSet& a, const ProcedureParams& params = {});

struct PropagationReport {
    int level_m = 0;               // floor(eps2^(m-1) * L)
    int target_valuation = 0;      // ceil(eps2^m * L)
    std::vector<int> missing_witness_j;
    bool cert_ok = false;          // certificate re-verified at level_m
    bool covered = false;          // assembled sum covers the target ball at full level
};

/// Composes a certificate obtained at the reduced level with difference
/// witnesses of prescribed valuations and verifies the assembled sum
/// covers the deep congruence ball at full level.
PropagationReport propagate_coverage(const RingSet& a, int m, const Rational& eps2,
                                     const BGCertificate& cert,
                                     const ProcedureParams& params = {});

// -- end-to-end segment pipeline ----------------------------------------------

struct PipelineResult {
    GradedProfile profile;            // of the regularized set
    TailExtract tail;
    std::optional<int> e0;
    std::optional<BGCertificate> cert;  // final certificate after reductions
    int reductions = 0;
    bool injectivity_halt = false;
    std::optional<SegmentWitness> witness;
    std::string note;
};

/// regularize -> tail extraction -> grading detection -> bounded
/// generation with reduce-or-inject -> segment search over the covered
/// set, with span escalation as a fallback.
PipelineResult segment_pipeline(const RingSet& a, const Rational& eps,
                                const ProcedureParams& params = {});

}  // namespace sumprod
