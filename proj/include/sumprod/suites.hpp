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

#include <functional>
#include <string>
#include <vector>

#include "sumprod/digits.hpp"
#include "sumprod/procedures.hpp"
#include "sumprod/ring.hpp"
#include "sumprod/rng.hpp"
#include "sumprod/serialize.hpp"
#include "sumprod/set_algebra.hpp"

namespace sumprod {

using CocycleFn = std::function<std::uint32_t(const RingPtr&, std::uint32_t, int, std::uint32_t,
                                              std::uint32_t)>;

struct SuiteConfig {
    RingParams ring{2, 1, 1, 3};
    std::uint64_t seed = 0;
    int trials = 100;
    ProcedureParams params;
    /// Injectable so a corrupted implementation is caught by the suite.
    CocycleFn cocycle_fn;
};

struct SuiteFailure {
    int trial = 0;
    std::string check;
    ordered_json witness;
};

struct SuiteResult {
    std::string name;
    int trials = 0;
    std::int64_t checks = 0;
    std::vector<SuiteFailure> failures;
    /// trials cut short by a cost cap: reported, not counted as failures
    std::vector<std::pair<int, std::string>> capped;

    bool passed() const { return failures.empty(); }
};

SuiteResult run_ring_suite(const SuiteConfig& config);
SuiteResult run_digits_suite(const SuiteConfig& config);
SuiteResult run_sets_suite(const SuiteConfig& config);
SuiteResult run_measures_suite(const SuiteConfig& config);
SuiteResult run_density_suite(const SuiteConfig& config);
SuiteResult run_procedures_suite(const SuiteConfig& config);

/// name in {ring, digits, sets, measures, density, procedures, all}.
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteConfig& config);

// -- hypothesis-set generation -------------------------------------------------

struct GenerateConfig {
    RingParams ring{2, 1, 1, 3};
    std::uint64_t seed = 0;
    Rational eps{1, 2};                    // projection bound exponent
    std::vector<int> witness_vals{0, 1};   // required difference valuations
    std::size_t min_card = 0;              // extra density beyond the bounds
};

/// Constructs a random set whose level-i projections all reach q^(i eps)
/// and whose difference set has members of each required valuation. The
/// result always passes verify_hypotheses before being returned.
RingSet generate_hypothesis_set(const GenerateConfig& config);

/// Independent check of the generator's contract.
bool verify_hypotheses(const RingSet& s, const Rational& eps,
                       const std::vector<int>& witness_vals);

/// Uniformly random nonempty subset (each element kept with the given
/// odds), plus helpers shared by suites and tests.
RingSet random_subset(const RingPtr& ring, int level, SplitMix64& rng,
                      std::uint64_t keep_num = 1, std::uint64_t keep_den = 2);

/// Exact-rational identity between the digit conditionals of a scalar
/// convolution of regular counting measures and the mixture of translated
/// fiber convolutions; failure details land in *why.
bool conditional_convolution_decomposition(const RingPtr& ring, const RingSet& a,
                                           const RingSet& b, std::uint32_t alpha, int k,
                                           ordered_json* why);

/// The next-digit conditional entropy of the scalar convolution dominates
/// the fiber average, up to 1e-9.
bool conditional_entropy_inequality(const RingPtr& ring, const RingSet& a, const RingSet& b,
                                    std::uint32_t alpha, int k, ordered_json* why);

}  // namespace sumprod
