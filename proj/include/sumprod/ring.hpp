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
#include <memory>
#include <vector>

#include "sumprod/exact.hpp"

namespace sumprod {

/// Parameters of the quotient O/p^n of the ring of integers of a local
/// field with residue degree f and ramification index e over Q_p.
/// q = p^f is the residue field size; the quotient has q^n elements.
struct RingParams {
    std::int64_t p = 2;  // rational prime
    int f = 1;           // residue degree
    int e = 1;           // ramification index
    int n = 1;           // quotient depth (number of digit levels)

    friend bool operator==(const RingParams&, const RingParams&) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// An element of O/p^k for some k <= ring depth, identified by its
/// canonical digit index: idx = sum of d_i * q^i over the k digit levels,
/// where d_i are residue indices of the Teichmuller digits. Truncating the
/// index mod q^k is exactly the projection to level k.
class RingElem {
public:
    RingElem() : level_(0), idx_(0) {}
    RingElem(RingPtr ring, int level, std::uint32_t idx);

    const RingPtr& ring() const { return ring_; }
    int level() const { return level_; }
    std::uint32_t index() const { return idx_; }

    bool is_zero() const { return idx_ == 0; }
    /// Digit view (d_0, ..., d_{level-1}) as residue indices.
    std::vector<std::uint32_t> digits() const;

    friend bool operator==(const RingElem& a, const RingElem& b);
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }
    friend RingElem operator+(const RingElem& a, const RingElem& b);
    friend RingElem operator-(const RingElem& a, const RingElem& b);
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    RingElem operator-() const;

private:
    RingPtr ring_;
    int level_;
    std::uint32_t idx_;
};

/// Immutable descriptor of a concrete model of O/p^n.
///
/// The model is deterministic in the parameters: the unramified part is
/// Z[x]/(p^M, g(x)) for the lexicographically smallest monic irreducible g
/// of degree f over F_p, and the ramified part adjoins y with the fixed
/// Eisenstein relation y^e = p. Elements are stored internally as
/// coefficient vectors c_{ij} of x^i y^j with c_{ij} reduced mod
/// p^ceil((n-j)/e); the constructor builds bijective tables between that
/// coefficient form and the canonical Teichmuller digit index.
class Ring : public std::enable_shared_from_this<Ring> {
public:
    static constexpr std::uint64_t kDefaultEnumCap = 1u << 20;

    /// Builds the descriptor; verifies primality of p, the enumeration cap,
    /// irreducibility of the residue polynomial, and the digit bijection.
    static RingPtr make(const RingParams& params, std::uint64_t enum_cap = kDefaultEnumCap);

    const RingParams& params() const { return params_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t size() const { return size_; }
    int depth() const { return params_.n; }
    /// q^k for 0 <= k <= depth.
    std::uint64_t level_size(int k) const { return qpow_[k]; }
    /// Monic residue polynomial, constant coefficient first (degree f).
    const std::vector<std::int64_t>& residue_poly() const { return residue_poly_; }

    // -- element factories -------------------------------------------------

    RingElem elem(std::uint32_t idx, int level) const;
    RingElem elem(std::uint32_t idx) const { return elem(idx, params_.n); }
    RingElem zero(int level) const { return elem(0, level); }
    RingElem one(int level) const;
    /// Image of an ordinary integer under Z -> O/p^level.
    RingElem from_int(std::int64_t v, int level) const;
    RingElem from_int(std::int64_t v) const { return from_int(v, params_.n); }
    /// Integer value of an element of a rational-prime ring (f = e = 1).
    std::int64_t to_int(const RingElem& a) const;
    /// Teichmuller lift of a residue; satisfies lift^q = lift.
    RingElem teichmuller(std::uint32_t residue, int level) const;
    RingElem teichmuller(std::uint32_t residue) const { return teichmuller(residue, params_.n); }
    /// The uniformizer power p^k as an element (digit 1 in position k).
    RingElem uniformizer_pow(int k, int level) const;

    // -- index-level arithmetic (used by sets and measures in bulk) --------

    std::uint32_t add_idx(std::uint32_t a, std::uint32_t b, int level) const;
    std::uint32_t sub_idx(std::uint32_t a, std::uint32_t b, int level) const;
    std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b, int level) const;
    std::uint32_t neg_idx(std::uint32_t a, int level) const;
    /// Largest k with the element in the image of p^k, capped at level;
    /// valuation(0) = level by convention.
    int val_idx(std::uint32_t a, int level) const;
    bool is_unit_idx(std::uint32_t a) const { return a % q_ != 0; }
    /// Multiplicative inverse of a unit.
    std::uint32_t inv_idx(std::uint32_t a, int level) const;

    // -- residue field F_q (elements are indices in [0, q)) ----------------

    std::uint32_t res_add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t res_sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t res_mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t res_neg(std::uint32_t a) const;
    std::uint32_t res_inv(std::uint32_t a) const;

private:
    Ring() = default;
    void build(std::uint64_t enum_cap);

    using Coeffs = std::vector<std::int64_t>;  // c_{ij} at slot j*f + i

    Coeffs unpack(std::uint32_t rank) const;
    std::uint32_t pack(const Coeffs& c) const;
    Coeffs coeff_add(const Coeffs& a, const Coeffs& b) const;
    Coeffs coeff_mul(const Coeffs& a, const Coeffs& b) const;
    Coeffs coeff_neg(const Coeffs& a) const;
    Coeffs coeff_mul_y(const Coeffs& a) const;
    void coeff_reduce(Coeffs& c) const;

    RingParams params_;
    std::uint64_t q_ = 0;
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> qpow_;        // q^0 .. q^n
    std::vector<std::int64_t> residue_poly_; // degree f, monic, coeffs in [0,p)
    std::vector<int> prec_;                  // M_j = ceil((n-j)/e) per y-slot
    std::vector<std::int64_t> pmod_;         // p^{M_j}
    std::vector<std::int64_t> ppow_;         // p^0 .. p^{M_0}
    std::vector<std::uint32_t> idx_to_rank_; // digit index -> packed coefficients
    std::vector<std::uint32_t> rank_to_idx_; // inverse table
};

/// Constructs the canonical model of O/p^n for the given parameters.
/// Same parameters always produce an identical descriptor.
RingPtr make_ring(const RingParams& params, std::uint64_t enum_cap = Ring::kDefaultEnumCap);

/// Projection to level k (digit truncation); k <= a.level().
RingElem project(const RingElem& a, int k);

/// Valuation in [0, level]; valuation(zero) = level.
int valuation(const RingElem& a);

std::uint32_t encode(const RingElem& a);
RingElem decode(const RingPtr& ring, int level, std::uint64_t idx);

}  // namespace sumprod
