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

#include "sumprod/ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumprod {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, constant coefficient first.
using Poly = std::vector<std::int64_t>;

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::int64_t p) {
    Poly t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    }
    // long division by monic g
    std::size_t f = g.size() - 1;
    for (std::size_t d = t.size(); d-- > f;) {
        std::int64_t c = t[d];
        if (!c) continue;
        t[d] = 0;
        for (std::size_t i = 0; i < f; ++i) t[d - f + i] = ((t[d - f + i] - c * g[i]) % p + p * p) % p;
    }
    t.resize(f);
    return t;
}

Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& g, std::int64_t p) {
    Poly r(g.size() - 1, 0);
    r[0] = 1;
    while (exp) {
        if (exp & 1) r = poly_mulmod(r, base, g, p);
        base = poly_mulmod(base, base, g, p);
        exp >>= 1;
    }
    return r;
}

int poly_deg(const Poly& x) {
    int d = (int)x.size() - 1;
    while (d >= 0 && x[d] == 0) --d;
    return d;
}

std::int64_t fp_inv(std::int64_t a, std::int64_t p) {
    a %= p;
    std::int64_t r = 1, base = a, exp = p - 2;
    while (exp) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return r;
}

Poly poly_rem(Poly a, const Poly& b, std::int64_t p) {
    int db = poly_deg(b);
    std::int64_t inv = fp_inv(b[db], p);
    for (int d = poly_deg(a); d >= db; d = poly_deg(a)) {
        std::int64_t c = a[d] * inv % p;
        for (int i = 0; i <= db; ++i) a[d - db + i] = ((a[d - db + i] - c * b[i]) % p + p) % p;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
    while (poly_deg(b) >= 0) {
        Poly r = poly_rem(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

bool poly_is_irreducible(const Poly& g, std::int64_t p) {
    int f = (int)g.size() - 1;
    if (f == 1) return true;
    Poly x{0, 1};
    // x^(p^f) == x mod g
    Poly xp = x;
    for (int i = 0; i < f; ++i) xp = poly_powmod(xp, (std::uint64_t)p, g, p);
    Poly xred = poly_mulmod(x, Poly{1}, g, p);
    if (xp != xred) return false;
    // gcd(x^(p^(f/r)) - x, g) == 1 for every prime r | f
    for (int r = 2; r <= f; ++r) {
        if (f % r != 0) continue;
        bool rprime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) rprime = false;
        if (!rprime) continue;
        Poly xe = x;
        for (int i = 0; i < f / r; ++i) xe = poly_powmod(xe, (std::uint64_t)p, g, p);
        Poly diff = xe;
        diff[1] = ((diff[1] - 1) % p + p) % p;
        Poly gg = poly_gcd(g, diff, p);
        int dg = (int)gg.size() - 1;
        while (dg >= 0 && gg[dg] == 0) --dg;
        if (dg != 0) return false;
    }
    return true;
}

Poly find_residue_poly(std::int64_t p, int f) {
    if (f == 1) return Poly{0, 1};  // g(x) = x
    std::uint64_t count = 1;
    for (int i = 0; i < f; ++i) count *= (std::uint64_t)p;
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly g(f + 1, 0);
        g[f] = 1;
        std::uint64_t c = code;
        for (int i = 0; i < f; ++i) {
            g[i] = (std::int64_t)(c % (std::uint64_t)p);
            c /= (std::uint64_t)p;
        }
        if (poly_is_irreducible(g, p)) return g;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

RingPtr Ring::make(const RingParams& params, std::uint64_t enum_cap) {
    if (!is_prime(params.p)) throw std::invalid_argument("ring: p must be prime");
    if (params.f < 1 || params.e < 1 || params.n < 1)
        throw std::invalid_argument("ring: f, e, n must be >= 1");
    std::shared_ptr<Ring> r(new Ring());
    r->params_ = params;
    r->build(enum_cap);
    return r;
}

RingPtr make_ring(const RingParams& params, std::uint64_t enum_cap) {
    return Ring::make(params, enum_cap);
}

void Ring::build(std::uint64_t enum_cap) {
    const std::int64_t p = params_.p;
    const int f = params_.f, e = params_.e, n = params_.n;

    q_ = 1;
    for (int i = 0; i < f; ++i) {
        q_ *= (std::uint64_t)p;
        if (q_ > enum_cap) throw std::invalid_argument("ring: q^n exceeds enumeration cap");
    }
    qpow_.assign(n + 1, 1);
    for (int k = 1; k <= n; ++k) {
        if (qpow_[k - 1] > enum_cap / q_) throw std::invalid_argument("ring: q^n exceeds enumeration cap");
        qpow_[k] = qpow_[k - 1] * q_;
    }
    size_ = qpow_[n];

    prec_.assign(e, 0);
    pmod_.assign(e, 1);
    int prec_sum = 0;
    for (int j = 0; j < e; ++j) {
        prec_[j] = (n - j + e - 1) / e;
        if (prec_[j] < 0) prec_[j] = 0;
        prec_sum += prec_[j];
        for (int t = 0; t < prec_[j]; ++t) pmod_[j] *= p;
    }
    if (prec_sum != n) throw std::logic_error("ring: precision bookkeeping inconsistent");
    ppow_.assign(prec_[0] + 1, 1);
    for (int t = 1; t <= prec_[0]; ++t) ppow_[t] = ppow_[t - 1] * p;

    residue_poly_ = find_residue_poly(p, f);
    if (!poly_is_irreducible(residue_poly_, p)) throw std::logic_error("ring: residue polynomial reducible");

    // Teichmuller lifts: iterate z -> z^q from the naive lift to the fixed point.
    std::vector<Coeffs> teich(q_);
    for (std::uint64_t rr = 0; rr < q_; ++rr) {
        Coeffs z((std::size_t)f * e, 0);
        std::uint64_t c = rr;
        for (int i = 0; i < f; ++i) {
            z[i] = (std::int64_t)(c % (std::uint64_t)p);
            c /= (std::uint64_t)p;
        }
        coeff_reduce(z);
        for (int iter = 0; iter <= n; ++iter) {
            // z -> z^q by binary exponentiation
            Coeffs acc((std::size_t)f * e, 0);
            acc[0] = 1;
            Coeffs base = z;
            std::uint64_t exp = q_;
            while (exp) {
                if (exp & 1) acc = coeff_mul(acc, base);
                base = coeff_mul(base, base);
                exp >>= 1;
            }
            if (acc == z) break;
            z = acc;
        }
        // verify z^q = z and the residue of z
        Coeffs acc((std::size_t)f * e, 0);
        acc[0] = 1;
        Coeffs base = z;
        std::uint64_t exp = q_;
        while (exp) {
            if (exp & 1) acc = coeff_mul(acc, base);
            base = coeff_mul(base, base);
            exp >>= 1;
        }
        if (acc != z) throw std::logic_error("ring: Teichmuller iteration did not converge");
        std::uint64_t res = 0;
        for (int i = f - 1; i >= 0; --i) res = res * (std::uint64_t)p + (std::uint64_t)(z[i] % p);
        if (res != rr) throw std::logic_error("ring: Teichmuller lift has wrong residue");
        teich[rr] = z;
    }

    // Digit index -> coefficient rank, via elem(i) = teich[i % q] + y * elem(i / q).
    idx_to_rank_.assign(size_, 0);
    rank_to_idx_.assign(size_, UINT32_MAX);
    for (std::uint64_t i = 0; i < size_; ++i) {
        Coeffs c;
        if (i < q_) {
            c = teich[i];
        } else {
            c = coeff_mul_y(unpack(idx_to_rank_[i / q_]));
            c = coeff_add(c, teich[i % q_]);
        }
        std::uint32_t rank = pack(c);
        idx_to_rank_[i] = rank;
        if (rank_to_idx_[rank] != UINT32_MAX) throw std::logic_error("ring: digit encoding not injective");
        rank_to_idx_[rank] = (std::uint32_t)i;
    }
}

Ring::Coeffs Ring::unpack(std::uint32_t rank) const {
    const int f = params_.f, e = params_.e;
    Coeffs c((std::size_t)f * e, 0);
    std::uint64_t v = rank;
    for (int j = 0; j < e; ++j) {
        for (int i = 0; i < f; ++i) {
            c[(std::size_t)j * f + i] = (std::int64_t)(v % (std::uint64_t)pmod_[j]);
            v /= (std::uint64_t)pmod_[j];
        }
    }
    return c;
}

std::uint32_t Ring::pack(const Coeffs& c) const {
    const int f = params_.f, e = params_.e;
    std::uint64_t v = 0;
    for (int j = e - 1; j >= 0; --j) {
        for (int i = f - 1; i >= 0; --i) v = v * (std::uint64_t)pmod_[j] + (std::uint64_t)c[(std::size_t)j * f + i];
    }
    return (std::uint32_t)v;
}

void Ring::coeff_reduce(Coeffs& c) const {
    const int f = params_.f, e = params_.e;
    for (int j = 0; j < e; ++j)
        for (int i = 0; i < f; ++i) {
            std::int64_t& x = c[(std::size_t)j * f + i];
            x %= pmod_[j];
            if (x < 0) x += pmod_[j];
        }
}

Ring::Coeffs Ring::coeff_add(const Coeffs& a, const Coeffs& b) const {
    Coeffs c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    coeff_reduce(c);
    return c;
}

Ring::Coeffs Ring::coeff_neg(const Coeffs& a) const {
    Coeffs c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    coeff_reduce(c);
    return c;
}

Ring::Coeffs Ring::coeff_mul_y(const Coeffs& a) const {
    const int f = params_.f, e = params_.e;
    Coeffs c((std::size_t)f * e, 0);
    for (int j = 0; j + 1 < e; ++j)
        for (int i = 0; i < f; ++i) c[(std::size_t)(j + 1) * f + i] = a[(std::size_t)j * f + i];
    for (int i = 0; i < f; ++i) c[i] = a[(std::size_t)(e - 1) * f + i] * params_.p;
    coeff_reduce(c);
    return c;
}

Ring::Coeffs Ring::coeff_mul(const Coeffs& a, const Coeffs& b) const {
    const int f = params_.f, e = params_.e;
    const std::int64_t big = pmod_[0];
    // y-slot accumulation: y^(j1+j2) wraps to y^(j1+j2-e) with a factor p
    std::vector<std::int64_t> acc((std::size_t)e * (2 * f - 1), 0);
    for (int j1 = 0; j1 < e; ++j1) {
        for (int j2 = 0; j2 < e; ++j2) {
            int m = j1 + j2;
            std::int64_t scale = 1;
            if (m >= e) {
                m -= e;
                scale = params_.p;
            }
            for (int i1 = 0; i1 < f; ++i1) {
                std::int64_t av = a[(std::size_t)j1 * f + i1];
                if (!av) continue;
                std::int64_t as = av * scale % big;
                for (int i2 = 0; i2 < f; ++i2) {
                    std::int64_t bv = b[(std::size_t)j2 * f + i2];
                    if (!bv) continue;
                    std::int64_t& slot = acc[(std::size_t)m * (2 * f - 1) + i1 + i2];
                    slot = (slot + as * bv) % big;
                }
            }
        }
    }
    // reduce x-degree mod the monic residue polynomial
    Coeffs c((std::size_t)f * e, 0);
    for (int m = 0; m < e; ++m) {
        std::int64_t* t = &acc[(std::size_t)m * (2 * f - 1)];
        for (int d = 2 * f - 2; d >= f; --d) {
            std::int64_t cv = t[d] % big;
            if (!cv) continue;
            t[d] = 0;
            for (int i = 0; i < f; ++i) t[d - f + i] = (t[d - f + i] - cv * residue_poly_[i]) % big;
        }
        for (int i = 0; i < f; ++i) {
            std::int64_t v = t[i] % big;
            if (v < 0) v += big;
            c[(std::size_t)m * f + i] = v;
        }
    }
    coeff_reduce(c);
    return c;
}

RingElem Ring::elem(std::uint32_t idx, int level) const {
    if (level < 0 || level > params_.n) throw std::invalid_argument("ring: bad level");
    if (idx >= qpow_[level]) throw std::invalid_argument("ring: index out of range");
    return RingElem(shared_from_this(), level, idx);
}

RingElem Ring::one(int level) const {
    if (level == 0) return elem(0, 0);
    return elem(1, level);
}

RingElem Ring::from_int(std::int64_t v, int level) const {
    Coeffs c((std::size_t)params_.f * params_.e, 0);
    c[0] = v % pmod_[0];
    coeff_reduce(c);
    std::uint32_t idx = rank_to_idx_[pack(c)];
    return elem(idx % (std::uint32_t)qpow_[level], level);
}

std::int64_t Ring::to_int(const RingElem& a) const {
    if (params_.f != 1 || params_.e != 1)
        throw std::invalid_argument("ring: integer value only defined for f = e = 1");
    Coeffs c = unpack(idx_to_rank_[a.index()]);
    std::int64_t m = 1;
    for (int i = 0; i < a.level(); ++i) m *= params_.p;
    return c[0] % m;
}

RingElem Ring::teichmuller(std::uint32_t residue, int level) const {
    if (residue >= q_) throw std::invalid_argument("ring: residue out of range");
    if (level < 1) throw std::invalid_argument("ring: teichmuller needs level >= 1");
    // digits (residue, 0, ..., 0): the canonical index equals the residue index
    return elem(residue, level);
}

RingElem Ring::uniformizer_pow(int k, int level) const {
    if (k < 0 || k > level) throw std::invalid_argument("ring: bad uniformizer power");
    if (k == level) return zero(level);
    return elem((std::uint32_t)qpow_[k], level);
}

std::uint32_t Ring::add_idx(std::uint32_t a, std::uint32_t b, int level) const {
    Coeffs c = coeff_add(unpack(idx_to_rank_[a]), unpack(idx_to_rank_[b]));
    return rank_to_idx_[pack(c)] % (std::uint32_t)qpow_[level];
}

std::uint32_t Ring::sub_idx(std::uint32_t a, std::uint32_t b, int level) const {
    Coeffs c = coeff_add(unpack(idx_to_rank_[a]), coeff_neg(unpack(idx_to_rank_[b])));
    return rank_to_idx_[pack(c)] % (std::uint32_t)qpow_[level];
}

std::uint32_t Ring::mul_idx(std::uint32_t a, std::uint32_t b, int level) const {
    Coeffs c = coeff_mul(unpack(idx_to_rank_[a]), unpack(idx_to_rank_[b]));
    return rank_to_idx_[pack(c)] % (std::uint32_t)qpow_[level];
}

std::uint32_t Ring::neg_idx(std::uint32_t a, int level) const {
    Coeffs c = coeff_neg(unpack(idx_to_rank_[a]));
    return rank_to_idx_[pack(c)] % (std::uint32_t)qpow_[level];
}

int Ring::val_idx(std::uint32_t a, int level) const {
    if (a == 0) return level;
    int v = 0;
    std::uint64_t x = a;
    while (x % q_ == 0) {
        x /= q_;
        ++v;
    }
    return v;
}

std::uint32_t Ring::inv_idx(std::uint32_t a, int level) const {
    if (level < 1) throw std::invalid_argument("ring: inverse needs level >= 1");
    if (!is_unit_idx(a)) throw std::domain_error("ring: inverse of a non-unit");
    // unit group of O/p^level has order q^(level-1) * (q-1); a^(order-1) = a^-1
    std::uint64_t order = qpow_[level - 1] * (q_ - 1);
    std::uint64_t exp = order - 1;
    std::uint32_t r = 1;
    std::uint32_t base = a;
    while (exp) {
        if (exp & 1) r = mul_idx(r, base, level);
        base = mul_idx(base, base, level);
        exp >>= 1;
    }
    return r;
}

std::uint32_t Ring::res_add(std::uint32_t a, std::uint32_t b) const {
    const std::int64_t p = params_.p;
    std::uint32_t r = 0;
    std::uint64_t mult = 1;
    for (int i = 0; i < params_.f; ++i) {
        std::uint64_t da = a % (std::uint64_t)p, db = b % (std::uint64_t)p;
        a /= (std::uint32_t)p;
        b /= (std::uint32_t)p;
        r += (std::uint32_t)((da + db) % (std::uint64_t)p * mult);
        mult *= (std::uint64_t)p;
    }
    return r;
}

std::uint32_t Ring::res_neg(std::uint32_t a) const {
    const std::int64_t p = params_.p;
    std::uint32_t r = 0;
    std::uint64_t mult = 1;
    for (int i = 0; i < params_.f; ++i) {
        std::uint64_t da = a % (std::uint64_t)p;
        a /= (std::uint32_t)p;
        r += (std::uint32_t)(((std::uint64_t)p - da) % (std::uint64_t)p * mult);
        mult *= (std::uint64_t)p;
    }
    return r;
}

std::uint32_t Ring::res_sub(std::uint32_t a, std::uint32_t b) const { return res_add(a, res_neg(b)); }

std::uint32_t Ring::res_mul(std::uint32_t a, std::uint32_t b) const {
    const std::int64_t p = params_.p;
    const int f = params_.f;
    Poly pa(f, 0), pb(f, 0);
    std::uint32_t x = a, y = b;
    for (int i = 0; i < f; ++i) {
        pa[i] = (std::int64_t)(x % (std::uint64_t)p);
        x /= (std::uint32_t)p;
        pb[i] = (std::int64_t)(y % (std::uint64_t)p);
        y /= (std::uint32_t)p;
    }
    Poly pr = poly_mulmod(pa, pb, residue_poly_, p);
    std::uint64_t r = 0;
    for (int i = f - 1; i >= 0; --i) r = r * (std::uint64_t)p + (std::uint64_t)pr[i];
    return (std::uint32_t)r;
}

std::uint32_t Ring::res_inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("ring: residue inverse of zero");
    std::uint32_t r = 1, base = a;
    std::uint64_t exp = q_ - 2;
    while (exp) {
        if (exp & 1) r = res_mul(r, base);
        base = res_mul(base, base);
        exp >>= 1;
    }
    return r;
}

// -- RingElem ---------------------------------------------------------------

RingElem::RingElem(RingPtr ring, int level, std::uint32_t idx)
    : ring_(std::move(ring)), level_(level), idx_(idx) {}

std::vector<std::uint32_t> RingElem::digits() const {
    std::vector<std::uint32_t> d((std::size_t)level_);
    std::uint64_t x = idx_;
    for (int i = 0; i < level_; ++i) {
        d[i] = (std::uint32_t)(x % ring_->q());
        x /= ring_->q();
    }
    return d;
}

namespace {
void check_compat(const RingElem& a, const RingElem& b) {
    if (!a.ring() || !b.ring() || !(a.ring()->params() == b.ring()->params()))
        throw std::invalid_argument("ring: elements from different rings");
    if (a.level() != b.level()) throw std::invalid_argument("ring: elements at different levels");
}
}  // namespace

bool operator==(const RingElem& a, const RingElem& b) {
    check_compat(a, b);
    return a.idx_ == b.idx_;
}

RingElem operator+(const RingElem& a, const RingElem& b) {
    check_compat(a, b);
    return RingElem(a.ring_, a.level_, a.ring_->add_idx(a.idx_, b.idx_, a.level_));
}

RingElem operator-(const RingElem& a, const RingElem& b) {
    check_compat(a, b);
    return RingElem(a.ring_, a.level_, a.ring_->sub_idx(a.idx_, b.idx_, a.level_));
}

RingElem operator*(const RingElem& a, const RingElem& b) {
    check_compat(a, b);
    return RingElem(a.ring_, a.level_, a.ring_->mul_idx(a.idx_, b.idx_, a.level_));
}

RingElem RingElem::operator-() const {
    return RingElem(ring_, level_, ring_->neg_idx(idx_, level_));
}

RingElem project(const RingElem& a, int k) {
    if (k > a.level()) throw std::invalid_argument("ring: projection above element level");
    return a.ring()->elem((std::uint32_t)(a.index() % a.ring()->level_size(k)), k);
}

int valuation(const RingElem& a) { return a.ring()->val_idx(a.index(), a.level()); }

std::uint32_t encode(const RingElem& a) { return a.index(); }

RingElem decode(const RingPtr& ring, int level, std::uint64_t idx) {
    if (idx >= ring->level_size(level)) throw std::invalid_argument("ring: index out of range");
    return ring->elem((std::uint32_t)idx, level);
}

}  // namespace sumprod
