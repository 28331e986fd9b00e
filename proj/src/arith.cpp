#include "edga/arith.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace edga {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t mod) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % mod);
}

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod) {
    uint64_t acc = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) acc = mod_mul(acc, base, mod);
        base = mod_mul(base, base, mod);
        exp >>= 1;
    }
    return acc;
}

uint64_t mod_inverse(uint64_t a, uint64_t mod) {
    // mod is a prime power p^M here and a is a unit, so Euler works.
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(mod), new_r = static_cast<int64_t>(a % mod);
    while (new_r != 0) {
        int64_t q = r / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(r -= q * new_r, new_r);
    }
    if (r != 1) throw std::domain_error("mod_inverse: not a unit");
    if (t < 0) t += static_cast<int64_t>(mod);
    return static_cast<uint64_t>(t);
}

uint32_t int_valuation(uint64_t p, uint64_t x) {
    assert(x != 0);
    uint32_t v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

uint64_t adams_unit(uint64_t p) {
    if (p % 2 == 0 || !is_prime(p))
        throw config_error("adams_unit: p must be an odd prime");
    const uint64_t p2 = p * p;
    const uint64_t group_order = p * (p - 1);
    for (uint64_t g = 2; g < p2; ++g) {
        if (g % p == 0) continue;
        uint64_t acc = g % p2;
        uint64_t order = 1;
        while (acc != 1) {
            acc = mod_mul(acc, g, p2);
            ++order;
        }
        if (order == group_order) return g;
    }
    throw std::logic_error("adams_unit: no generator found");
}

int64_t s_tilde(int64_t m) {
    if (m < 0) throw std::invalid_argument("s_tilde: m must be nonnegative");
    return m % 2 == 0 ? m / 2 : (1 - m) / 2;
}

int64_t s_index(int64_t m) {
    if (m < 1) throw std::invalid_argument("s_index: m must be positive");
    return s_tilde(m + 1);
}

namespace {

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

uint32_t Context::auto_length(uint64_t p, uint32_t precision) {
    uint64_t t = (p - 1);
    for (uint32_t i = 1; i < precision; ++i) t *= p;
    uint64_t n = 2 * t + 64;
    if (n > (1u << 24)) throw config_error("auto_length: parameters too large");
    return static_cast<uint32_t>(n);
}

Context::Context(uint64_t p_, uint32_t precision_, uint32_t length_, uint64_t unit_,
                 ScalarMode mode_)
    : p(p_), precision(precision_), length(length_), unit(unit_), mode(mode_) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw config_error("p must be an odd prime >= 3");
    if (precision < 2) throw config_error("precision must be at least 2");

    modulus = 1;
    for (uint32_t i = 0; i < precision; ++i) {
        if (modulus > (uint64_t(1) << 40)) throw config_error("p^precision too large");
        modulus *= p;
    }

    uint64_t group_order = (p - 1) * (modulus / p);  // (p-1) p^{M-1}
    if (length == 0) length = auto_length(p, precision);
    if (static_cast<uint64_t>(length) < 2 * group_order + 16)
        throw config_error("length below the trusted-window requirement");

    if (unit == 0) unit = adams_unit(p);
    if (unit % p == 0 || unit % modulus == 0)
        throw config_error("unit must be prime to p");
    unit %= modulus;
    if (mod_pow(unit, group_order, modulus) != 1)
        throw config_error("unit does not have the required order");
    for (uint64_t q : distinct_prime_factors(group_order))
        if (mod_pow(unit, group_order / q, modulus) == 1)
            throw config_error("unit does not generate the unit group");
    unit_inv = mod_inverse(unit, modulus);

    pow_s_.resize(length + 1, 1);
    pow_st_.resize(length + 2, 1);
    for (uint32_t m = 1; m <= length; ++m) pow_s_[m] = rpow_res(s_index(m));
    for (uint32_t m = 1; m <= length + 1; ++m) pow_st_[m] = rpow_res(s_tilde(m));

    for (uint32_t l = 1;; ++l) {
        if (static_cast<uint64_t>(std::llabs(s_index(l))) % group_order == 0) {
            margin_ = l;
            break;
        }
    }
}

Context Context::with_mode(ScalarMode m) const {
    Context c = *this;
    c.mode = m;
    return c;
}

bool Context::same_ring(const Context& other) const {
    return p == other.p && precision == other.precision && length == other.length &&
           unit == other.unit;
}

uint64_t Context::reduce(int64_t x) const {
    int64_t m = static_cast<int64_t>(modulus);
    int64_t r = x % m;
    return static_cast<uint64_t>(r < 0 ? r + m : r);
}

uint64_t Context::pow_p(uint32_t e) const {
    if (e >= precision) return 0;
    uint64_t acc = 1;
    for (uint32_t i = 0; i < e; ++i) acc *= p;
    return acc;
}

uint64_t Context::rpow_res(int64_t e) const {
    const int64_t order = static_cast<int64_t>((p - 1) * (modulus / p));
    int64_t r = e % order;
    if (r < 0) r += order;
    return mod_pow(unit, static_cast<uint64_t>(r), modulus);
}

uint64_t Context::r_s(uint32_t m) const {
    assert(m >= 1 && m <= length);
    return pow_s_[m];
}

uint64_t Context::r_st(uint32_t m) const {
    assert(m >= 1 && m <= length + 1);
    return pow_st_[m];
}

uint32_t Context::twist_val(int64_t k) const {
    assert(k != 0);
    return int_valuation(p, static_cast<uint64_t>(std::llabs(k))) + 1;
}

uint64_t Context::twist_unit_res(int64_t k) const {
    assert(k != 0);
    if (mode == ScalarMode::Normalized) return pow_p(std::min(twist_val(k), precision));
    return sub(rpow_res(k * static_cast<int64_t>(p - 1)), 1);
}

uint32_t Context::pivot_above(uint32_t m) const {
    const uint64_t group_order = (p - 1) * (modulus / p);
    for (uint32_t l = m + 1; l < length; ++l)
        if (static_cast<uint64_t>(std::llabs(s_index(l))) % group_order == 0) return l;
    throw untrusted_support_error("no pivot index below the truncation length");
}

PadicInt PadicInt::from_residue(const Context& c, uint64_t r) {
    PadicInt x;
    x.residue = r % c.modulus;
    x.ctx = &c;
    return x;
}

std::optional<uint32_t> PadicInt::valuation() const {
    if (residue == 0) return std::nullopt;
    return int_valuation(ctx->p, residue);
}

PadicInt PadicInt::inverse() const {
    if (residue % ctx->p == 0) throw std::domain_error("inverse of a non-unit");
    return from_residue(*ctx, mod_inverse(residue, ctx->modulus));
}

PadicInt PadicInt::pow(int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    return from_residue(*ctx, mod_pow(residue, static_cast<uint64_t>(e), ctx->modulus));
}

namespace {
void check_ring(const PadicInt& a, const PadicInt& b) {
    if (a.ctx == nullptr || b.ctx == nullptr || a.ctx->modulus != b.ctx->modulus)
        throw shape_error("mixed p-adic contexts");
}
}  // namespace

PadicInt& PadicInt::operator+=(const PadicInt& o) {
    check_ring(*this, o);
    residue = ctx->add(residue, o.residue);
    return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& o) {
    check_ring(*this, o);
    residue = ctx->sub(residue, o.residue);
    return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& o) {
    check_ring(*this, o);
    residue = ctx->mul(residue, o.residue);
    return *this;
}

PadicInt operator+(PadicInt a, const PadicInt& b) { return a += b; }
PadicInt operator-(PadicInt a, const PadicInt& b) { return a -= b; }
PadicInt operator*(PadicInt a, const PadicInt& b) { return a *= b; }

PadicInt operator-(const PadicInt& a) {
    return PadicInt::from_residue(*a.ctx, a.ctx->neg(a.residue));
}

bool operator==(const PadicInt& a, const PadicInt& b) {
    check_ring(a, b);
    return a.residue == b.residue;
}

bool operator!=(const PadicInt& a, const PadicInt& b) { return !(a == b); }

uint64_t div_exact_res(const Context& c, uint64_t a, uint64_t b) {
    if (b == 0) throw std::domain_error("div_exact: division by zero residue");
    if (a == 0) return 0;
    const uint32_t w = int_valuation(c.p, b);
    if (int_valuation(c.p, a) < w)
        throw precision_error("div_exact: valuation of divisor exceeds dividend");
    const uint64_t pw = c.pow_p(w);
    const uint64_t u = b / pw;
    uint64_t q = c.mul(a / pw, mod_inverse(u, c.modulus));
    return q % (c.modulus / pw);  // canonical lift
}

PadicInt div_exact(const PadicInt& a, const PadicInt& b) {
    check_ring(a, b);
    return PadicInt::from_residue(*a.ctx, div_exact_res(*a.ctx, a.residue, b.residue));
}

PadicFraction::PadicFraction(const PadicInt& m, uint32_t e) : mantissa(m), exponent(e) {
    if (exponent > m.ctx->precision + kFractionExponentSlack)
        throw precision_error("fraction exponent exceeds the precision cap");
    normalize();
}

PadicFraction PadicFraction::zero(const Context& c) {
    return PadicFraction(PadicInt(c, 0), 0);
}

PadicFraction PadicFraction::integral(const Context& c, int64_t value) {
    return PadicFraction(PadicInt(c, value), 0);
}

PadicFraction PadicFraction::make(const Context& c, int64_t mantissa, uint32_t exponent) {
    return PadicFraction(PadicInt(c, mantissa), exponent);
}

const Context& PadicFraction::context() const { return *mantissa.ctx; }

void PadicFraction::normalize() {
    if (mantissa.residue == 0) {
        exponent = 0;
        return;
    }
    const uint64_t p = mantissa.ctx->p;
    while (exponent > 0 && mantissa.residue % p == 0) {
        mantissa.residue /= p;
        --exponent;
    }
}

PadicFraction PadicFraction::mod_local() const {
    const Context& c = context();
    if (exponent == 0) return zero(c);
    if (exponent >= c.precision) return *this;  // all known digits sit below the exponent
    const uint64_t pe = c.pow_p(exponent);
    return PadicFraction(PadicInt::from_residue(c, mantissa.residue % pe), exponent);
}

PadicFraction PadicFraction::times(const PadicInt& x) const {
    // Split off the p-power and cancel it against the exponent first; folding
    // it into the mantissa mod p^M would discard the top digits.
    if (x.is_zero()) return zero(context());
    const Context& c = context();
    const uint32_t w = *x.valuation();
    const PadicInt u = PadicInt::from_residue(c, x.residue / c.pow_p(w));
    return PadicFraction(mantissa * u, exponent).times_p_power(w);
}

PadicFraction PadicFraction::times_p_power(uint32_t e) const {
    const Context& c = context();
    const uint32_t drop = std::min(e, exponent);
    PadicInt m = mantissa;
    m.residue = c.mul(m.residue, c.pow_p(e - drop));
    return PadicFraction(m, exponent - drop);
}

PadicFraction PadicFraction::div_by(const PadicInt& x) const {
    if (x.is_zero()) throw std::domain_error("fraction division by zero residue");
    const Context& c = context();
    const uint32_t w = *x.valuation();
    PadicInt u = PadicInt::from_residue(c, x.residue / c.pow_p(w));
    return PadicFraction(mantissa * u.inverse(), exponent + w);
}

std::string PadicFraction::str() const {
    if (is_zero()) return "0";
    std::string s = std::to_string(mantissa.residue);
    if (exponent == 0) return s;
    return s + "/" + std::to_string(context().pow_p(exponent));
}

PadicFraction operator+(const PadicFraction& a, const PadicFraction& b) {
    const Context& c = a.context();
    if (!c.same_ring(b.context())) throw shape_error("mixed fraction contexts");
    const uint32_t e = std::max(a.exponent, b.exponent);
    uint64_t ra = c.mul(a.mantissa.residue, c.pow_p(e - a.exponent));
    uint64_t rb = c.mul(b.mantissa.residue, c.pow_p(e - b.exponent));
    return PadicFraction(PadicInt::from_residue(c, c.add(ra, rb)), e);
}

PadicFraction operator-(const PadicFraction& a) {
    return PadicFraction(-a.mantissa, a.exponent);
}

PadicFraction operator-(const PadicFraction& a, const PadicFraction& b) {
    return a + (-b);
}

bool operator==(const PadicFraction& a, const PadicFraction& b) {
    return a.context().same_ring(b.context()) && a.exponent == b.exponent &&
           a.mantissa.residue == b.mantissa.residue;
}

bool operator!=(const PadicFraction& a, const PadicFraction& b) { return !(a == b); }

}  // namespace edga
