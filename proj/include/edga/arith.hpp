#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edga {

// Error taxonomy. Configuration problems are std::invalid_argument so the CLI
// can map them to a distinct exit code; everything else derives from
// std::runtime_error.
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class shape_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class negative_twist_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class truncation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class untrusted_support_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class degree_mismatch_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class not_boundary_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(uint64_t n);

/// Smallest positive generator of (Z/p^2)^x, for an odd prime p.
uint64_t adams_unit(uint64_t p);

// Index bookkeeping for the Theta operator basis:
//   s_tilde(m) = m/2 for even m, (1-m)/2 for odd m, so the values run
//   0, 0, 1, -1, 2, -2, ...  and s(m) = s_tilde(m+1) for m >= 1.
int64_t s_tilde(int64_t m);
int64_t s_index(int64_t m);

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t mod);
uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t mod);
uint64_t mod_inverse(uint64_t a, uint64_t mod);
uint32_t int_valuation(uint64_t p, uint64_t x);

/// How the twist scalar attached to a nonzero twist k is normalized.
/// Normalized uses the constant p^{nu(k)+1}; Exact keeps r^{k(p-1)} - 1,
/// which agrees up to a unit but changes chain-level products.
enum class ScalarMode { Normalized, Exact };

// Extra room allowed in fraction denominators beyond the working precision.
inline constexpr uint32_t kFractionExponentSlack = 8;

/// Global parameters shared by every value: an odd prime p, the working
/// precision M (arithmetic is mod p^M), the sequence truncation N, and the
/// Adams unit r generating (Z/p^2)^x.  Immutable after construction.
struct Context {
    uint64_t p = 0;
    uint32_t precision = 0;  // M
    uint32_t length = 0;     // N
    uint64_t unit = 0;       // r
    ScalarMode mode = ScalarMode::Normalized;

    uint64_t modulus = 0;    // p^M
    uint64_t unit_inv = 0;   // r^{-1} mod p^M

    Context(uint64_t p, uint32_t precision = 3, uint32_t length = 0,
            uint64_t unit = 0, ScalarMode mode = ScalarMode::Normalized);

    Context with_mode(ScalarMode m) const;

    static uint32_t auto_length(uint64_t p, uint32_t precision);

    /// Same coefficient ring (p, precision, length); mode may differ.
    bool same_ring(const Context& other) const;

    uint64_t reduce(int64_t x) const;
    uint64_t add(uint64_t a, uint64_t b) const { return a + b >= modulus ? a + b - modulus : a + b; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + modulus - b; }
    uint64_t mul(uint64_t a, uint64_t b) const { return mod_mul(a, b, modulus); }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : modulus - a; }
    uint64_t pow_p(uint32_t e) const;

    /// r^e mod p^M for any integer exponent (the order of r divides out).
    uint64_t rpow_res(int64_t e) const;
    uint64_t r_s(uint32_t m) const;   // cached r^{s(m)}, 1 <= m <= length
    uint64_t r_st(uint32_t m) const;  // cached r^{s~(m)}, 1 <= m <= length + 1

    uint32_t twist_val(int64_t k) const;       // nu(k) + 1 for k != 0
    uint64_t twist_unit_res(int64_t k) const;  // scalar acting on twist k

    /// Margin L of the trusted window: the least l with (p-1)p^{M-1} | s(l).
    uint32_t trusted_margin() const { return margin_; }

    /// Least pivot index l > m, i.e. r^{s(l)} = 1 mod p^M.
    uint32_t pivot_above(uint32_t m) const;

private:
    std::vector<uint64_t> pow_s_;
    std::vector<uint64_t> pow_st_;
    uint32_t margin_ = 0;
};

/// Residue mod p^M together with its exact valuation.  The valuation of a
/// zero residue is reported as "top" (nullopt), never as a number.
struct PadicInt {
    uint64_t residue = 0;
    const Context* ctx = nullptr;

    PadicInt() = default;
    PadicInt(const Context& c, int64_t value) : residue(c.reduce(value)), ctx(&c) {}

    static PadicInt from_residue(const Context& c, uint64_t r);

    std::optional<uint32_t> valuation() const;
    bool is_zero() const { return residue == 0; }

    PadicInt inverse() const;
    PadicInt pow(int64_t e) const;

    PadicInt& operator+=(const PadicInt& o);
    PadicInt& operator-=(const PadicInt& o);
    PadicInt& operator*=(const PadicInt& o);
};

PadicInt operator+(PadicInt a, const PadicInt& b);
PadicInt operator-(PadicInt a, const PadicInt& b);
PadicInt operator*(PadicInt a, const PadicInt& b);
PadicInt operator-(const PadicInt& a);
bool operator==(const PadicInt& a, const PadicInt& b);
bool operator!=(const PadicInt& a, const PadicInt& b);

/// Exact division a/b for residues with val(b) <= val(a).  The quotient is
/// the canonical lift in [0, p^{M - val(b)}), so b * div_exact(a, b) == a.
PadicInt div_exact(const PadicInt& a, const PadicInt& b);
uint64_t div_exact_res(const Context& c, uint64_t a, uint64_t b);

/// mantissa * p^{-exponent}.  Canonical form keeps either exponent = 0 (an
/// element of Z_(p), mantissa arbitrary) or a unit mantissa.  The exponent is
/// capped at precision + kFractionExponentSlack.
struct PadicFraction {
    PadicInt mantissa;
    uint32_t exponent = 0;

    PadicFraction() = default;
    PadicFraction(const PadicInt& m, uint32_t e);

    static PadicFraction zero(const Context& c);
    static PadicFraction integral(const Context& c, int64_t value);
    static PadicFraction make(const Context& c, int64_t mantissa, uint32_t exponent);

    const Context& context() const;
    bool is_zero() const { return mantissa.is_zero(); }

    /// Canonical representative of the class in Q/Z_(p):
    /// (mantissa mod p^e) * p^{-e}; zero iff the value is p-locally integral.
    PadicFraction mod_local() const;

    PadicFraction times(const PadicInt& x) const;
    PadicFraction times_p_power(uint32_t e) const;
    /// Division by a nonzero residue u * p^w; raises the exponent by w.
    PadicFraction div_by(const PadicInt& x) const;

    std::string str() const;

private:
    void normalize();
};

PadicFraction operator+(const PadicFraction& a, const PadicFraction& b);
PadicFraction operator-(const PadicFraction& a, const PadicFraction& b);
PadicFraction operator-(const PadicFraction& a);
bool operator==(const PadicFraction& a, const PadicFraction& b);
bool operator!=(const PadicFraction& a, const PadicFraction& b);

}  // namespace edga
