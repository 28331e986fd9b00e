#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edga/arith.hpp"

namespace edga {

/// A twist index k together with N coefficients in the Theta operator basis:
/// the element sum_m coeffs[m] * Theta_m(Psi^r) living in the twist-k copy of
/// the degree-zero operation algebra.  All structure maps are lower
/// triangular in the index m, so the truncation at N is exact.
struct ThetaSeq {
    const Context* ctx = nullptr;
    int64_t twist = 0;
    std::vector<uint64_t> coeffs;

    ThetaSeq() = default;
    ThetaSeq(const Context& c, int64_t k) : ctx(&c), twist(k), coeffs(c.length, 0) {}

    static ThetaSeq basis(const Context& c, int64_t k, uint32_t m);

    bool is_zero() const;
    /// One past the last nonzero index (0 for the zero sequence).
    uint32_t support_end() const;

    ThetaSeq& operator+=(const ThetaSeq& o);
    ThetaSeq& operator-=(const ThetaSeq& o);
    ThetaSeq scaled(uint64_t residue) const;
};

ThetaSeq operator+(ThetaSeq a, const ThetaSeq& b);
ThetaSeq operator-(ThetaSeq a, const ThetaSeq& b);
ThetaSeq operator-(const ThetaSeq& a);
bool operator==(const ThetaSeq& a, const ThetaSeq& b);
bool operator!=(const ThetaSeq& a, const ThetaSeq& b);

/// Postcomposition map: multiplication by the twist scalar, zero at twist 0.
/// Throws precision_error when the scalar vanishes mod p^M (dead twist).
ThetaSeq psi_post(const ThetaSeq& a);

/// Precomposition map.  With c the twist scalar (0 at twist 0):
///   b_0 = c * a_0,   b_m = a_m (r^{s(m)} - 1 + c) + a_{m-1}.
ThetaSeq psi_pre(const ThetaSeq& a);

/// Index-zero coefficient as an integral fraction at twist 0, zero otherwise.
PadicFraction q_post(const ThetaSeq& a);

PadicFraction q_pre(const PadicFraction& x);

/// The rational piece of the precomposition map: zero at twist 0, otherwise
/// multiplication by the twist scalar.
PadicFraction psi_pre_rat(const Context& c, const PadicFraction& x, int64_t k);

/// Theta_m evaluated at the eigenvalue r^{i(p-1)}:
///   prod_{j=1..m} (r^{i(p-1)} - r^{s~(j)}) mod p^M  (empty product = 1).
PadicInt theta_scalar(const Context& c, int64_t i, uint32_t m);

/// Valuation of theta_scalar; nullopt ("top") when the residue vanishes.
std::optional<uint32_t> n_exp(const Context& c, int64_t i, uint32_t m);

/// The same exponent computed exactly from nu(r^e - 1) = 1 + nu(e) for
/// (p-1) | e.  nullopt means the scalar is exactly zero (a factor with
/// i(p-1) = s~(j)), not merely zero at the working precision.
std::optional<int64_t> n_exp_exact(const Context& c, int64_t i, uint32_t m);

/// Multiplication by (Psi^r - r^c) in the Theta basis:
///   b_0 = a_0 (r^{s~(1)} - r^c),   b_m = a_m (r^{s~(m+1)} - r^c) + a_{m-1}.
ThetaSeq mul_linear_factor(const ThetaSeq& a, int64_t c_exp);

/// Multiplication by Theta_1 = (Psi^r - 1); agrees with psi_pre at twist 0.
ThetaSeq mul_theta1(const ThetaSeq& a);

/// Twisted product: for each pair (m, n) with nonzero a_m b_n, Theta_m
/// Theta_n is expanded by m linear-factor multiplications applied to the
/// basis sequence Theta_n and scaled by a_m b_n p^E with
///   E = N(i+k, m) - N(i, m) + N(i+l, n) - N(i, n),  i = m + n,
/// where N is the exact exponent of n_exp_exact.  Pairs whose positive
/// exponents are exactly infinite contribute zero.  Twists add.
ThetaSeq seq_product(const ThetaSeq& a, const ThetaSeq& b);

}  // namespace edga
