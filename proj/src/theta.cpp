#include "edga/theta.hpp"

#include <cassert>
#include <cstdlib>

namespace edga {

namespace {

void check_same(const ThetaSeq& a, const ThetaSeq& b) {
    if (a.ctx == nullptr || b.ctx == nullptr || !a.ctx->same_ring(*b.ctx))
        throw shape_error("sequence contexts differ");
    if (a.twist != b.twist) throw shape_error("sequence twists differ");
}

}  // namespace

ThetaSeq ThetaSeq::basis(const Context& c, int64_t k, uint32_t m) {
    if (m >= c.length) throw truncation_error("basis index beyond truncation");
    ThetaSeq s(c, k);
    s.coeffs[m] = 1;
    return s;
}

bool ThetaSeq::is_zero() const {
    for (uint64_t v : coeffs)
        if (v != 0) return false;
    return true;
}

uint32_t ThetaSeq::support_end() const {
    for (uint32_t m = static_cast<uint32_t>(coeffs.size()); m > 0; --m)
        if (coeffs[m - 1] != 0) return m;
    return 0;
}

ThetaSeq& ThetaSeq::operator+=(const ThetaSeq& o) {
    check_same(*this, o);
    for (uint32_t m = 0; m < ctx->length; ++m) coeffs[m] = ctx->add(coeffs[m], o.coeffs[m]);
    return *this;
}

ThetaSeq& ThetaSeq::operator-=(const ThetaSeq& o) {
    check_same(*this, o);
    for (uint32_t m = 0; m < ctx->length; ++m) coeffs[m] = ctx->sub(coeffs[m], o.coeffs[m]);
    return *this;
}

ThetaSeq ThetaSeq::scaled(uint64_t residue) const {
    ThetaSeq out(*ctx, twist);
    for (uint32_t m = 0; m < ctx->length; ++m) out.coeffs[m] = ctx->mul(coeffs[m], residue);
    return out;
}

ThetaSeq operator+(ThetaSeq a, const ThetaSeq& b) { return a += b; }
ThetaSeq operator-(ThetaSeq a, const ThetaSeq& b) { return a -= b; }

ThetaSeq operator-(const ThetaSeq& a) {
    ThetaSeq out(*a.ctx, a.twist);
    for (uint32_t m = 0; m < a.ctx->length; ++m) out.coeffs[m] = a.ctx->neg(a.coeffs[m]);
    return out;
}

bool operator==(const ThetaSeq& a, const ThetaSeq& b) {
    if (a.ctx == nullptr || b.ctx == nullptr || !a.ctx->same_ring(*b.ctx)) return false;
    return a.twist == b.twist && a.coeffs == b.coeffs;
}

bool operator!=(const ThetaSeq& a, const ThetaSeq& b) { return !(a == b); }

ThetaSeq psi_post(const ThetaSeq& a) {
    const Context& c = *a.ctx;
    if (a.twist == 0) return ThetaSeq(c, 0);
    const uint64_t u = c.twist_unit_res(a.twist);
    if (u == 0)
        throw precision_error("psi_post: twist scalar vanishes at this precision");
    return a.scaled(u);
}

ThetaSeq psi_pre(const ThetaSeq& a) {
    const Context& c = *a.ctx;
    const uint64_t add = a.twist == 0 ? 0 : c.twist_unit_res(a.twist);
    ThetaSeq out(c, a.twist);
    out.coeffs[0] = c.mul(add, a.coeffs[0]);
    for (uint32_t m = 1; m < c.length; ++m) {
        const uint64_t f = c.add(c.sub(c.r_s(m), 1 % c.modulus), add);
        out.coeffs[m] = c.add(c.mul(a.coeffs[m], f), a.coeffs[m - 1]);
    }
    return out;
}

PadicFraction q_post(const ThetaSeq& a) {
    const Context& c = *a.ctx;
    if (a.twist != 0) return PadicFraction::zero(c);
    return PadicFraction(PadicInt::from_residue(c, a.coeffs[0]), 0);
}

PadicFraction q_pre(const PadicFraction& x) { return x; }

PadicFraction psi_pre_rat(const Context& c, const PadicFraction& x, int64_t k) {
    if (k == 0) return PadicFraction::zero(c);
    return x.times(PadicInt::from_residue(c, c.twist_unit_res(k)));
}

PadicInt theta_scalar(const Context& c, int64_t i, uint32_t m) {
    if (m >= c.length) throw truncation_error("theta_scalar: index beyond truncation");
    const uint64_t base = c.rpow_res(i * static_cast<int64_t>(c.p - 1));
    uint64_t prod = 1 % c.modulus;
    for (uint32_t j = 1; j <= m; ++j) prod = c.mul(prod, c.sub(base, c.r_st(j)));
    return PadicInt::from_residue(c, prod);
}

std::optional<uint32_t> n_exp(const Context& c, int64_t i, uint32_t m) {
    return theta_scalar(c, i, m).valuation();
}

std::optional<int64_t> n_exp_exact(const Context& c, int64_t i, uint32_t m) {
    const int64_t pm1 = static_cast<int64_t>(c.p - 1);
    int64_t total = 0;
    for (uint32_t j = 1; j <= m; ++j) {
        const int64_t e = i * pm1 - s_tilde(j);
        if (e == 0) return std::nullopt;
        if (e % pm1 != 0) continue;
        total += 1 + int_valuation(c.p, static_cast<uint64_t>(std::llabs(e)));
    }
    return total;
}

ThetaSeq mul_linear_factor(const ThetaSeq& a, int64_t c_exp) {
    const Context& c = *a.ctx;
    const uint64_t root = c.rpow_res(c_exp);
    ThetaSeq out(c, a.twist);
    out.coeffs[0] = c.mul(a.coeffs[0], c.sub(c.r_st(1), root));
    for (uint32_t m = 1; m < c.length; ++m)
        out.coeffs[m] = c.add(c.mul(a.coeffs[m], c.sub(c.r_st(m + 1), root)), a.coeffs[m - 1]);
    return out;
}

ThetaSeq mul_theta1(const ThetaSeq& a) { return mul_linear_factor(a, 0); }

ThetaSeq seq_product(const ThetaSeq& a, const ThetaSeq& b) {
    const Context& c = *a.ctx;
    if (!c.same_ring(*b.ctx)) throw shape_error("sequence contexts differ");
    ThetaSeq out(c, a.twist + b.twist);
    const uint32_t ea = a.support_end(), eb = b.support_end();
    for (uint32_t m = 0; m < ea; ++m) {
        if (a.coeffs[m] == 0) continue;
        for (uint32_t n = 0; n < eb; ++n) {
            if (b.coeffs[n] == 0) continue;
            if (m + n >= c.length)
                throw truncation_error("seq_product: pair index beyond truncation");
            const int64_t i = static_cast<int64_t>(m) + n;
            const auto up_m = n_exp_exact(c, i + a.twist, m);
            const auto up_n = n_exp_exact(c, i + b.twist, n);
            if (!up_m || !up_n) continue;  // a factor is exactly zero
            const auto dn_m = n_exp_exact(c, i, m);
            const auto dn_n = n_exp_exact(c, i, n);
            if (!dn_m || !dn_n)
                throw std::logic_error("seq_product: untwisted exponent infinite");
            const int64_t e = *up_m - *dn_m + *up_n - *dn_n;
            if (e < 0)
                throw negative_twist_error("seq_product: negative twist exponent");
            if (e >= static_cast<int64_t>(c.precision)) continue;
            const uint64_t scale =
                c.mul(c.mul(a.coeffs[m], b.coeffs[n]), c.pow_p(static_cast<uint32_t>(e)));
            if (scale == 0) continue;
            ThetaSeq term = ThetaSeq::basis(c, 0, n);
            for (uint32_t j = 1; j <= m; ++j) term = mul_linear_factor(term, s_tilde(j));
            for (uint32_t t = 0; t < c.length; ++t)
                out.coeffs[t] = c.add(out.coeffs[t], c.mul(term.coeffs[t], scale));
        }
    }
    return out;
}

}  // namespace edga
