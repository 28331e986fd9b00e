#include "edga/complex.hpp"

#include <algorithm>

namespace edga {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

WindowShape window_shape(const Context& c, int64_t degree) {
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    const int64_t k = floor_div(degree + 1, period);
    const int64_t o = degree - period * k;
    WindowShape s;
    s.k = k;
    switch (o) {
        case -1: s.offset = -1; s.num_seqs = 1; s.has_rat = false; break;
        case 0:  s.offset = 0;  s.num_seqs = 2; s.has_rat = (k == 0); break;
        case 1:  s.offset = 1;  s.num_seqs = 1; s.has_rat = true; break;
        case 2:  s.offset = 2;  s.num_seqs = 0; s.has_rat = true; break;
        default: s.k = 0; s.offset = kNoWindow; break;
    }
    return s;
}

ComplexWindow window(const Context& c, int64_t k) {
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    ComplexWindow w;
    w.k = k;
    for (int i = 0; i < 4; ++i) {
        w.degrees[i] = period * k + (i - 1);
        w.shapes[i] = window_shape(c, w.degrees[i]);
    }
    return w;
}

Cochain Cochain::zero(const Context& c, int64_t degree) {
    const WindowShape s = window_shape(c, degree);
    Cochain x;
    x.ctx = &c;
    x.degree = degree;
    for (uint32_t i = 0; i < s.num_seqs; ++i) x.seqs.emplace_back(c, s.k);
    if (s.has_rat) x.rat = PadicFraction::zero(c);
    return x;
}

Cochain Cochain::make(const Context& c, int64_t degree, std::vector<ThetaSeq> seqs,
                      std::optional<PadicFraction> rat) {
    Cochain x;
    x.ctx = &c;
    x.degree = degree;
    x.seqs = std::move(seqs);
    x.rat = std::move(rat);
    x.validate();
    return x;
}

void Cochain::validate() const {
    if (ctx == nullptr) throw shape_error("cochain without context");
    const WindowShape s = window_shape(*ctx, degree);
    if (seqs.size() != s.num_seqs || rat.has_value() != s.has_rat)
        throw shape_error("cochain components do not match the degree shape");
    for (const ThetaSeq& q : seqs) {
        if (!ctx->same_ring(*q.ctx)) throw shape_error("cochain mixes contexts");
        if (q.twist != s.k) throw shape_error("component twist differs from window twist");
        if (q.coeffs.size() != ctx->length) throw shape_error("component length mismatch");
    }
}

bool Cochain::is_zero() const {
    for (const ThetaSeq& q : seqs)
        if (!q.is_zero()) return false;
    return !rat || rat->is_zero();
}

const PadicFraction& Cochain::rational() const {
    if (!rat) throw shape_error("cochain carries no rational component");
    return *rat;
}

Cochain& Cochain::operator+=(const Cochain& o) {
    if (degree != o.degree) throw shape_error("adding cochains of different degrees");
    for (size_t i = 0; i < seqs.size(); ++i) seqs[i] += o.seqs[i];
    if (rat) rat = *rat + *o.rat;
    return *this;
}

Cochain Cochain::scaled(uint64_t residue) const {
    Cochain out = *this;
    for (ThetaSeq& q : out.seqs) q = q.scaled(residue);
    if (out.rat) out.rat = out.rat->times(PadicInt::from_residue(*ctx, residue));
    return out;
}

Cochain operator+(Cochain a, const Cochain& b) { return a += b; }

Cochain operator-(const Cochain& a) {
    Cochain out = a;
    for (ThetaSeq& q : out.seqs) q = -q;
    if (out.rat) out.rat = -*out.rat;
    return out;
}

bool operator==(const Cochain& a, const Cochain& b) {
    if (a.degree != b.degree || a.seqs.size() != b.seqs.size() ||
        a.rat.has_value() != b.rat.has_value())
        return false;
    for (size_t i = 0; i < a.seqs.size(); ++i)
        if (a.seqs[i] != b.seqs[i]) return false;
    return !a.rat || *a.rat == *b.rat;
}

bool operator!=(const Cochain& a, const Cochain& b) { return !(a == b); }

Cochain differential(const Cochain& x) {
    x.validate();
    const Context& c = *x.ctx;
    const WindowShape s = window_shape(c, x.degree);
    switch (s.offset) {
        case -1: {
            const ThetaSeq& a = x.seqs[0];
            std::vector<ThetaSeq> out{psi_pre(a), psi_post(a)};
            std::optional<PadicFraction> rat;
            if (s.k == 0) rat = PadicFraction::zero(c);
            return Cochain::make(c, x.degree + 1, std::move(out), std::move(rat));
        }
        case 0: {
            const ThetaSeq& a = x.seqs[0];
            const ThetaSeq& b = x.seqs[1];
            ThetaSeq seq = psi_post(a) - psi_pre(b);
            PadicFraction q = q_post(b);
            if (x.rat) q = q - q_pre(*x.rat);
            return Cochain::make(c, x.degree + 1, {std::move(seq)}, q);
        }
        case 1: {
            PadicFraction q = q_post(x.seqs[0]) + psi_pre_rat(c, x.rational(), s.k);
            return Cochain::make(c, x.degree + 1, {}, q);
        }
        default:
            return Cochain::zero(c, x.degree + 1);
    }
}

Cochain random_cochain(const Context& c, int64_t degree, std::mt19937_64& rng,
                       uint32_t support_limit) {
    const WindowShape s = window_shape(c, degree);
    const uint32_t limit = support_limit == 0 ? c.length : std::min(support_limit, c.length);
    std::uniform_int_distribution<uint64_t> coeff(0, c.modulus - 1);
    std::uniform_int_distribution<uint32_t> expo(0, c.precision - 1);
    Cochain x = Cochain::zero(c, degree);
    for (ThetaSeq& q : x.seqs)
        for (uint32_t m = 0; m < limit; ++m) q.coeffs[m] = coeff(rng);
    if (s.has_rat)
        x.rat = PadicFraction(PadicInt::from_residue(c, coeff(rng)), expo(rng));
    return x;
}

DdReport verify_dd(const Context& c, int64_t k, uint32_t samples, uint64_t seed) {
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    DdReport report{k, samples, seed, 0, false};
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(k + 64)));
    for (int offset = -1; offset <= 2; ++offset) {
        const int64_t degree = period * k + offset;
        for (uint32_t i = 0; i < samples; ++i) {
            const Cochain x = random_cochain(c, degree, rng);
            const Cochain dd = differential(differential(x));
            for (const ThetaSeq& q : dd.seqs)
                for (uint64_t v : q.coeffs) report.max_residue = std::max(report.max_residue, v);
            if (dd.rat && !dd.rat->is_zero())
                report.max_residue = std::max(report.max_residue, dd.rat->mantissa.residue);
        }
    }
    report.pass = report.max_residue == 0;
    return report;
}

}  // namespace edga
