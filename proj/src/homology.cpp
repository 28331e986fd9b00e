#include "edga/homology.hpp"

#include <algorithm>
#include <cassert>

namespace edga {

std::string GroupDescriptor::str(uint64_t p) const {
    switch (kind) {
        case GroupKind::Zero: return "0";
        case GroupKind::FreeLocalRankOne: return "Z_(" + std::to_string(p) + ")";
        case GroupKind::CyclicPPower: {
            uint64_t m = 1;
            for (uint32_t i = 0; i < exponent; ++i) m *= p;
            return "Z/" + std::to_string(m);
        }
        case GroupKind::RationalsModLocal: return "Q/Z_(" + std::to_string(p) + ")";
    }
    return "?";
}

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.kind == b.kind && (a.kind != GroupKind::CyclicPPower || a.exponent == b.exponent);
}

bool operator!=(const GroupDescriptor& a, const GroupDescriptor& b) { return !(a == b); }

std::string obstruction_str(Obstruction o) {
    switch (o) {
        case Obstruction::None: return "none";
        case Obstruction::IndexZeroNonzero: return "index-zero coefficient nonzero";
        case Obstruction::IndexZeroMismatch: return "index-zero coefficients disagree";
        case Obstruction::Divisibility: return "twist scalar does not divide the target";
        case Obstruction::RationalComponentNonzero: return "rational component nonzero";
        case Obstruction::FractionNotIntegral: return "fraction not p-locally integral";
        case Obstruction::NoIncomingDifferential: return "no incoming differential";
        case Obstruction::Inconsistent: return "input violates the cycle structure";
    }
    return "?";
}

std::pair<uint64_t, uint32_t> canonical_q(uint64_t p, uint64_t num, uint32_t e) {
    unsigned __int128 mod = 1;
    for (uint32_t i = 0; i < e; ++i) {
        mod *= p;
        if (mod > (static_cast<unsigned __int128>(1) << 62))
            throw precision_error("canonical_q: exponent too large");
    }
    num = static_cast<uint64_t>(num % mod);
    while (e > 0 && num != 0 && num % p == 0) {
        num /= p;
        --e;
    }
    if (num == 0) e = 0;
    return {num, e};
}

bool HomologyClass::is_zero_class() const {
    switch (kind) {
        case Kind::Zero: return true;
        case Kind::Torsion: return torsion_value == 0;
        case Kind::LocalInt: return local_residue == 0;
        case Kind::ModLocal: return q_exp == 0;
    }
    return true;
}

std::string HomologyClass::str(const Context& c) const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::Torsion:
            return std::to_string(torsion_value) + " mod " +
                   std::to_string(c.pow_p(torsion_exponent) == 0 ? c.modulus
                                                                 : c.pow_p(torsion_exponent));
        case Kind::LocalInt: return std::to_string(local_residue);
        case Kind::ModLocal: {
            if (q_exp == 0) return "0";
            uint64_t den = 1;
            for (uint32_t i = 0; i < q_exp; ++i) den *= c.p;
            return std::to_string(q_num) + "/" + std::to_string(den);
        }
    }
    return "?";
}

bool operator==(const HomologyClass& a, const HomologyClass& b) {
    if (a.degree != b.degree || a.kind != b.kind) return false;
    switch (a.kind) {
        case HomologyClass::Kind::Zero: return true;
        case HomologyClass::Kind::Torsion:
            return a.torsion_value == b.torsion_value && a.torsion_exponent == b.torsion_exponent;
        case HomologyClass::Kind::LocalInt: return a.local_residue == b.local_residue;
        case HomologyClass::Kind::ModLocal: return a.q_num == b.q_num && a.q_exp == b.q_exp;
    }
    return false;
}

bool operator!=(const HomologyClass& a, const HomologyClass& b) { return !(a == b); }

bool is_cycle(const Cochain& x) { return differential(x).is_zero(); }

bool is_trusted(const Cochain& x) {
    const Context& c = *x.ctx;
    const uint32_t bound = c.length - c.trusted_margin();
    for (const ThetaSeq& q : x.seqs)
        if (q.support_end() > bound) return false;
    return true;
}

namespace {

// Solves psi_pre(c) == a at twist 0 by downward induction from a pivot above
// the support; needs a_0 == 0 (the index-zero output of psi_pre vanishes).
ThetaSeq solve_psi_pre_twist0(const ThetaSeq& a) {
    const Context& c = *a.ctx;
    ThetaSeq out(c, 0);
    const uint32_t top = a.support_end();
    if (top == 0) return out;
    const uint32_t pivot = c.pivot_above(top - 1);
    for (uint32_t j = pivot; j >= 1; --j) {
        const uint64_t f = c.sub(c.r_s(j), 1 % c.modulus);
        out.coeffs[j - 1] = c.sub(a.coeffs[j], c.mul(out.coeffs[j], f));
    }
    return out;
}

WitnessResult fail(Obstruction o, std::string detail) {
    return {std::nullopt, o, std::move(detail)};
}

WitnessResult witness_window_start(const Cochain& x) {
    if (x.is_zero()) return {Cochain::zero(*x.ctx, x.degree - 1), Obstruction::None, ""};
    return fail(Obstruction::NoIncomingDifferential, "nonzero cycle at the window start");
}

WitnessResult witness_even_zero_twist(const Cochain& x) {
    const Context& c = *x.ctx;
    const ThetaSeq& a = x.seqs[0];
    if (!x.seqs[1].is_zero() || !x.rational().is_zero())
        return fail(Obstruction::Inconsistent, "trusted cycle with nonzero tail components");
    if (a.coeffs[0] != 0)
        return fail(Obstruction::IndexZeroNonzero,
                    "index-zero coefficient is " + std::to_string(a.coeffs[0]));
    ThetaSeq w = solve_psi_pre_twist0(a);
    return {Cochain::make(c, x.degree - 1, {std::move(w)}, std::nullopt), Obstruction::None, ""};
}

WitnessResult witness_even_nonzero_twist(const Cochain& x, int64_t k) {
    const Context& c = *x.ctx;
    const ThetaSeq& a = x.seqs[0];
    const ThetaSeq& b = x.seqs[1];
    const uint32_t nu1 = c.twist_val(k);
    const uint64_t lambda = c.twist_unit_res(k);
    if (lambda == 0) throw precision_error("twist scalar vanishes at this precision");
    const uint64_t pnu = c.pow_p(nu1);

    for (uint32_t m = 0; m < c.length; ++m)
        if (b.coeffs[m] % pnu != 0)
            return fail(Obstruction::Divisibility,
                        "second component at index " + std::to_string(m));
    if (a.coeffs[0] != b.coeffs[0])
        return fail(Obstruction::IndexZeroMismatch, "a_0 != b_0");

    // Base solution of psi_post(w) == b; determined modulo p^{M-nu-1}.
    ThetaSeq base(c, k);
    for (uint32_t m = 0; m < c.length; ++m)
        base.coeffs[m] = div_exact_res(c, b.coeffs[m], lambda);

    // The defect against psi_pre is divisible by p^{M-nu-1} for every cycle;
    // the missing digits are recovered by the same recurrence mod p^{nu+1}.
    const ThetaSeq pre = psi_pre(base);
    const uint64_t pcomp = c.pow_p(c.precision - nu1);
    std::vector<uint64_t> eprime(c.length, 0);
    uint32_t etop = 0;
    for (uint32_t m = 1; m < c.length; ++m) {
        const uint64_t e = c.sub(a.coeffs[m], pre.coeffs[m]);
        if (e % pcomp != 0)
            throw std::logic_error("cycle defect not divisible by the complementary power");
        eprime[m] = e / pcomp;
        if (eprime[m] != 0) etop = m + 1;
    }

    std::vector<uint64_t> delta(c.length, 0);
    const uint32_t top = std::max({a.support_end(), b.support_end(), etop});
    if (top > 0) {
        const uint32_t pivot = c.pivot_above(top - 1);
        for (uint32_t j = pivot; j >= 1; --j) {
            const uint64_t u = c.add(c.sub(c.r_s(j), 1 % c.modulus), lambda) % pnu;
            const uint64_t t = mod_mul(delta[j], u, pnu);
            delta[j - 1] = (eprime[j] + pnu - t) % pnu;
        }
    }

    ThetaSeq w(c, k);
    for (uint32_t m = 0; m < c.length; ++m)
        w.coeffs[m] = c.add(base.coeffs[m], c.mul(delta[m], pcomp));
    return {Cochain::make(c, x.degree - 1, {std::move(w)}, std::nullopt), Obstruction::None, ""};
}

WitnessResult witness_odd_zero_twist(const Cochain& x) {
    const Context& c = *x.ctx;
    const ThetaSeq& a = x.seqs[0];
    if (a.coeffs[0] != 0)
        return fail(Obstruction::Inconsistent, "cycle with nonzero index-zero coefficient");
    ThetaSeq cs = solve_psi_pre_twist0(a);
    ThetaSeq b = -cs;
    PadicFraction xq =
        PadicFraction(PadicInt::from_residue(c, b.coeffs[0]), 0) - x.rational();
    return {Cochain::make(c, x.degree - 1, {ThetaSeq(c, 0), std::move(b)}, xq),
            Obstruction::None, ""};
}

WitnessResult witness_odd_nonzero_twist(const Cochain& x, int64_t k) {
    const Context& c = *x.ctx;
    const ThetaSeq& cc = x.seqs[0];
    if (!x.rational().is_zero())
        return fail(Obstruction::RationalComponentNonzero, "target has a rational part");
    const uint32_t nu1 = c.twist_val(k);
    const uint64_t lambda = c.twist_unit_res(k);
    if (lambda == 0) throw precision_error("twist scalar vanishes at this precision");
    if (cc.coeffs[0] % c.pow_p(nu1) != 0)
        return fail(Obstruction::Divisibility,
                    "index-zero coefficient " + std::to_string(cc.coeffs[0]));

    // Downward from a pivot: A_q = B_q kills the twist-scalar term and leaves
    //   B_{q-1} = -(r^{s(q)} - 1) B_q - cc_q.
    ThetaSeq A(c, k), B(c, k);
    const uint32_t top = cc.support_end();
    if (top > 0) {
        const uint32_t pivot = c.pivot_above(top - 1);
        for (uint32_t q = pivot; q >= 1; --q) {
            A.coeffs[q] = B.coeffs[q];
            const uint64_t f = c.mul(c.sub(c.r_s(q), 1 % c.modulus), B.coeffs[q]);
            B.coeffs[q - 1] = c.sub(c.neg(f), cc.coeffs[q]);
        }
    }
    A.coeffs[0] = c.add(div_exact_res(c, cc.coeffs[0], lambda), B.coeffs[0]);
    return {Cochain::make(c, x.degree - 1, {std::move(A), std::move(B)}, std::nullopt),
            Obstruction::None, ""};
}

WitnessResult witness_top_zero_twist(const Cochain& x) {
    const Context& c = *x.ctx;
    const PadicFraction y = x.rational();
    if (!y.mod_local().is_zero())
        return fail(Obstruction::FractionNotIntegral, "class " + y.mod_local().str());
    ThetaSeq a(c, 0);
    a.coeffs[0] = y.mantissa.residue;  // integral after normalization
    return {Cochain::make(c, x.degree - 1, {std::move(a)}, PadicFraction::zero(c)),
            Obstruction::None, ""};
}

WitnessResult witness_top_nonzero_twist(const Cochain& x, int64_t k) {
    const Context& c = *x.ctx;
    const uint64_t lambda = c.twist_unit_res(k);
    if (lambda == 0) throw precision_error("twist scalar vanishes at this precision");
    PadicFraction y = x.rational().div_by(PadicInt::from_residue(c, lambda));
    return {Cochain::make(c, x.degree - 1, {ThetaSeq(c, k)}, std::move(y)),
            Obstruction::None, ""};
}

}  // namespace

WitnessResult boundary_witness(const Cochain& x) {
    x.validate();
    if (!is_cycle(x)) throw std::invalid_argument("boundary_witness: input is not a cycle");
    if (!is_trusted(x))
        throw untrusted_support_error("boundary_witness: support reaches the margin");
    const Context& c = *x.ctx;
    const WindowShape s = window_shape(c, x.degree);

    WitnessResult r;
    switch (s.offset) {
        case -1: r = witness_window_start(x); break;
        case 0:
            r = s.k == 0 ? witness_even_zero_twist(x) : witness_even_nonzero_twist(x, s.k);
            break;
        case 1:
            r = s.k == 0 ? witness_odd_zero_twist(x) : witness_odd_nonzero_twist(x, s.k);
            break;
        case 2:
            r = s.k == 0 ? witness_top_zero_twist(x) : witness_top_nonzero_twist(x, s.k);
            break;
        default:
            r = {Cochain::zero(c, x.degree - 1), Obstruction::None, ""};
            break;
    }
    if (r.found() && differential(*r.witness) != x)
        throw std::logic_error("constructed witness failed the differential re-check");
    return r;
}

HomologyClass class_of(const Cochain& x) {
    x.validate();
    if (!is_cycle(x)) throw std::invalid_argument("class_of: input is not a cycle");
    if (!is_trusted(x)) throw untrusted_support_error("class_of: support reaches the margin");
    const Context& c = *x.ctx;
    const WindowShape s = window_shape(c, x.degree);
    HomologyClass cls;
    cls.degree = x.degree;
    if (s.offset == 0 && s.k == 0) {
        cls.kind = HomologyClass::Kind::LocalInt;
        cls.local_residue = x.seqs[0].coeffs[0];
    } else if (s.offset == 1 && s.k != 0) {
        if (!x.rational().is_zero())
            throw precision_error("class_of: rational part of a cycle survives at this precision");
        const uint32_t nu1 = c.twist_val(s.k);
        if (nu1 >= c.precision) throw precision_error("class_of: torsion exceeds the precision");
        cls.kind = HomologyClass::Kind::Torsion;
        cls.torsion_exponent = nu1;
        cls.torsion_value = x.seqs[0].coeffs[0] % c.pow_p(nu1);
    } else if (s.offset == 2 && s.k == 0) {
        const PadicFraction f = x.rational().mod_local();
        if (f.exponent >= c.precision && !f.is_zero())
            throw precision_error("class_of: fraction class exceeds the working precision");
        cls.kind = HomologyClass::Kind::ModLocal;
        cls.q_num = f.mantissa.residue;
        cls.q_exp = f.exponent;
    } else {
        cls.kind = HomologyClass::Kind::Zero;
    }
    return cls;
}

ClassOrder class_order(const Context& c, const HomologyClass& cls) {
    switch (cls.kind) {
        case HomologyClass::Kind::Zero: return {false, 1};
        case HomologyClass::Kind::Torsion: {
            if (cls.torsion_value == 0) return {false, 1};
            const uint32_t v = int_valuation(c.p, cls.torsion_value);
            uint64_t order = 1;
            for (uint32_t i = v; i < cls.torsion_exponent; ++i) order *= c.p;
            return {false, order};
        }
        case HomologyClass::Kind::LocalInt:
            return cls.local_residue == 0 ? ClassOrder{false, 1} : ClassOrder{true, 0};
        case HomologyClass::Kind::ModLocal: {
            uint64_t order = 1;
            for (uint32_t i = 0; i < cls.q_exp; ++i) order *= c.p;
            return {false, order};
        }
    }
    return {false, 1};
}

GroupDescriptor homology_group(const Context& c, int64_t n) {
    const WindowShape s = window_shape(c, n);
    if (!s.in_window()) return GroupDescriptor::zero();
    switch (s.offset) {
        case -1: return GroupDescriptor::zero();
        case 0:
            return s.k == 0 ? GroupDescriptor::free_rank_one() : GroupDescriptor::zero();
        case 1: {
            if (s.k == 0) return GroupDescriptor::zero();
            const uint32_t nu1 = c.twist_val(s.k);
            if (nu1 >= c.precision)
                throw precision_error("homology_group: torsion exceeds the precision");
            return GroupDescriptor::cyclic(nu1);
        }
        case 2:
            return s.k == 0 ? GroupDescriptor::rationals_mod_local() : GroupDescriptor::zero();
    }
    return GroupDescriptor::zero();
}

Cochain random_even_cycle(const Context& c, int64_t k, std::mt19937_64& rng,
                          uint32_t support, uint64_t t) {
    if (k == 0) throw std::invalid_argument("random_even_cycle: k must be nonzero");
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    const uint32_t nu1 = c.twist_val(k);
    const uint64_t lambda = c.twist_unit_res(k);
    if (lambda == 0) throw precision_error("twist scalar vanishes at this precision");
    support = std::min(support, c.length - c.trusted_margin() - 1);

    std::uniform_int_distribution<uint64_t> coeff(0, c.modulus - 1);
    ThetaSeq a(c, k), b(c, k);
    for (uint32_t m = 1; m < support; ++m) a.coeffs[m] = coeff(rng);
    for (uint32_t m = support; m >= 1; --m) {
        const uint64_t u = c.add(c.sub(c.r_s(m), 1 % c.modulus), lambda);
        b.coeffs[m - 1] = c.sub(c.mul(lambda, a.coeffs[m]), c.mul(u, b.coeffs[m]));
    }
    a.coeffs[0] = c.add(b.coeffs[0], c.mul(c.pow_p(c.precision - nu1), t % c.modulus));
    return Cochain::make(c, period * k, {std::move(a), std::move(b)}, std::nullopt);
}

namespace {

struct Certifier {
    const Context& c;
    std::mt19937_64 rng;
    std::string detail;

    bool check(bool ok, const std::string& what) {
        if (!ok && detail.empty()) detail = what;
        return ok;
    }

    ThetaSeq random_seq(int64_t k, uint32_t limit, bool zero_index0) {
        std::uniform_int_distribution<uint64_t> coeff(0, c.modulus - 1);
        ThetaSeq q(c, k);
        for (uint32_t m = zero_index0 ? 1 : 0; m < limit; ++m) q.coeffs[m] = coeff(rng);
        return q;
    }
};

}  // namespace

CertReport certify_degree(const Context& c, int64_t n, uint32_t probes, uint64_t seed) {
    const WindowShape s = window_shape(c, n);
    CertReport report;
    report.degree = n;
    report.group = homology_group(c, n);
    report.probes = probes;

    Certifier cf{c, std::mt19937_64(seed ^ (0x517cc1b727220a95ULL * static_cast<uint64_t>(n + 1024))), ""};
    const uint32_t trusted = c.length - c.trusted_margin();
    const uint32_t limit = std::min(trusted - 1, 24u);
    bool ok = true;

    if (!s.in_window()) {
        report.passed = true;
        return report;
    }

    switch (s.offset) {
        case -1: {
            // injective differential: nonzero probes are never cycles
            for (uint32_t i = 0; ok && i < probes; ++i) {
                ThetaSeq q = cf.random_seq(s.k, limit, false);
                if (q.is_zero()) q.coeffs[0] = 1;
                Cochain x = Cochain::make(c, n, {std::move(q)}, std::nullopt);
                ok = cf.check(!is_cycle(x), "nonzero probe is a cycle at the window start");
            }
            break;
        }
        case 0: {
            if (s.k == 0) {
                Cochain gen = Cochain::make(c, n, {ThetaSeq::basis(c, 0, 0), ThetaSeq(c, 0)},
                                            PadicFraction::zero(c));
                ok = cf.check(!class_of(gen).is_zero_class(), "generator class is zero");
                ok = ok && cf.check(boundary_witness(gen).obstruction ==
                                        Obstruction::IndexZeroNonzero,
                                    "generator bounds");
                for (uint32_t i = 0; ok && i < probes; ++i) {
                    ThetaSeq a = cf.random_seq(0, limit, true);
                    Cochain x = Cochain::make(c, n, {a, ThetaSeq(c, 0)}, PadicFraction::zero(c));
                    ok = cf.check(boundary_witness(x).found(), "index-zero-free cycle fails to bound");
                    if (!ok) break;
                    a.coeffs[0] = 1 + (cf.rng() % (c.modulus - 1));
                    Cochain y = Cochain::make(c, n, {a, ThetaSeq(c, 0)}, PadicFraction::zero(c));
                    ok = cf.check(!boundary_witness(y).found(), "cycle with a_0 != 0 bounds");
                }
            } else {
                for (uint32_t i = 0; ok && i < probes; ++i) {
                    Cochain z = random_cochain(c, n - 1, cf.rng, limit);
                    ok = cf.check(boundary_witness(differential(z)).found(),
                                  "boundary probe fails to re-witness");
                    if (!ok) break;
                    Cochain w = random_even_cycle(c, s.k, cf.rng, limit, 0);
                    ok = cf.check(boundary_witness(w).found(), "sampled kernel element fails to bound");
                }
            }
            break;
        }
        case 1: {
            if (s.k == 0) {
                for (uint32_t i = 0; ok && i < probes; ++i) {
                    ThetaSeq a = cf.random_seq(0, limit, true);
                    PadicFraction y(PadicInt::from_residue(c, cf.rng() % c.modulus),
                                    cf.rng() % c.precision);
                    Cochain x = Cochain::make(c, n, {std::move(a)}, y);
                    ok = cf.check(boundary_witness(x).found(), "cycle fails to bound in degree 1");
                }
            } else {
                const uint32_t nu1 = c.twist_val(s.k);
                Cochain gen = Cochain::make(c, n, {ThetaSeq::basis(c, s.k, 0)},
                                            PadicFraction::zero(c));
                const ClassOrder ord = class_order(c, class_of(gen));
                uint64_t expect = 1;
                for (uint32_t i = 0; i < nu1; ++i) expect *= c.p;
                ok = cf.check(!ord.infinite && ord.value == expect, "generator order mismatch");
                ok = ok && cf.check(!boundary_witness(gen.scaled(c.pow_p(nu1 - 1))).found(),
                                    "p^nu * generator bounds");
                ok = ok && cf.check(boundary_witness(gen.scaled(c.pow_p(nu1))).found(),
                                    "p^{nu+1} * generator fails to bound");
                for (uint32_t i = 0; ok && i < probes; ++i) {
                    Cochain z = random_cochain(c, n - 1, cf.rng, limit);
                    ok = cf.check(boundary_witness(differential(z)).found(),
                                  "boundary probe fails to re-witness");
                }
            }
            break;
        }
        case 2: {
            if (s.k == 0) {
                Cochain one_p = Cochain::make(c, n, {}, PadicFraction::make(c, 1, 1));
                Cochain one_p2 = Cochain::make(c, n, {}, PadicFraction::make(c, 1, 2));
                ok = cf.check(!boundary_witness(one_p).found(), "1/p bounds");
                ok = ok && cf.check(class_order(c, class_of(one_p)).value == c.p,
                                    "order of 1/p mismatch");
                ok = ok && cf.check(class_order(c, class_of(one_p2)).value == c.p * c.p,
                                    "order of 1/p^2 mismatch");
                ok = ok && cf.check(boundary_witness(one_p.scaled(c.p)).found(),
                                    "p * (1/p) fails to bound");
                for (uint32_t i = 0; ok && i < probes; ++i) {
                    Cochain x = Cochain::make(
                        c, n, {}, PadicFraction::integral(c, static_cast<int64_t>(cf.rng() % c.modulus)));
                    ok = cf.check(boundary_witness(x).found(), "integral value fails to bound");
                }
            } else {
                for (uint32_t i = 0; ok && i < probes; ++i) {
                    PadicFraction y(PadicInt::from_residue(c, cf.rng() % c.modulus),
                                    cf.rng() % c.precision);
                    Cochain x = Cochain::make(c, n, {}, y);
                    ok = cf.check(boundary_witness(x).found(),
                                  "rational value fails to bound off the zero window");
                }
            }
            break;
        }
        default: break;
    }

    report.passed = ok;
    report.detail = cf.detail;
    return report;
}

}  // namespace edga
