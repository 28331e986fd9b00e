// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Every tolerance is exact (zero residue mod p^M).

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "edga/oracle.hpp"
#include "edga/products.hpp"

using namespace edga;

namespace {

struct Checker {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

ThetaSeq random_seq(const Context& c, int64_t k, std::mt19937_64& rng, uint32_t limit,
                    bool zero_index0) {
    ThetaSeq s(c, k);
    std::uniform_int_distribution<uint64_t> coeff(0, c.modulus - 1);
    for (uint32_t m = zero_index0 ? 1 : 0; m < limit; ++m) s.coeffs[m] = coeff(rng);
    return s;
}

// 1. d∘d = 0 for 100 random cochains in every degree of windows |k| <= 6.
Checker criterion_dd() {
    Checker ck;
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        for (int64_t k = -6; k <= 6; ++k) {
            const DdReport r = verify_dd(c, k, 100, 42);
            ck.expect(r.pass, "residue " + std::to_string(r.max_residue) + " at p=" +
                                  std::to_string(p) + " k=" + std::to_string(k));
        }
    }
    return ck;
}

// 2. The groups near degree zero, with constructive witnesses.
Checker criterion_near_zero() {
    Checker ck;
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        std::mt19937_64 rng(42 + p);
        ck.expect(homology_group(c, -1) == GroupDescriptor::zero(), "H^-1 closed form");
        ck.expect(homology_group(c, 0) == GroupDescriptor::free_rank_one(), "H^0 closed form");
        ck.expect(homology_group(c, 1) == GroupDescriptor::zero(), "H^1 closed form");
        ck.expect(homology_group(c, 2) == GroupDescriptor::rationals_mod_local(),
                  "H^2 closed form");

        // degree -1: nonzero probes are never cycles
        for (int i = 0; i < 100; ++i) {
            ThetaSeq s = random_seq(c, 0, rng, 24, false);
            if (s.is_zero()) s.coeffs[0] = 1;
            ck.expect(!is_cycle(Cochain::make(c, -1, {std::move(s)}, std::nullopt)),
                      "kernel probe at degree -1");
        }
        // degree 1: probe cycles all bound with valid witnesses
        for (int i = 0; i < 100; ++i) {
            const Cochain x = Cochain::make(
                c, 1, {random_seq(c, 0, rng, 24, true)},
                PadicFraction::make(c, static_cast<int64_t>(rng() % c.modulus),
                                    rng() % c.precision));
            const WitnessResult w = boundary_witness(x);
            ck.expect(w.found() && differential(*w.witness) == x, "degree-1 witness");
        }
        // degree 0: class map additive; boundary exactly when a_0 = 0
        for (int i = 0; i < 100; ++i) {
            ThetaSeq a = random_seq(c, 0, rng, 24, false);
            ThetaSeq b = random_seq(c, 0, rng, 24, false);
            const Cochain x = Cochain::make(c, 0, {a, ThetaSeq(c, 0)}, PadicFraction::zero(c));
            const Cochain y = Cochain::make(c, 0, {b, ThetaSeq(c, 0)}, PadicFraction::zero(c));
            ck.expect(class_of(x + y).local_residue == c.add(a.coeffs[0], b.coeffs[0]),
                      "H^0 additivity");
            ck.expect(boundary_witness(x).found() == (a.coeffs[0] == 0), "H^0 boundary test");
        }
        // degree 2: bounds exactly when integral; 1/p and 1/p^2 have orders p, p^2
        for (int i = 0; i < 100; ++i) {
            const uint32_t e = rng() % c.precision;
            const Cochain x = Cochain::make(
                c, 2, {}, PadicFraction::make(c, static_cast<int64_t>(rng() % c.modulus), e));
            ck.expect(boundary_witness(x).found() == x.rational().mod_local().is_zero(),
                      "H^2 membership");
        }
        const Cochain q1 = Cochain::make(c, 2, {}, PadicFraction::make(c, 1, 1));
        const Cochain q2 = Cochain::make(c, 2, {}, PadicFraction::make(c, 1, 2));
        ck.expect(!boundary_witness(q1).found() && class_order(c, class_of(q1)).value == c.p,
                  "order of 1/p");
        ck.expect(!boundary_witness(q2).found() &&
                      class_order(c, class_of(q2)).value == c.p * c.p,
                  "order of 1/p^2");
    }
    return ck;
}

// 3. Torsion windows: generator orders exact, neighbors certified zero.
Checker criterion_torsion_windows() {
    Checker ck;
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        std::mt19937_64 rng(77 + p);
        const int64_t period = 2 * static_cast<int64_t>(p) - 2;
        std::vector<int64_t> twists;
        for (int64_t k :
             {int64_t(1), int64_t(2), int64_t(3), int64_t(p), int64_t(2 * p)}) {
            twists.push_back(k);
            twists.push_back(-k);
        }
        for (int64_t k : twists) {
            const uint32_t nu1 = c.twist_val(k);
            if (nu1 > c.precision - 1) continue;
            const int64_t degree = period * k + 1;
            ck.expect(homology_group(c, degree) == GroupDescriptor::cyclic(nu1),
                      "closed form at k=" + std::to_string(k));
            const Cochain gen =
                Cochain::make(c, degree, {ThetaSeq::basis(c, k, 0)}, PadicFraction::zero(c));
            uint64_t expect = 1;
            for (uint32_t i = 0; i < nu1; ++i) expect *= p;
            ck.expect(class_order(c, class_of(gen)).value == expect, "generator order");
            ck.expect(!boundary_witness(gen.scaled(c.pow_p(nu1 - 1))).found(),
                      "p^nu generator must not bound");
            const WitnessResult w = boundary_witness(gen.scaled(c.pow_p(nu1)));
            ck.expect(w.found(), "p^{nu+1} generator must bound");

            // neighbors: probe bases of boundaries re-witnessed
            for (int offset : {-1, 0, 2}) {
                ck.expect(homology_group(c, period * k + offset) == GroupDescriptor::zero(),
                          "neighbor closed form");
                const CertReport cert = certify_degree(c, period * k + offset, 10, 42);
                ck.expect(cert.passed, "neighbor certification k=" + std::to_string(k) +
                                           " offset=" + std::to_string(offset) + ": " +
                                           cert.detail);
            }
        }
        // degrees away from the window offsets vanish by shape
        for (int64_t n : {int64_t(3), int64_t(4), int64_t(period - 3), int64_t(period + 3)})
            if (!window_shape(c, n).in_window())
                ck.expect(homology_group(c, n) == GroupDescriptor::zero(), "shape-zero degree");
    }
    return ck;
}

// 4. Second components of sampled even-degree cycles are divisible.
Checker criterion_divisibility() {
    Checker ck;
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        std::mt19937_64 rng(99 + p);
        for (int64_t k : {int64_t(1), int64_t(p)}) {
            const uint32_t nu1 = c.twist_val(k);
            for (int i = 0; i < 100; ++i) {
                const Cochain x = random_even_cycle(c, k, rng, 20, rng() % c.modulus);
                ck.expect(is_cycle(x), "sampled element is a cycle");
                for (uint32_t m = 0; m < c.length; ++m)
                    if (x.seqs[1].coeffs[m] % c.pow_p(nu1) != 0)
                        ck.expect(false, "divisibility at index " + std::to_string(m));
            }
        }
    }
    return ck;
}

// 5. Index-zero coefficients multiply exactly.  Supports stay below the
// first exponent jump, keeping every sampled pair inside the product's
// nonnegative-exponent precondition.
Checker criterion_index_zero() {
    Checker ck;
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        std::mt19937_64 rng(123 + p);
        for (int64_t k : {int64_t(0), int64_t(1), int64_t(2)}) {
            for (int i = 0; i < 50; ++i) {
                const ThetaSeq a = random_seq(c, k, rng, 3, false);
                const ThetaSeq b = random_seq(c, -k, rng, 3, false);
                ck.expect(seq_product(a, b).coeffs[0] == c.mul(a.coeffs[0], b.coeffs[0]),
                          "pair at k=" + std::to_string(k));
            }
        }
    }
    return ck;
}

// 6. The pairing table into H^2 and its injectivity.
Checker criterion_pairing() {
    Checker ck;
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        const int64_t period = 2 * static_cast<int64_t>(p) - 2;
        for (int64_t k : {int64_t(1), int64_t(p)}) {
            const uint32_t nu1 = c.twist_val(k);
            const uint64_t pe = c.pow_p(nu1);
            for (uint64_t a = 0; a < pe; ++a) {
                bool row_hits = false;
                for (uint64_t b = 0; b < pe; ++b) {
                    HomologyClass alpha, beta;
                    alpha.degree = 1 - period * k;
                    alpha.kind = HomologyClass::Kind::Torsion;
                    alpha.torsion_value = a;
                    alpha.torsion_exponent = nu1;
                    beta.degree = period * k + 1;
                    beta.kind = HomologyClass::Kind::Torsion;
                    beta.torsion_value = b;
                    beta.torsion_exponent = nu1;
                    const HomologyClass prod = cohomology_product(c, alpha, beta);
                    const auto [num, e] = canonical_q(c.p, a * b, 2 * nu1);
                    ck.expect(prod.q_num == num && prod.q_exp == e, "table entry");
                    row_hits = row_hits || !prod.is_zero_class();
                }
                if (a != 0) ck.expect(row_hits, "injectivity on the left factor");
            }
        }
    }
    return ck;
}

// 7. The triple bracket relation at p = 5.
Checker criterion_bracket() {
    Checker ck;
    Context c(5, 3);
    for (auto [i, j] : {std::pair<int64_t, int64_t>{1, 1}, {1, 2}, {2, 3}, {1, 4}, {2, 8}}) {
        const std::string tag = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        const MasseyResult r = massey(c, i, j, RepresentativeMode::OrderP, 0);
        ck.expect(r.u_check && r.v_check, "witness checks " + tag);
        ck.expect(!r.result_class.is_zero_class(), "nonzero class " + tag);
        ck.expect(!r.order.infinite && r.order.value == c.p, "order p " + tag);
        // equals the order-p element up to a unit: valuation nu(i+j) exactly
        const uint32_t nu = c.twist_val(i + j) - 1;
        ck.expect(r.result_class.torsion_value != 0 &&
                      int_valuation(c.p, r.result_class.torsion_value) == nu,
                  "unit multiple of the order-p element " + tag);
        ck.expect(r.indeterminacy == GroupDescriptor::zero(), "indeterminacy " + tag);
        const MasseyResult other = massey(c, i, j, RepresentativeMode::OrderP, 1);
        ck.expect(other.u != r.u && other.v != r.v, "distinct witnesses " + tag);
        ck.expect(other.result_class == r.result_class, "witness independence " + tag);
    }
    return ck;
}

// 8. Constructive and dense solvers agree at reduced size.
Checker criterion_oracle() {
    Checker ck;
    Context c(5, 2);
    for (int64_t k : {int64_t(0), int64_t(1), int64_t(-1)}) {
        const AgreementReport r = oracle_agreement(c, 48, k, 100, 42);
        ck.expect(r.disagreements == 0,
                  std::to_string(r.disagreements) + " disagreements at k=" + std::to_string(k));
        ck.expect(r.witness_failures == 0, "witness failures at k=" + std::to_string(k));
        ck.expect(r.boundaries > 0 && (k == 0 || r.non_boundaries > 0),
                  "sample mix at k=" + std::to_string(k));
    }
    return ck;
}

// 9. Valuations of unit powers across the full twist range.
Checker criterion_unit_powers() {
    Checker ck;
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        const int64_t bound = static_cast<int64_t>(c.modulus / p);  // p^{M-1}
        for (int64_t k = -bound; k <= bound; ++k) {
            if (k == 0) continue;
            const auto v =
                PadicInt::from_residue(c, c.sub(c.rpow_res(k * (int64_t)(p - 1)), 1)).valuation();
            const uint32_t nu1 = c.twist_val(k);
            if (nu1 < c.precision)
                ck.expect(v.has_value() && *v == nu1, "valuation at k=" + std::to_string(k));
            else
                ck.expect(!v.has_value(), "top valuation at k=" + std::to_string(k));
        }
    }
    return ck;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Checker()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "cochain identity d.d = 0 across windows -6..6", criterion_dd},
        {2, "groups near degree zero with constructive witnesses", criterion_near_zero},
        {3, "torsion window groups and generator orders", criterion_torsion_windows},
        {4, "divisibility of even-degree cycle second components", criterion_divisibility},
        {5, "index-zero multiplicativity of the twisted product", criterion_index_zero},
        {6, "torsion pairing table into H^2 and injectivity", criterion_pairing},
        {7, "triple bracket relation with zero indeterminacy", criterion_bracket},
        {8, "constructive vs dense solver agreement at reduced size", criterion_oracle},
        {9, "valuations of unit powers across the twist range", criterion_unit_powers},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        Checker ck;
        try {
            ck = cr.run();
        } catch (const std::exception& e) {
            ck.ok = false;
            ck.detail = std::string("exception: ") + e.what();
        }
        if (ck.ok) {
            std::printf("PASS criterion %d: %s\n", cr.id, cr.name);
        } else {
            std::printf("FAIL criterion %d: %s (%s)\n", cr.id, cr.name, ck.detail.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
