#include "edga/products.hpp"

#include <cassert>

namespace edga {

HomologyClass cohomology_product(const Context& c, const HomologyClass& alpha,
                                 const HomologyClass& beta) {
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    if (alpha.degree + beta.degree != 2)
        throw degree_mismatch_error("cohomology_product: degrees do not pair into 2");
    const int64_t shifted = beta.degree - 1;
    if (shifted == 0 || shifted % period != 0)
        throw degree_mismatch_error("cohomology_product: not a torsion degree pair");
    const int64_t k = shifted / period;
    const uint32_t nu1 = c.twist_val(k);
    if (nu1 >= c.precision)
        throw precision_error("cohomology_product: torsion exceeds the precision");
    if (alpha.kind != HomologyClass::Kind::Torsion || beta.kind != HomologyClass::Kind::Torsion ||
        alpha.torsion_exponent != nu1 || beta.torsion_exponent != nu1)
        throw degree_mismatch_error("cohomology_product: classes are not canonical torsion");

    // The invariants are exact integers below p^{nu+1}; the pairing value is
    // their product over p^{2(nu+1)}, reduced mod Z_(p).  Computed in exact
    // integers, since the orders can exceed the working modulus.
    uint64_t pe = 1;
    for (uint32_t i = 0; i < nu1; ++i) pe *= c.p;
    const uint64_t prod = (alpha.torsion_value % pe) * (beta.torsion_value % pe);
    const auto [num, e] = canonical_q(c.p, prod, 2 * nu1);
    HomologyClass out;
    out.degree = 2;
    out.kind = HomologyClass::Kind::ModLocal;
    out.q_num = num;
    out.q_exp = e;
    return out;
}

GroupDescriptor indeterminacy(const Context& c, int64_t i, int64_t j) {
    if (i == 0 || j == 0) throw std::invalid_argument("indeterminacy: i, j must be nonzero");
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    const GroupDescriptor gi = homology_group(c, period * j);
    const GroupDescriptor gj = homology_group(c, period * i);
    if (gi.is_zero() && gj.is_zero()) return GroupDescriptor::zero();
    return gi.is_zero() ? gj : gi;
}

namespace {

Cochain torsion_representative(const Context& c, int64_t k, uint32_t exponent) {
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    ThetaSeq s(c, k);
    s.coeffs[0] = c.pow_p(exponent);
    return Cochain::make(c, period * k + 1, {std::move(s)}, PadicFraction::zero(c));
}

// Solves d(w) = target and optionally dresses the witness with a boundary
// d(z).  The perturbation keeps z_0 = 0: the index-zero coefficient of the
// first component is what the bracket reads, and the literal product formula
// does not transport index-zero changes of the witness to boundaries.
Cochain solve_witness(const Cochain& target, uint32_t variant, uint64_t salt) {
    const WitnessResult r = boundary_witness(target);
    if (!r.found())
        throw not_boundary_error("massey: representative product does not bound (" +
                                 obstruction_str(r.obstruction) + ")");
    Cochain w = *r.witness;
    if (variant != 0) {
        const Context& c = *target.ctx;
        std::mt19937_64 rng(0xda3e39cb94b95bdbULL ^ salt ^ variant);
        Cochain z = random_cochain(c, target.degree - 2, rng, 4);
        for (ThetaSeq& q : z.seqs) q.coeffs[0] = 0;
        w += differential(z);
        if (differential(w) != target)
            throw std::logic_error("massey: dressed witness failed the differential check");
    }
    return w;
}

}  // namespace

MasseyResult massey_from_representatives(const Context& base,
                                         std::shared_ptr<const Context> chain_ctx,
                                         int64_t i, int64_t j, Cochain a, Cochain c,
                                         RepresentativeMode mode, uint32_t variant) {
    const Context& e = *chain_ctx;
    const int64_t period = 2 * static_cast<int64_t>(e.p) - 2;

    MasseyResult res;
    res.i = i;
    res.j = j;
    res.mode = mode;
    res.variant = variant;
    res.chain_ctx = chain_ctx;

    ThetaSeq p_seq(e, 0);
    p_seq.coeffs[0] = e.p % e.modulus;
    res.b = Cochain::make(e, 0, {p_seq, ThetaSeq(e, 0)}, PadicFraction::zero(e));
    res.a = std::move(a);
    res.c = std::move(c);

    // |a| = (2p-2)i + 1 is odd and |u| = (2p-2)i is even; the proof's signs
    // evaluate to +1 on a.b and a.v, -1 on b.c and u.c.
    const int64_t deg_a = period * i + 1;
    assert(((deg_a % 2) + 2) % 2 == 1);
    assert((period * i) % 2 == 0);

    res.target_u = Cochain::make(e, period * i + 1,
                                 {seq_product(res.a.seqs[0], p_seq)}, PadicFraction::zero(e));
    res.u = solve_witness(res.target_u, variant, 0x75bcd15);
    res.u_check = differential(res.u) == res.target_u;

    res.target_v = Cochain::make(e, period * j + 1,
                                 {-seq_product(p_seq, res.c.seqs[0])}, PadicFraction::zero(e));
    res.v = solve_witness(res.target_v, variant, 0x3ade68b1);
    res.v_check = differential(res.v) == res.target_v;

    ThetaSeq bracket =
        -seq_product(res.u.seqs[0], res.c.seqs[0]) + seq_product(res.a.seqs[0], res.v.seqs[0]);
    res.result_cochain =
        Cochain::make(e, period * (i + j) + 1, {std::move(bracket)}, PadicFraction::zero(e));
    res.result_class = class_of(res.result_cochain);
    res.order = class_order(e, res.result_class);
    res.indeterminacy = indeterminacy(base, i, j);
    return res;
}

MasseyResult massey(const Context& c, int64_t i, int64_t j, RepresentativeMode mode,
                    uint32_t variant) {
    if (i == 0 || j == 0 || i + j == 0)
        throw std::invalid_argument("massey: i, j and i + j must be nonzero");
    for (int64_t k : {i, j, i + j})
        if (c.twist_val(k) >= c.precision)
            throw precision_error("massey: torsion exceeds the precision");

    auto chain_ctx = std::make_shared<const Context>(c.with_mode(ScalarMode::Exact));
    const uint32_t ei = c.twist_val(i) - 1 + (mode == RepresentativeMode::PaperLiteral ? 1 : 0);
    const uint32_t ej = c.twist_val(j) - 1 + (mode == RepresentativeMode::PaperLiteral ? 1 : 0);
    Cochain a = torsion_representative(*chain_ctx, i, ei);
    Cochain cc = torsion_representative(*chain_ctx, j, ej);
    return massey_from_representatives(c, chain_ctx, i, j, std::move(a), std::move(cc), mode,
                                       variant);
}

}  // namespace edga
