#include "edga/oracle.hpp"

#include <algorithm>
#include <cassert>

#include "edga/homology.hpp"

namespace edga {

CoordLayout coord_layout(const Context& c, int64_t degree, uint32_t n0) {
    const WindowShape s = window_shape(c, degree);
    return {s.num_seqs, s.has_rat, n0};
}

std::vector<uint64_t> cochain_to_vec(const Cochain& x, uint32_t n0) {
    const Context& c = *x.ctx;
    const CoordLayout l = coord_layout(c, x.degree, n0);
    std::vector<uint64_t> v(l.dim(), 0);
    for (uint32_t s = 0; s < l.num_seqs; ++s)
        for (uint32_t m = 0; m < n0; ++m) v[s * n0 + m] = x.seqs[s].coeffs[m];
    if (l.has_rat) {
        const PadicFraction& f = x.rational();
        if (f.exponent != 0)
            throw std::invalid_argument("cochain_to_vec: rational part is not integral");
        v[l.dim() - 1] = f.mantissa.residue;
    }
    return v;
}

Cochain cochain_from_vec(const Context& c, int64_t degree, const std::vector<uint64_t>& v,
                         uint32_t n0) {
    const CoordLayout l = coord_layout(c, degree, n0);
    if (v.size() != l.dim()) throw shape_error("coordinate vector has the wrong dimension");
    Cochain x = Cochain::zero(c, degree);
    for (uint32_t s = 0; s < l.num_seqs; ++s)
        for (uint32_t m = 0; m < n0; ++m) x.seqs[s].coeffs[m] = v[s * n0 + m] % c.modulus;
    if (l.has_rat)
        x.rat = PadicFraction(PadicInt::from_residue(c, v[l.dim() - 1]), 0);
    return x;
}

std::vector<uint64_t> DenseMap::apply(const std::vector<uint64_t>& x) const {
    const uint32_t rows = dst.dim(), cols = src.dim();
    if (x.size() != cols) throw shape_error("dense apply: dimension mismatch");
    std::vector<uint64_t> out(rows, 0);
    for (uint32_t r = 0; r < rows; ++r) {
        uint64_t acc = 0;
        for (uint32_t c = 0; c < cols; ++c)
            acc = ctx->add(acc, ctx->mul(at(r, c), x[c]));
        out[r] = acc;
    }
    return out;
}

DenseMap dense_matrix(const Context& c, int64_t degree, uint32_t n0) {
    if (n0 > c.length) throw shape_error("dense_matrix: n0 exceeds the truncation");
    DenseMap map;
    map.ctx = &c;
    map.degree = degree;
    map.n0 = n0;
    map.src = coord_layout(c, degree, n0);
    map.dst = coord_layout(c, degree + 1, n0);
    map.a.assign(size_t(map.dst.dim()) * map.src.dim(), 0);
    for (uint32_t j = 0; j < map.src.dim(); ++j) {
        std::vector<uint64_t> e(map.src.dim(), 0);
        e[j] = 1;
        const Cochain basis = cochain_from_vec(c, degree, e, n0);
        const std::vector<uint64_t> col = cochain_to_vec(differential(basis), n0);
        for (uint32_t r = 0; r < map.dst.dim(); ++r)
            map.a[size_t(r) * map.src.dim() + j] = col[r];
    }
    return map;
}

namespace {

uint32_t val_or_top(const Context& c, uint64_t x) {
    return x == 0 ? c.precision : int_valuation(c.p, x);
}

}  // namespace

BoundarySolver::BoundarySolver(DenseMap map) : map_(std::move(map)) {
    const Context& c = *map_.ctx;
    rows_ = map_.dst.dim();
    cols_ = map_.src.dim();
    std::vector<uint64_t> a = map_.a;
    u_.assign(size_t(rows_) * rows_, 0);
    v_.assign(size_t(cols_) * cols_, 0);
    for (uint32_t i = 0; i < rows_; ++i) u_[size_t(i) * rows_ + i] = 1;
    for (uint32_t i = 0; i < cols_; ++i) v_[size_t(i) * cols_ + i] = 1;

    auto A = [&](uint32_t r, uint32_t col) -> uint64_t& { return a[size_t(r) * cols_ + col]; };
    const uint32_t steps = std::min(rows_, cols_);
    diag_val_.assign(steps, c.precision);

    for (uint32_t t = 0; t < steps; ++t) {
        uint32_t best_r = rows_, best_c = cols_, best_v = c.precision;
        for (uint32_t r = t; r < rows_; ++r)
            for (uint32_t col = t; col < cols_; ++col) {
                const uint32_t v = val_or_top(c, A(r, col));
                if (v < best_v) {
                    best_v = v;
                    best_r = r;
                    best_c = col;
                }
            }
        if (best_r == rows_) break;  // remaining block is zero

        if (best_r != t)
            for (uint32_t col = 0; col < cols_; ++col) std::swap(A(t, col), A(best_r, col));
        if (best_r != t)
            for (uint32_t col = 0; col < rows_; ++col)
                std::swap(u_[size_t(t) * rows_ + col], u_[size_t(best_r) * rows_ + col]);
        if (best_c != t)
            for (uint32_t r = 0; r < rows_; ++r) std::swap(A(r, t), A(r, best_c));
        if (best_c != t)
            for (uint32_t r = 0; r < cols_; ++r)
                std::swap(v_[size_t(r) * cols_ + t], v_[size_t(r) * cols_ + best_c]);

        const uint64_t pivot = A(t, t);
        const uint64_t pv = c.pow_p(best_v);
        const uint64_t unit_inv = mod_inverse(pivot / pv, c.modulus);
        for (uint32_t col = 0; col < cols_; ++col) A(t, col) = c.mul(A(t, col), unit_inv);
        for (uint32_t col = 0; col < rows_; ++col)
            u_[size_t(t) * rows_ + col] = c.mul(u_[size_t(t) * rows_ + col], unit_inv);

        for (uint32_t r = 0; r < rows_; ++r) {
            if (r == t || A(r, t) == 0) continue;
            const uint64_t f = A(r, t) / pv;  // exact: pivot has minimal valuation
            for (uint32_t col = 0; col < cols_; ++col)
                A(r, col) = c.sub(A(r, col), c.mul(f, A(t, col)));
            for (uint32_t col = 0; col < rows_; ++col)
                u_[size_t(r) * rows_ + col] =
                    c.sub(u_[size_t(r) * rows_ + col], c.mul(f, u_[size_t(t) * rows_ + col]));
        }
        for (uint32_t col = 0; col < cols_; ++col) {
            if (col == t || A(t, col) == 0) continue;
            const uint64_t f = A(t, col) / pv;
            for (uint32_t r = 0; r < rows_; ++r)
                a[size_t(r) * cols_ + col] = c.sub(a[size_t(r) * cols_ + col], c.mul(f, A(r, t)));
            for (uint32_t r = 0; r < cols_; ++r)
                v_[size_t(r) * cols_ + col] =
                    c.sub(v_[size_t(r) * cols_ + col], c.mul(f, v_[size_t(r) * cols_ + t]));
        }
        diag_val_[t] = best_v;
        rank_ = t + 1;
    }
}

std::vector<uint64_t> BoundarySolver::mat_vec(const std::vector<uint64_t>& m, uint32_t r,
                                              uint32_t cdim, const std::vector<uint64_t>& x) const {
    const Context& c = *map_.ctx;
    std::vector<uint64_t> out(r, 0);
    for (uint32_t i = 0; i < r; ++i) {
        uint64_t acc = 0;
        for (uint32_t j = 0; j < cdim; ++j)
            acc = c.add(acc, c.mul(m[size_t(i) * cdim + j], x[j]));
        out[i] = acc;
    }
    return out;
}

SolveOutcome BoundarySolver::solve(const std::vector<uint64_t>& target) const {
    const Context& c = *map_.ctx;
    if (target.size() != rows_) throw shape_error("solve: target dimension mismatch");
    const std::vector<uint64_t> rhs = mat_vec(u_, rows_, rows_, target);

    uint32_t bad_row = rows_;
    std::vector<uint64_t> y(cols_, 0);
    for (uint32_t i = 0; i < rows_; ++i) {
        if (i < rank_) {
            if (rhs[i] == 0) continue;
            if (int_valuation(c.p, rhs[i]) < diag_val_[i]) {
                bad_row = i;
                break;
            }
            y[i] = rhs[i] / c.pow_p(diag_val_[i]);
        } else if (rhs[i] != 0) {
            bad_row = i;
            break;
        }
    }

    SolveOutcome out;
    if (bad_row == rows_) {
        std::vector<uint64_t> x = mat_vec(v_, cols_, cols_, y);
        assert(map_.apply(x) == target);
        out.witness = std::move(x);
        return out;
    }
    const uint32_t v = bad_row < rank_ ? diag_val_[bad_row] : c.precision;
    const uint64_t scale = c.pow_p(c.precision - v);  // v > 0 on any failing row
    std::vector<uint64_t> f(rows_, 0);
    for (uint32_t j = 0; j < rows_; ++j)
        f[j] = c.mul(u_[size_t(bad_row) * rows_ + j], scale);
    out.certificate = std::move(f);
    return out;
}

SolveOutcome solve_boundary(const DenseMap& map, const std::vector<uint64_t>& target) {
    return BoundarySolver(map).solve(target);
}

AgreementReport oracle_agreement(const Context& c, uint32_t n0, int64_t k,
                                 uint32_t samples, uint64_t seed) {
    const int64_t period = 2 * static_cast<int64_t>(c.p) - 2;
    AgreementReport report{k, samples, seed, 0, 0, 0, 0};
    std::mt19937_64 rng(seed ^ (0xbf58476d1ce4e5b9ULL * static_cast<uint64_t>(k + 512)));
    std::uniform_int_distribution<uint64_t> coeff(0, c.modulus - 1);

    BoundarySolver solvers[3] = {BoundarySolver(dense_matrix(c, period * k - 1, n0)),
                                 BoundarySolver(dense_matrix(c, period * k, n0)),
                                 BoundarySolver(dense_matrix(c, period * k + 1, n0))};
    constexpr uint32_t kSupport = 8;

    for (uint32_t i = 0; i < samples; ++i) {
        const int which = static_cast<int>(i % 3);
        Cochain x;
        switch (which) {
            case 0: {  // even window degree
                if (k == 0) {
                    ThetaSeq a(c, 0);
                    for (uint32_t m = 1; m < kSupport; ++m) a.coeffs[m] = coeff(rng);
                    if (i % 2 == 0) a.coeffs[0] = coeff(rng);
                    x = Cochain::make(c, 0, {std::move(a), ThetaSeq(c, 0)},
                                      PadicFraction::zero(c));
                } else {
                    x = random_even_cycle(c, k, rng, kSupport, i % 2 == 0 ? 0 : 1 + rng() % 7);
                }
                break;
            }
            case 1: {  // odd window degree
                ThetaSeq a(c, k);
                for (uint32_t m = 1; m < kSupport; ++m) a.coeffs[m] = coeff(rng);
                if (k == 0) {
                    x = Cochain::make(c, 1, {std::move(a)},
                                      PadicFraction::integral(c, static_cast<int64_t>(coeff(rng))));
                } else {
                    a.coeffs[0] = i % 2 == 0 ? c.mul(coeff(rng), c.pow_p(c.twist_val(k)))
                                             : 1 + coeff(rng) % (c.p - 1);
                    x = Cochain::make(c, period * k + 1, {std::move(a)}, PadicFraction::zero(c));
                }
                break;
            }
            default: {  // top window degree, integral values only
                x = Cochain::make(c, period * k + 2, {},
                                  PadicFraction::integral(c, static_cast<int64_t>(coeff(rng))));
                break;
            }
        }

        const WitnessResult constructive = boundary_witness(x);
        const std::vector<uint64_t> target = cochain_to_vec(x, n0);
        const SolveOutcome dense = solvers[which].solve(target);

        if (constructive.found() != dense.found()) {
            ++report.disagreements;
            continue;
        }
        if (constructive.found()) {
            ++report.boundaries;
            if (differential(*constructive.witness) != x) ++report.witness_failures;
            if (solvers[which].map().apply(*dense.witness) != target) ++report.witness_failures;
        } else {
            ++report.non_boundaries;
            const std::vector<uint64_t>& f = *dense.certificate;
            const DenseMap& map = solvers[which].map();
            uint64_t pairing = 0;
            for (uint32_t r = 0; r < map.dst.dim(); ++r)
                pairing = c.add(pairing, c.mul(f[r], target[r]));
            bool annihilates = true;
            for (uint32_t col = 0; col < map.src.dim() && annihilates; ++col) {
                uint64_t acc = 0;
                for (uint32_t r = 0; r < map.dst.dim(); ++r)
                    acc = c.add(acc, c.mul(f[r], map.at(r, col)));
                annihilates = acc == 0;
            }
            if (!annihilates || pairing == 0) ++report.witness_failures;
        }
    }
    return report;
}

}  // namespace edga
