#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edga/complex.hpp"

using namespace edga;

namespace {

ThetaSeq seq_of(const Context& c, int64_t k, std::initializer_list<int64_t> head) {
    ThetaSeq s(c, k);
    uint32_t m = 0;
    for (int64_t v : head) s.coeffs[m++] = c.reduce(v);
    return s;
}

}  // namespace

TEST_CASE("window shapes at p = 5") {
    Context c(5, 3);
    const ComplexWindow w0 = window(c, 0);
    CHECK(w0.degrees == std::array<int64_t, 4>{-1, 0, 1, 2});
    CHECK(w0.shapes[0].num_seqs == 1);
    CHECK(!w0.shapes[0].has_rat);
    CHECK(w0.shapes[1].num_seqs == 2);
    CHECK(w0.shapes[1].has_rat);  // the extra rational line at twist 0
    CHECK(w0.shapes[2].num_seqs == 1);
    CHECK(w0.shapes[2].has_rat);
    CHECK(w0.shapes[3].num_seqs == 0);
    CHECK(w0.shapes[3].has_rat);

    const ComplexWindow w1 = window(c, 1);
    CHECK(w1.degrees == std::array<int64_t, 4>{7, 8, 9, 10});
    CHECK(!w1.shapes[1].has_rat);

    CHECK(!window_shape(c, 3).in_window());
    CHECK(!window_shape(c, 4).in_window());
    CHECK(Cochain::zero(c, 3).is_zero());
}

TEST_CASE("every degree is in a window at p = 3") {
    Context c(3, 3);
    for (int64_t n = -9; n <= 9; ++n) CHECK(window_shape(c, n).in_window());
    CHECK(window_shape(c, 3).offset == -1);
    CHECK(window_shape(c, 3).k == 1);
}

TEST_CASE("negative degree windows") {
    Context c(5, 3);
    CHECK(window_shape(c, -7).k == -1);
    CHECK(window_shape(c, -7).offset == 1);
    CHECK(window_shape(c, -9).offset == -1);
    CHECK(!window_shape(c, -10).in_window());
}

TEST_CASE("differential on the displayed examples") {
    Context c(5, 3);

    // degree 0, twist 0
    const Cochain x = Cochain::make(c, 0, {seq_of(c, 0, {1}), seq_of(c, 0, {1})},
                                    PadicFraction::integral(c, 1));
    const Cochain dx = differential(x);
    CHECK(dx.seqs[0] == seq_of(c, 0, {0, -1}));
    CHECK(dx.rational().is_zero());

    // degree 1, twist 0: the value is a_0
    const Cochain y = Cochain::make(c, 1, {seq_of(c, 0, {4, 9})}, PadicFraction::make(c, 3, 1));
    CHECK(differential(y).rational() == PadicFraction::integral(c, 4));

    // degree 7 (window start of twist 1)
    const Cochain z = Cochain::make(c, 7, {seq_of(c, 1, {1})}, std::nullopt);
    const Cochain dz = differential(z);
    CHECK(dz.seqs[0] == seq_of(c, 1, {5, 1}));
    CHECK(dz.seqs[1] == seq_of(c, 1, {5}));
}

TEST_CASE("d of the top window degree is zero") {
    Context c(5, 3);
    const Cochain x = Cochain::make(c, 2, {}, PadicFraction::make(c, 3, 2));
    CHECK(differential(x).is_zero());
}

TEST_CASE("d.d = 0 over several windows") {
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        for (int64_t k = -2; k <= 2; ++k) {
            const DdReport r = verify_dd(c, k, 25, 42);
            CHECK(r.pass);
            CHECK(r.max_residue == 0);
        }
    }
}

TEST_CASE("d.d = 0 with exact twist scalars") {
    Context c(5, 3, 0, 0, ScalarMode::Exact);
    for (int64_t k = -2; k <= 2; ++k) CHECK(verify_dd(c, k, 25, 43).pass);
}

TEST_CASE("differential is additive and commutes with scalars on sequences") {
    Context c(5, 3);
    std::mt19937_64 rng(31);
    for (int64_t degree : {int64_t(-1), int64_t(0), int64_t(1), int64_t(7), int64_t(8)}) {
        for (int i = 0; i < 30; ++i) {
            const Cochain x = random_cochain(c, degree, rng);
            const Cochain y = random_cochain(c, degree, rng);
            CHECK(differential(x + y) == differential(x) + differential(y));
            // scalar multiplication commutes on the sequence components;
            // fraction scaling is capped-precision and not compared here
            const uint64_t s = rng() % c.modulus;
            const Cochain lhs = differential(x.scaled(s));
            const Cochain rhs = differential(x).scaled(s);
            for (size_t q = 0; q < lhs.seqs.size(); ++q) CHECK(lhs.seqs[q] == rhs.seqs[q]);
        }
    }
}

TEST_CASE("first component of d at a window start has zero index-zero term at twist 0") {
    Context c(5, 3);
    std::mt19937_64 rng(37);
    for (int i = 0; i < 50; ++i) {
        const Cochain x = random_cochain(c, -1, rng);
        CHECK(differential(x).seqs[0].coeffs[0] == 0);
    }
}

TEST_CASE("rational output of d vanishes identically off twist 0") {
    Context c(5, 3);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const Cochain x = random_cochain(c, 8, rng);  // even degree of window 1
        CHECK(differential(x).rational().is_zero());
    }
}

TEST_CASE("shape validation") {
    Context c(5, 3);
    CHECK_THROWS_AS(Cochain::make(c, 0, {seq_of(c, 0, {1})}, std::nullopt), shape_error);
    CHECK_THROWS_AS(Cochain::make(c, 7, {seq_of(c, 2, {1})}, std::nullopt), shape_error);
    CHECK_THROWS_AS(Cochain::make(c, 3, {seq_of(c, 0, {1})}, std::nullopt), shape_error);
}
