#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edga/arith.hpp"

using namespace edga;

namespace {

// Independent order computation by repeated multiplication.
uint64_t naive_order(uint64_t g, uint64_t mod) {
    uint64_t acc = g % mod, order = 1;
    while (acc != 1) {
        acc = mod_mul(acc, g, mod);
        ++order;
    }
    return order;
}

uint64_t naive_smallest_generator(uint64_t p) {
    const uint64_t p2 = p * p;
    for (uint64_t g = 2;; ++g) {
        if (g % p == 0) continue;
        if (naive_order(g, p2) == p * (p - 1)) return g;
    }
}

}  // namespace

TEST_CASE("valuation of residues") {
    Context c(5, 3);
    CHECK(PadicInt(c, 5).valuation() == 1);
    CHECK(PadicInt(c, 7).valuation() == 0);
    CHECK(!PadicInt(c, 0).valuation().has_value());
    CHECK(!PadicInt(c, 125).valuation().has_value());
    CHECK(PadicInt(c, 50).valuation() == 2);
}

TEST_CASE("valuation is additive under multiplication below the precision") {
    Context c(5, 3);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const PadicInt x(c, static_cast<int64_t>(rng() % c.modulus));
        const PadicInt y(c, static_cast<int64_t>(rng() % c.modulus));
        const auto vx = x.valuation(), vy = y.valuation();
        if (!vx || !vy || *vx + *vy >= c.precision) continue;
        CHECK((x * y).valuation() == *vx + *vy);
    }
}

TEST_CASE("adams_unit matches brute-force smallest generator") {
    for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull})
        CHECK(adams_unit(p) == naive_smallest_generator(p));
    CHECK(adams_unit(5) == 2);
    CHECK(adams_unit(7) == 3);
    CHECK(adams_unit(3) == 2);
    CHECK_THROWS_AS(adams_unit(4), config_error);
    CHECK_THROWS_AS(adams_unit(9), config_error);
}

TEST_CASE("rpow handles negative exponents through the inverse") {
    Context c(5, 3);
    CHECK(c.unit == 2);
    CHECK(c.rpow_res(2) == 4);
    CHECK(c.rpow_res(-1) == 63);  // 2 * 63 = 126 = 1 mod 125
    CHECK(c.rpow_res(0) == 1);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const int64_t e = static_cast<int64_t>(rng() % 4001) - 2000;
        CHECK(c.mul(c.rpow_res(e), c.rpow_res(-e)) == 1);
    }
}

TEST_CASE("index functions") {
    const int64_t expected[] = {0, 0, 1, -1, 2, -2};
    for (int64_t m = 0; m <= 5; ++m) CHECK(s_tilde(m) == expected[m]);
    CHECK(s_index(1) == 1);
    CHECK(s_index(2) == -1);
    CHECK(s_index(3) == 2);
}

TEST_CASE("image of s_tilde over 0..2T+1 is 0 (twice) and +-1..+-T") {
    const int64_t T = 30;
    std::vector<int> hits(2 * T + 1, 0);
    int zero_hits = 0;
    for (int64_t m = 0; m <= 2 * T + 1; ++m) {
        const int64_t v = s_tilde(m);
        REQUIRE(std::llabs(v) <= T);
        if (v == 0) ++zero_hits;
        else ++hits[static_cast<size_t>(v + T)];
    }
    CHECK(zero_hits == 2);
    for (int64_t v = -T; v <= T; ++v)
        if (v != 0) CHECK(hits[static_cast<size_t>(v + T)] == 1);
}

TEST_CASE("unit powers: valuation of r^{k(p-1)} - 1 is nu(k) + 1") {
    for (uint64_t p : {5ull, 7ull}) {
        Context c(p, 3);
        const int64_t bound = static_cast<int64_t>(c.pow_p(1)) * 4;  // p^{M-2} * small
        for (int64_t k = -bound; k <= bound; ++k) {
            if (k == 0) continue;
            const auto v =
                PadicInt::from_residue(c, c.sub(c.rpow_res(k * (int64_t)(p - 1)), 1)).valuation();
            const uint32_t nu1 = c.twist_val(k);
            if (nu1 < c.precision) {
                REQUIRE(v.has_value());
                CHECK(*v == nu1);
            } else {
                CHECK(!v.has_value());
            }
        }
    }
}

TEST_CASE("r^e = 1 exactly when (p-1)p^{M-1} divides e") {
    Context c(5, 3);
    const int64_t T = 100;  // (p-1) p^{M-1}
    for (int64_t e = -3 * T; e <= 3 * T; e += 17)
        CHECK((c.rpow_res(e) == 1) == (((e % T) + T) % T == 0));
    CHECK(c.rpow_res(T) == 1);
    CHECK(c.rpow_res(-T) == 1);
    CHECK(c.rpow_res(T / 2) != 1);
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(Context(4, 3), config_error);
    CHECK_THROWS_AS(Context(2, 3), config_error);
    CHECK_THROWS_AS(Context(5, 1), config_error);
    CHECK_THROWS_AS(Context(5, 3, 100), config_error);  // below the trusted window
    CHECK_THROWS_AS(Context(5, 3, 0, 4), config_error);  // 4 is not a generator mod 25
    Context c(5, 3, 0, 3);  // 3 generates (Z/25)^x
    CHECK(c.unit == 3);
    CHECK(Context::auto_length(5, 3) == 264);
    CHECK(Context(5, 3).trusted_margin() == 199);
}

TEST_CASE("div_exact inverts multiplication") {
    Context c(5, 3);
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        const PadicInt a(c, static_cast<int64_t>(rng() % c.modulus));
        PadicInt b(c, static_cast<int64_t>(rng() % c.modulus));
        if (b.is_zero()) b = PadicInt(c, 1);
        const PadicInt prod = a * b;
        CHECK(div_exact(prod, b) * b == prod);
    }
    CHECK_THROWS_AS(div_exact(PadicInt(c, 5), PadicInt(c, 25)), precision_error);
}

TEST_CASE("fraction normalization is idempotent and canonical") {
    Context c(5, 3);
    const PadicFraction f = PadicFraction::make(c, 50, 3);  // 50/125 = 2/5
    CHECK(f.mantissa.residue == 2);
    CHECK(f.exponent == 1);
    const PadicFraction again(f.mantissa, f.exponent);
    CHECK(again == f);
    CHECK(PadicFraction::make(c, 0, 4) == PadicFraction::zero(c));
    CHECK(PadicFraction::make(c, 7, 2).str() == "7/25");
    CHECK_THROWS_AS(PadicFraction::make(c, 1, 12), precision_error);
}

TEST_CASE("mod-local class map is additive") {
    Context c(5, 3);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const PadicFraction x = PadicFraction::make(c, static_cast<int64_t>(rng() % c.modulus),
                                                    rng() % c.precision);
        const PadicFraction y = PadicFraction::make(c, static_cast<int64_t>(rng() % c.modulus),
                                                    rng() % c.precision);
        CHECK((x + y).mod_local() == (x.mod_local() + y.mod_local()).mod_local());
    }
    CHECK(PadicFraction::make(c, 6, 2).mod_local() == PadicFraction::make(c, 6, 2));
    CHECK(PadicFraction::make(c, 30, 1).mod_local() == PadicFraction::zero(c));
}

TEST_CASE("fraction division by a twist scalar round-trips") {
    Context c(5, 3, 0, 0, ScalarMode::Exact);
    const PadicInt lambda = PadicInt::from_residue(c, c.twist_unit_res(1));  // 15
    const PadicFraction y = PadicFraction::make(c, 7, 1);
    const PadicFraction q = y.div_by(lambda);
    CHECK(q.times(lambda) == y);
}
