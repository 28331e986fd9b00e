#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "edga/theta.hpp"

namespace edga {

inline constexpr int kNoWindow = 99;

/// Shape of the complex in one degree: the window twist k, the offset of the
/// degree inside the window (-1, 0, 1, 2, or kNoWindow), the number of
/// sequence components and whether a rational component is present.
struct WindowShape {
    int64_t k = 0;
    int offset = kNoWindow;
    uint32_t num_seqs = 0;
    bool has_rat = false;

    bool in_window() const { return offset != kNoWindow; }
};

WindowShape window_shape(const Context& c, int64_t degree);

/// The four consecutive degrees (2p-2)k - 1 .. (2p-2)k + 2 where the complex
/// is nonzero, with their shapes.
struct ComplexWindow {
    int64_t k = 0;
    std::array<int64_t, 4> degrees{};
    std::array<WindowShape, 4> shapes{};
};

ComplexWindow window(const Context& c, int64_t k);

/// Degree-shaped element of the complex: up to two sequence components (all
/// at the window twist) and an optional rational component.
struct Cochain {
    const Context* ctx = nullptr;
    int64_t degree = 0;
    std::vector<ThetaSeq> seqs;
    std::optional<PadicFraction> rat;

    Cochain() = default;

    static Cochain zero(const Context& c, int64_t degree);
    static Cochain make(const Context& c, int64_t degree, std::vector<ThetaSeq> seqs,
                        std::optional<PadicFraction> rat);

    void validate() const;  // throws shape_error
    bool is_zero() const;

    const PadicFraction& rational() const;

    Cochain& operator+=(const Cochain& o);
    Cochain scaled(uint64_t residue) const;
};

Cochain operator+(Cochain a, const Cochain& b);
Cochain operator-(const Cochain& a);
bool operator==(const Cochain& a, const Cochain& b);
bool operator!=(const Cochain& a, const Cochain& b);

/// The differential, assembled degree by degree:
///   offset -1: a |-> (psi_pre a, psi_post a [, 0 at k = 0])
///   offset  0: (a, b [, x]) |-> (psi_post a - psi_pre b, q_post b - q_pre x)
///   offset  1: (a, y) |-> q_post a + psi_pre_rat(y, k)
///   elsewhere zero.
Cochain differential(const Cochain& x);

Cochain random_cochain(const Context& c, int64_t degree, std::mt19937_64& rng,
                       uint32_t support_limit = 0);

/// Result of a d∘d = 0 sweep over one window.
struct DdReport {
    int64_t k = 0;
    uint32_t samples = 0;
    uint64_t seed = 0;
    uint64_t max_residue = 0;
    bool pass = false;
};

/// Applies the differential twice to pseudo-random cochains in every degree
/// of window k and reports the largest surviving residue (must be zero).
DdReport verify_dd(const Context& c, int64_t k, uint32_t samples, uint64_t seed);

}  // namespace edga
