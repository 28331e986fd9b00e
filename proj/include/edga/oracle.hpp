#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edga/complex.hpp"

namespace edga {

/// Coordinate layout of one degree truncated at n0 sequence indices: each
/// sequence component contributes n0 coordinates, the rational component one
/// extra coordinate carried at integral scale.
struct CoordLayout {
    uint32_t num_seqs = 0;
    bool has_rat = false;
    uint32_t n0 = 0;

    uint32_t dim() const { return num_seqs * n0 + (has_rat ? 1 : 0); }
};

CoordLayout coord_layout(const Context& c, int64_t degree, uint32_t n0);

/// Truncation to the first n0 indices; the structure maps are lower
/// triangular, so this is a quotient model of the complex.
std::vector<uint64_t> cochain_to_vec(const Cochain& x, uint32_t n0);
Cochain cochain_from_vec(const Context& c, int64_t degree, const std::vector<uint64_t>& v,
                         uint32_t n0);

/// Dense matrix of the differential at one degree over Z/p^M, columns indexed
/// by the source layout, rows by the target layout.
struct DenseMap {
    const Context* ctx = nullptr;
    int64_t degree = 0;
    uint32_t n0 = 0;
    CoordLayout src, dst;
    std::vector<uint64_t> a;  // row-major, dst.dim() x src.dim()

    uint64_t at(uint32_t r, uint32_t c) const { return a[size_t(r) * src.dim() + c]; }
    std::vector<uint64_t> apply(const std::vector<uint64_t>& x) const;
};

DenseMap dense_matrix(const Context& c, int64_t degree, uint32_t n0);

struct SolveOutcome {
    std::optional<std::vector<uint64_t>> witness;
    std::optional<std::vector<uint64_t>> certificate;  // functional with f*A = 0, f*b != 0

    bool found() const { return witness.has_value(); }
};

/// Linear solver over Z/p^M: diagonalization by valuation-minimal pivoting
/// with full row/column transforms (Howell-style reduction; exact because
/// every elimination factor divides out the pivot valuation).
class BoundarySolver {
public:
    explicit BoundarySolver(DenseMap map);

    const DenseMap& map() const { return map_; }
    SolveOutcome solve(const std::vector<uint64_t>& target) const;

private:
    DenseMap map_;
    uint32_t rows_, cols_, rank_ = 0;
    std::vector<uint64_t> u_, v_;       // transforms, rows x rows and cols x cols
    std::vector<uint32_t> diag_val_;    // pivot valuations

    std::vector<uint64_t> mat_vec(const std::vector<uint64_t>& m, uint32_t r, uint32_t c,
                                  const std::vector<uint64_t>& x) const;
};

SolveOutcome solve_boundary(const DenseMap& map, const std::vector<uint64_t>& target);

struct AgreementReport {
    int64_t k = 0;
    uint32_t samples = 0;
    uint64_t seed = 0;
    uint32_t boundaries = 0;
    uint32_t non_boundaries = 0;
    uint32_t disagreements = 0;
    uint32_t witness_failures = 0;

    bool pass() const { return disagreements == 0 && witness_failures == 0; }
};

/// Cross-checks the constructive solver against the dense solver on sampled
/// cycles in window k: membership decisions must agree, constructive
/// witnesses must validate under the differential, dense witnesses under the
/// matrix, and refusal certificates must annihilate the matrix while pairing
/// nontrivially with the target.
AgreementReport oracle_agreement(const Context& reduced, uint32_t n0, int64_t k,
                                 uint32_t samples, uint64_t seed);

}  // namespace edga
