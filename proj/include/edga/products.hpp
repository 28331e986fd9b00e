#pragma once

#include <cstdint>
#include <memory>

#include "edga/homology.hpp"

namespace edga {

/// Exponent used for the order-p representatives p^e * gamma of the triple
/// bracket.  OrderP (e = nu(k)) is the honest order-p element; PaperLiteral
/// (e = nu(k) + 1) keeps the printed exponent, whose representative is itself
/// a boundary, so the bracket degenerates to the zero class.
enum class RepresentativeMode { OrderP, PaperLiteral };

/// Pairing H^{-(2p-2)k+1} x H^{(2p-2)k+1} -> H^2 on canonical torsion
/// invariants: (a, b) |-> a b / p^{2(nu(k)+1)} in Q/Z_(p).
HomologyClass cohomology_product(const Context& c, const HomologyClass& alpha,
                                 const HomologyClass& beta);

struct MasseyResult {
    int64_t i = 0, j = 0;
    RepresentativeMode mode = RepresentativeMode::OrderP;
    uint32_t variant = 0;

    /// Chain computations run on this exact-scalar context; the normalized
    /// constants flatten the twist scalars to p powers, which preserves every
    /// group but skews triple products by non-constant units.
    std::shared_ptr<const Context> chain_ctx;

    Cochain a, b, c;          // representatives of gamma_i, p, gamma_j
    Cochain u, v;             // witnesses: d(u) = a.b, d(v) = -b.c
    Cochain target_u, target_v;
    bool u_check = false, v_check = false;

    Cochain result_cochain;   // degree (2p-2)(i+j) + 1
    HomologyClass result_class;
    ClassOrder order;
    GroupDescriptor indeterminacy;
};

/// The triple bracket <gamma_i, p, gamma_j>.  Builds order-p representatives,
/// solves the two witness equations through boundary_witness, and evaluates
/// [(-1)^{1+|u|} u.c + (-1)^{1+|a|} a.v].  A nonzero variant re-solves with
/// independently dressed witnesses (a different pivot plus a boundary
/// perturbation that fixes the index-zero coefficient).
MasseyResult massey(const Context& c, int64_t i, int64_t j,
                    RepresentativeMode mode = RepresentativeMode::OrderP,
                    uint32_t variant = 0);

/// Same computation from explicit representatives (a at degree (2p-2)i + 1,
/// c at (2p-2)j + 1, both on an exact-scalar context).
MasseyResult massey_from_representatives(const Context& base,
                                         std::shared_ptr<const Context> chain_ctx,
                                         int64_t i, int64_t j, Cochain a, Cochain c,
                                         RepresentativeMode mode, uint32_t variant);

/// gamma_i H^{(2p-2)j} + gamma_j H^{(2p-2)i}; both factors vanish for
/// nonzero twists, so the descriptor is Zero.
GroupDescriptor indeterminacy(const Context& c, int64_t i, int64_t j);

}  // namespace edga
