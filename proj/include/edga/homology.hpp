#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "edga/complex.hpp"

namespace edga {

enum class GroupKind { Zero, FreeLocalRankOne, CyclicPPower, RationalsModLocal };

/// Symbolic description of a cohomology group.
struct GroupDescriptor {
    GroupKind kind = GroupKind::Zero;
    uint32_t exponent = 0;  // e of Z/p^e when kind == CyclicPPower

    static GroupDescriptor zero() { return {GroupKind::Zero, 0}; }
    static GroupDescriptor free_rank_one() { return {GroupKind::FreeLocalRankOne, 0}; }
    static GroupDescriptor cyclic(uint32_t e) { return {GroupKind::CyclicPPower, e}; }
    static GroupDescriptor rationals_mod_local() { return {GroupKind::RationalsModLocal, 0}; }

    bool is_zero() const { return kind == GroupKind::Zero; }
    std::string str(uint64_t p) const;
};

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b);
bool operator!=(const GroupDescriptor& a, const GroupDescriptor& b);

/// Why a cycle failed to bound.
enum class Obstruction {
    None,
    IndexZeroNonzero,          // degree 0: a_0 != 0
    IndexZeroMismatch,         // even window degree, k != 0: a_0 != b_0
    Divisibility,              // torsion degree: twist scalar does not divide c_0
    RationalComponentNonzero,  // torsion degree: rational part of the target survives
    FractionNotIntegral,       // degree 2: class in Q/Z_(p) is nonzero
    NoIncomingDifferential,    // window start: nonzero cycle, no source degree
    Inconsistent,              // input violates the cycle structure
};

std::string obstruction_str(Obstruction o);

struct WitnessResult {
    std::optional<Cochain> witness;
    Obstruction obstruction = Obstruction::None;
    std::string detail;

    bool found() const { return witness.has_value(); }
};

/// A cohomology class in canonical form.  Which variant is populated is
/// determined by the degree: the torsion invariant c_0 mod p^{nu(k)+1} at
/// degrees (2p-2)k + 1, the residue a_0 at degree 0, a canonical fraction in
/// Q/Z_(p) at degree 2, zero elsewhere.
struct HomologyClass {
    enum class Kind { Zero, Torsion, LocalInt, ModLocal };

    int64_t degree = 0;
    Kind kind = Kind::Zero;
    uint64_t torsion_value = 0;
    uint32_t torsion_exponent = 0;
    uint64_t local_residue = 0;
    // Canonical Q/Z_(p) data: q_num / p^{q_exp} with q_num a unit below
    // p^{q_exp}, or (0, 0).  Held as exact integers: pairing classes can have
    // orders beyond the working modulus.
    uint64_t q_num = 0;
    uint32_t q_exp = 0;

    bool is_zero_class() const;
    std::string str(const Context& c) const;
};

/// Canonical representative of num / p^e in Q/Z_(p), in exact integers.
std::pair<uint64_t, uint32_t> canonical_q(uint64_t p, uint64_t num, uint32_t e);

bool operator==(const HomologyClass& a, const HomologyClass& b);
bool operator!=(const HomologyClass& a, const HomologyClass& b);

struct ClassOrder {
    bool infinite = false;
    uint64_t value = 1;  // the p-power order when finite
};

bool is_cycle(const Cochain& x);

/// All nonzero sequence indices lie below length - trusted_margin, so the
/// pivot indices used by the witness constructions exist inside the
/// truncation.
bool is_trusted(const Cochain& x);

/// Constructive boundary test: returns a cochain w with differential(w) == x
/// exactly mod p^M (always re-checked before returning), or the obstruction
/// that blocks it.  Requires is_cycle(x) and trusted support.
WitnessResult boundary_witness(const Cochain& x);

HomologyClass class_of(const Cochain& x);

ClassOrder class_order(const Context& c, const HomologyClass& cls);

/// Closed-form group in degree n.  Throws precision_error when the torsion
/// exponent reaches the working precision.
GroupDescriptor homology_group(const Context& c, int64_t n);

struct CertReport {
    int64_t degree = 0;
    GroupDescriptor group;
    bool passed = false;
    uint32_t probes = 0;
    std::string detail;
};

/// Probe-based certification of the closed form: generator cycles get their
/// orders verified through boundary_witness, vanishing degrees are checked by
/// re-witnessing a basis of probe boundaries and sampled kernel elements.
CertReport certify_degree(const Context& c, int64_t n, uint32_t probes, uint64_t seed);

/// Samples a kernel element at an even window degree (k != 0) by running the
/// cycle recurrence downward from the top of a random support; t skews the
/// index-zero coefficient by t * p^{M - nu(k) - 1}, so t != 0 mod p^{nu+1}
/// yields cycles that are not boundaries at this precision.
Cochain random_even_cycle(const Context& c, int64_t k, std::mt19937_64& rng,
                          uint32_t support, uint64_t t);

}  // namespace edga
