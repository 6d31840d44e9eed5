#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "oinv/errors.hpp"

namespace oinv {

// Element of GF(2^k), k <= 16 from the table plus one quadratic extension
// step (k = 32 never occurs; extensions stay within the table range).
// Bit i is the coefficient of x^i in the residue class representative.
using Fe = uint32_t;

// GF(2^k) descriptor. modulus has bit k set and is irreducible over GF(2).
struct FieldDesc {
    unsigned k = 1;
    uint32_t modulus = 0x3;

    bool operator==(const FieldDesc&) const = default;
};

// Fixed modulus table for 1 <= k <= 16. Throws UnsupportedDegree otherwise.
FieldDesc make_field(unsigned k);

Fe f_add(Fe a, Fe b);
Fe f_mul(const FieldDesc& fd, Fe a, Fe b);
Fe f_pow(const FieldDesc& fd, Fe a, uint64_t e);
// Throws SingularVector on zero input.
Fe f_inv(const FieldDesc& fd, Fe a);
// Unique square root (Frobenius is bijective): a^(2^(k-1)).
Fe field_sqrt(const FieldDesc& fd, Fe a);
// Absolute trace to GF(2), returned as 0 or 1.
Fe f_trace(const FieldDesc& fd, Fe a);
// Solves x^2 + x = a. Empty iff trace(a) = 1.
std::optional<Fe> artin_schreier_solve(const FieldDesc& fd, Fe a);

// Canonical embedding GF(2^k) -> GF(2^(2k)) along the table moduli: the
// image of the degree-k generator is computed once per pair and cached.
Fe f_embed(const FieldDesc& from, const FieldDesc& to, Fe a);

// Masked raw draw; uniform over bit patterns, reproducible across platforms.
Fe f_random(const FieldDesc& fd, std::mt19937_64& rng);

// GF(2)[x] helpers (bit-packed polynomials), exposed for the modulus tests.
uint32_t gf2x_mod(uint64_t a, uint32_t m);
bool gf2x_irreducible(uint32_t m, unsigned degree);

} // namespace oinv
