#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <oinv/action.hpp>
#include <oinv/certify.hpp>
#include <oinv/field.hpp>
#include <oinv/invariants.hpp>

namespace oinv {

// Prescribed pairing and form values for a tuple of m vectors.  beta must be
// alternating: zero diagonal and beta[i][j] == beta[j][i].  dvals and deltaval
// carry the determinant-type coordinates when a caller has them; realization
// only consumes beta and qvals.
struct GramData {
    unsigned m = 0;
    FieldDesc field;
    std::vector<std::vector<Fe>> beta;
    std::vector<Fe> qvals;
    std::optional<std::vector<Fe>> dvals;
    std::optional<Fe> deltaval;

    std::string to_json() const;
    static GramData from_json(const std::string& text);
};

// m concrete vectors in field^n, stored as columns.  extended marks a tuple
// whose field is one quadratic step above the field of the request that
// produced it; the flag is not part of the serialized form.
struct VectorTuple {
    unsigned n = 0;
    unsigned m = 0;
    FieldDesc field;
    std::vector<std::vector<Fe>> columns;
    bool extended = false;

    std::string to_json() const;
    static VectorTuple from_json(const std::string& text);
};

// Invertible P with P^T * beta * P equal to the standard rank-r alternating
// block J padded by zeros.  Columns a_1..a_s, b_1..b_s, radical with r = 2s.
struct AlternatingNormalForm {
    std::vector<std::vector<Fe>> P;
    std::size_t rank = 0;
};

AlternatingNormalForm alternating_normal_form(const std::vector<std::vector<Fe>>& beta,
                                              const FieldDesc& fd);

// Values of the standard form and its polar pairing at concrete vectors.
Fe q_value_at(const std::vector<Fe>& v, unsigned n, const FieldDesc& fd);
Fe beta_value_at(const std::vector<Fe>& a, const std::vector<Fe>& b, unsigned n,
                 const FieldDesc& fd);

// Vectors v^(1..m) in field^n with beta(v_i, v_j) = beta[i][j] and
// q(v_i) = qvals[i].  Requires m <= n and rank(beta) <= 2*floor(n/2).  When
// the prescribed values force a form with nonzero Arf class the base field is
// extended GF(2^k) -> GF(2^{2k}) once and the result is marked extended.
VectorTuple realize_gram(const GramData& g, unsigned n, std::uint64_t seed = 0);

// Q^(i) for i <= min(m, 2*nu) padded by the remaining q values, the full
// pairing matrix, D^(1..2nu,l) for odd n and l > 2nu, and the Delta value for
// SO with even n and a spanning tuple.
GramData fingerprint(const VectorTuple& v, GroupId group);

enum class OrbitVerdict { Same, Different, NotGeneric };

std::string verdict_name(OrbitVerdict v);

// Fingerprint comparison on the generic locus: both tuples must have their
// first min(m, 2*nu) vectors independent modulo the radical, and for SO with
// even n and m < 2*nu the orthogonal complement of the span must contain a
// non-singular vector.
OrbitVerdict same_orbit_generic(const VectorTuple& a, const VectorTuple& b, GroupId group);

// Membership in the common null cone: every q value and every pairing value
// of the tuple is zero.
bool null_cone_test(const VectorTuple& v);

// Evaluates the invariant at random tuples drawn from the span of the
// standard x-coordinate vectors; every evaluation must vanish.
Certificate null_cone_vanishing(const InvariantId& id, unsigned ambient, unsigned trials,
                                unsigned k = 8, std::uint64_t seed = 0);

// Arf class of the even-dimensional quadratic form q(v) = sum_{i<=j}
// M[i][j] v_i v_j with non-degenerate polar pairing.  Returns 0 for the
// hyperbolic class and the smallest trace-one field element otherwise.
Fe arf_invariant(const std::vector<std::vector<Fe>>& upper, const FieldDesc& fd);

}  // namespace oinv
