#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <oinv/action.hpp>
#include <oinv/certify.hpp>
#include <oinv/field.hpp>
#include <oinv/poly.hpp>

namespace oinv {

// Bit-packed GF(2) matrix with word-parallel row elimination.
class BitMatrix {
public:
    explicit BitMatrix(size_t cols) : cols_(cols), words_((cols + 63) / 64) {}

    size_t cols() const { return cols_; }
    size_t row_count() const { return rows_.size(); }
    size_t add_row();
    void flip(size_t r, size_t c) { rows_[r][c >> 6] ^= uint64_t(1) << (c & 63); }
    bool get(size_t r, size_t c) const {
        return (rows_[r][c >> 6] >> (c & 63)) & 1;
    }
    void xor_rows(size_t dst, size_t src);

    // In-place reduced row echelon form with leftmost-column pivoting.
    // Zero rows are dropped. Returns the rank; pivots() lists pivot columns
    // in row order afterwards.
    size_t rref();
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Kernel basis of the row system (vectors v with M v = 0), one support
    // set per basis vector, in canonical echelon form over the columns.
    // Requires rref() to have run.
    std::vector<std::vector<size_t>> kernel() const;

    const std::vector<uint64_t>& row_bits(size_t r) const { return rows_[r]; }

private:
    size_t cols_;
    size_t words_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<size_t> pivots_;
};

// Incremental GF(2) span with combination bookkeeping: express a target
// vector as an XOR of the inserted generators.
class SpanSolver {
public:
    explicit SpanSolver(size_t cols) : cols_(cols), words_((cols + 63) / 64) {}

    // Inserts generator vector (by support) and remembers its index.
    void add(const std::vector<size_t>& support);
    size_t generator_count() const { return count_; }
    size_t rank() const { return pivot_rows_.size(); }

    // Returns the set of generator indices XORing to target, or nullopt if
    // target is outside the span; residual_support (optional out) then holds
    // the reduced remainder, leading column first.
    std::optional<std::vector<size_t>> express(
        const std::vector<size_t>& target_support,
        std::vector<size_t>* residual_support = nullptr) const;

private:
    struct PivotRow {
        size_t pivot;
        std::vector<uint64_t> bits;
        std::vector<size_t> comb;
    };
    size_t cols_;
    size_t words_;
    size_t count_ = 0;
    std::vector<PivotRow> pivot_rows_;
};

// Dense elimination over GF(2^k). Destroys M. Returns the rank.
size_t fe_rank(std::vector<std::vector<Fe>>& M, const FieldDesc& fd);
// Kernel basis of M v = 0 over GF(2^k), echelonized. Destroys M.
std::vector<std::vector<Fe>> fe_kernel(std::vector<std::vector<Fe>>& M,
                                       size_t cols, const FieldDesc& fd);

// Monomials of the multidegree-alpha component of k[x,y(,z)]^{vectors},
// sorted in the display term order (largest first). Throws
// ComponentCapExceeded when the count would exceed cap.
std::vector<Monomial> component_monomials(unsigned n, const Multidegree& alpha,
                                          size_t cap);
// Count only, exact.
Coeff component_size(unsigned n, const Multidegree& alpha);

struct SpaceOptions {
    size_t cap = size_t(1) << 22;
    CheckMode mode = CheckMode::Auto;
    unsigned k = 8;
    uint64_t seed = 0;
    unsigned elements = 24;
    unsigned reflections = 6;
};

struct LinearSystem {
    std::vector<Monomial> columns;
    size_t constraint_rows = 0;
    size_t rank = 0;
};

struct InvariantSpace {
    GroupId group;
    unsigned n = 0;
    Multidegree alpha;
    std::vector<Polynomial> basis;
    std::string provenance;
    LinearSystem system;

    size_t dim() const { return basis.size(); }
};

InvariantSpace invariant_space(unsigned n, GroupId group,
                               const Multidegree& alpha,
                               const SpaceOptions& opt = {});

struct DecompositionResult {
    bool decomposable = false;
    // Chosen products of lower-multidegree basis invariants, XORing to the
    // target when decomposable.
    std::vector<std::pair<Polynomial, Polynomial>> products;
    // Re-expanded combination, equal to the target when decomposable.
    Polynomial combination;
    // When indecomposable: a monomial whose coefficient functional (after
    // reduction against the product span) separates the target from the span.
    std::optional<Monomial> separating_monomial;
    std::string certificate;
};

DecompositionResult is_decomposable(const Polynomial& target, GroupId group,
                                    unsigned n, const SpaceOptions& opt = {});

// Writes p (in x,y coordinates of k^{2nu}) as a GF(2) combination of
// products of B^(ij) of the same multidegree. Empty result means p is not
// Sp(2nu)-invariant. The abstract result uses AB variables.
std::optional<Polynomial> express_in_B(const Polynomial& p, unsigned nu,
                                       size_t cap = size_t(1) << 22);

// Rewrites an O(n)-invariant f (n odd, GF(2), even z-exponents) as a
// polynomial in abstract Q(i), B(i,j). Verified by back-substitution.
Polynomial express_QB(const Polynomial& f, unsigned n,
                      size_t cap = size_t(1) << 22);

// Substitutes concrete invariants for the abstract AQ/AB variables.
Polynomial substitute_QB(const Polynomial& abstract, unsigned n);

// Rank of the formal-partial matrix of coords at the point (one row per
// coordinate function, one column per variable of the m ambient vectors).
size_t jacobian_rank(const std::vector<Polynomial>& coords,
                     const std::vector<std::vector<Fe>>& point, unsigned n,
                     const FieldDesc& fd);

// The tuple (e_1, ..., e_min(m, 2nu), 0, ...) in k^n, coordinate order.
std::vector<std::vector<Fe>> standard_point(unsigned n, unsigned m);

// Named coordinates of the generic-orbit separating map for (n, m):
// Q^(i) for i <= min(m, 2nu), B^(ij) for i < j <= m with i <= 2nu, and for
// odd n additionally D^(1..2nu,l) for 2nu < l <= m.
std::vector<std::pair<std::string, Polynomial>> field_coordinates(unsigned n,
                                                                  unsigned m);

} // namespace oinv
