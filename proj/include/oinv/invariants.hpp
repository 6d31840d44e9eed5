#pragma once

#include <utility>
#include <vector>

#include "oinv/action.hpp"

namespace oinv {

// Determinant of a square polynomial matrix, Laplace expansion with subset
// memoization; signs are applied over Int and dropped in characteristic 2.
Polynomial det_poly(const std::vector<std::vector<Polynomial>>& M, const Ring& ring);

// Q^(i), B^(ij), D^(indices) for tuples of vectors in k^n.
Polynomial q_inv(unsigned i, unsigned n, const Ring& r = Ring::gf2());
Polynomial b_inv(unsigned i, unsigned j, unsigned n, const Ring& r = Ring::gf2());
Polynomial d_inv(const std::vector<unsigned>& indices, unsigned n,
                 const Ring& r = Ring::gf2());

// B^(I|J) = x^(I) y^(J) + y^(I) x^(J) on the plane; I, J are index multisets.
Polynomial b_IJ(const std::vector<unsigned>& I, const std::vector<unsigned>& J,
                const Ring& r = Ring::gf2());

struct BIJId {
    std::vector<unsigned> I, J;
};
// B^(E|F) B^(G|H) = B^(E+G|F+H) + B^(E+H|F+G).
std::pair<BIJId, BIJId> b_product_expand(const std::vector<unsigned>& E,
                                         const std::vector<unsigned>& F,
                                         const std::vector<unsigned>& G,
                                         const std::vector<unsigned>& H);

// Tr(V^(i1) ... V^(is)) with V = [[z, x],[y, z]] on k^3.
Polynomial tr_inv_int(const std::vector<unsigned>& indices);
Polynomial tr_inv(const std::vector<unsigned>& indices);

// 2s-linear component of the block determinant in the gl(2) encoding of k^4;
// G = F + swapped F covers the non-special coset.
Polynomial f_F_inv_int(const std::vector<unsigned>& I, const std::vector<unsigned>& J);
Polynomial f_F_inv(const std::vector<unsigned>& I, const std::vector<unsigned>& J);
Polynomial g_inv(const std::vector<unsigned>& I, const std::vector<unsigned>& J);

// Sum of all sextilinear plane monomials of type (3;3); 20 terms over Int.
Polynomial p6();

// Sum of all m-linear monomials, m = 2((2^t-1)nu - 1), whose type matrix has
// equal rows, the common row a permutation of (2^t-2, 2^t-1, ..., 2^t-1).
Polynomial f_even(unsigned nu, unsigned t);
// Closed-form term count used to guard the enumeration.
unsigned long long f_even_term_count(unsigned nu, unsigned t);

// Sum of B^(i1 i2) ... B^(i_{2nu-1} i_{2nu}) over perfect matchings of
// {1..2nu}, each pairing the smallest unused index first.
Polynomial match_sum(unsigned nu);
std::vector<std::vector<std::pair<unsigned, unsigned>>> perfect_matchings(unsigned nu);

// Delta = (match_sum - D)/2 over Int; delta_inv reduces mod 2.
Polynomial delta_int(unsigned nu);
Polynomial delta_inv(unsigned nu);

// Symbolic Gram determinant: diagonal 2 Q_i, off-diagonal B_ij, over Int in
// the abstract Q/B variables.
Polynomial gram_det(unsigned n);
// match_sum rewritten in the abstract B variables.
Polynomial match_sum_abstract(unsigned nu);
// Gram matrix of the first m = n concrete vectors, entries over Int.
Polynomial gram_det_concrete(unsigned n);

// G = D^2 - gram_det/2 in abstract variables, n odd.
Polynomial g_relation(unsigned n);
// Checks (-1)^nu D^2 - gram_det_concrete/2 = 0 over Int and the mod-2 form.
bool verify_g_relation(unsigned n);

struct GammaRelation {
    Polynomial gamma;
    Polynomial L;
    Polynomial sum_bb;
};
// Gamma = Delta^2 - Delta * sum_bb + L/4 with L = sum_bb^2 - (-1)^nu gram_det.
GammaRelation gamma_relation(unsigned n);
// Checks the integral identity Delta^2 - Delta * S + L/4 = 0 for m = n = 2nu.
bool verify_gamma_relation(unsigned n);

struct InvariantId {
    enum class Tag {
        Q,
        B,
        D,
        BIJ,
        TR,
        F,
        G,
        P6,
        FEven,
        MatchSum,
        Delta,
        GramDet,
        GRel,
        LPoly,
        GammaRel
    };
    Tag tag = Tag::Q;
    std::vector<unsigned> I, J;
    unsigned nu = 0, t = 0, n = 0;

    // CLI names: Q:1, B:1,2, D:1,2,3, BIJ:1,2|3,4, TR:1,2,3, F:1,2|3,4,
    // G:1,2|3,4, P6, FEVEN:nu=2,t=2, MS:nu=2, DELTA:nu=2, GRAMDET:n=3,
    // GREL:n=3, L:n=4, GAMMA:n=4.
    static InvariantId parse(const std::string& name);
    std::string str() const;

    // ambient is the dimension for Q/B/D and ignored by the fixed-dimension
    // constructors; each invariant is produced over its natural ring.
    Polynomial realize(unsigned ambient = 0) const;
};

} // namespace oinv
