#include "oinv/invariants.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

#include "oinv/errors.hpp"
#include "oinv/generators.hpp"

namespace oinv {

Polynomial det_poly(const std::vector<std::vector<Polynomial>>& M, const Ring& ring) {
    size_t n = M.size();
    for (const auto& row : M)
        if (row.size() != n) throw ShapeError("determinant of a non-square matrix");
    if (n == 0) return Polynomial::constant(ring, 1);
    if (n > 12) throw ShapeError("determinant size beyond supported range");

    bool use_signs = (ring.tag == RingTag::Int);
    std::vector<std::optional<Polynomial>> memo(size_t(1) << n);
    std::function<const Polynomial&(uint32_t)> minor_det =
        [&](uint32_t mask) -> const Polynomial& {
        auto& slot = memo[mask];
        if (slot) return *slot;
        if (mask == 0) {
            slot = Polynomial::constant(ring, 1);
            return *slot;
        }
        unsigned r = unsigned(std::popcount(mask)) - 1;
        Polynomial acc = Polynomial::zero(ring);
        unsigned pos = 0;
        for (unsigned j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            if (!M[r][j].is_zero()) {
                Polynomial term = M[r][j] * minor_det(mask ^ (1u << j));
                if (use_signs && ((r + pos) % 2 == 1)) term = term.scaled(Coeff(-1));
                acc += term;
            }
            ++pos;
        }
        slot = std::move(acc);
        return *slot;
    };
    return minor_det(uint32_t((size_t(1) << n) - 1));
}

Polynomial q_inv(unsigned i, unsigned n, const Ring& r) {
    if (i < 1) throw IndexError("vector index must be positive");
    if (n < 1) throw IndexError("dimension must be positive");
    return q_form(n, r, i);
}

Polynomial b_inv(unsigned i, unsigned j, unsigned n, const Ring& r) {
    if (i < 1 || j <= i) throw IndexError("b_inv needs 1 <= i < j");
    if (n < 1) throw IndexError("dimension must be positive");
    return polar_form(n, r, i, j);
}

Polynomial d_inv(const std::vector<unsigned>& indices, unsigned n, const Ring& r) {
    if (indices.size() != n) throw IndexError("d_inv needs exactly n column indices");
    std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial::zero(r)));
    for (unsigned row = 0; row < n; ++row)
        for (unsigned col = 0; col < n; ++col)
            M[row][col] =
                Polynomial::variable(r, coordinate_variable(row, n, indices[col]));
    return det_poly(M, r);
}

Polynomial b_IJ(const std::vector<unsigned>& I, const std::vector<unsigned>& J,
                const Ring& r) {
    if (I.size() != J.size()) throw ShapeError("b_IJ index lists of different length");
    Polynomial a = Polynomial::constant(r, 1);
    Polynomial b = Polynomial::constant(r, 1);
    for (unsigned i : I) {
        a = a * Polynomial::variable(r, VariableId::x(1, i));
        b = b * Polynomial::variable(r, VariableId::y(1, i));
    }
    for (unsigned j : J) {
        a = a * Polynomial::variable(r, VariableId::y(1, j));
        b = b * Polynomial::variable(r, VariableId::x(1, j));
    }
    return a + b;
}

std::pair<BIJId, BIJId> b_product_expand(const std::vector<unsigned>& E,
                                         const std::vector<unsigned>& F,
                                         const std::vector<unsigned>& G,
                                         const std::vector<unsigned>& H) {
    if (E.size() != F.size() || G.size() != H.size())
        throw ShapeError("b_product_expand needs |E|=|F| and |G|=|H|");
    auto join = [](std::vector<unsigned> a, const std::vector<unsigned>& b) {
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        return a;
    };
    BIJId first{join(E, G), join(F, H)};
    BIJId second{join(E, H), join(F, G)};
    return {first, second};
}

namespace {

using PolyMat2 = std::array<std::array<Polynomial, 2>, 2>;

PolyMat2 mat2_mul(const PolyMat2& A, const PolyMat2& B) {
    PolyMat2 C{{{Polynomial::zero(A[0][0].ring), Polynomial::zero(A[0][0].ring)},
                {Polynomial::zero(A[0][0].ring), Polynomial::zero(A[0][0].ring)}}};
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) C[r][s] += A[r][t] * B[t][s];
    return C;
}

PolyMat2 sl2_matrix(unsigned i, const Ring& ring) {
    return PolyMat2{{{Polynomial::variable(ring, VariableId::z(i)),
                      Polynomial::variable(ring, VariableId::x(1, i))},
                     {Polynomial::variable(ring, VariableId::y(1, i)),
                      Polynomial::variable(ring, VariableId::z(i))}}};
}

PolyMat2 gl2_matrix(unsigned i, const Ring& ring) {
    return PolyMat2{{{Polynomial::variable(ring, VariableId::x(1, i)),
                      Polynomial::variable(ring, VariableId::x(2, i))},
                     {Polynomial::variable(ring, VariableId::y(2, i)),
                      Polynomial::variable(ring, VariableId::y(1, i))}}};
}

} // namespace

Polynomial tr_inv_int(const std::vector<unsigned>& indices) {
    if (indices.empty()) throw ShapeError("tr_inv needs at least one index");
    Ring ring = Ring::integers();
    PolyMat2 P = sl2_matrix(indices[0], ring);
    for (size_t k = 1; k < indices.size(); ++k) P = mat2_mul(P, sl2_matrix(indices[k], ring));
    return P[0][0] + P[1][1];
}

Polynomial tr_inv(const std::vector<unsigned>& indices) {
    return tr_inv_int(indices).reduce_mod2();
}

Polynomial f_F_inv_int(const std::vector<unsigned>& I, const std::vector<unsigned>& J) {
    size_t s = I.size();
    if (J.size() != s) throw ShapeError("f_F_inv index lists of different length");
    if (s < 2) throw ShapeError("f_F_inv block pattern needs at least two index pairs");
    std::vector<unsigned> all(I);
    all.insert(all.end(), J.begin(), J.end());
    std::vector<unsigned> sorted(all);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw IndexError("f_F_inv indices must be distinct");

    Ring ring = Ring::integers();
    size_t dim = 2 * s;
    std::vector<std::vector<Polynomial>> M(dim,
                                           std::vector<Polynomial>(dim, Polynomial::zero(ring)));
    auto place = [&](unsigned vec, size_t brow, size_t bcol) {
        PolyMat2 V = gl2_matrix(vec, ring);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) M[2 * brow + r][2 * bcol + c] += V[r][c];
    };
    for (size_t r = 0; r + 1 < s; ++r) {
        place(I[r], r, r);
        place(J[r], r, r + 1);
    }
    place(J[s - 1], s - 1, 0);
    place(I[s - 1], s - 1, s - 1);

    Multidegree alpha;
    for (unsigned v : all) alpha[v] = 1;
    return det_poly(M, ring).component(alpha);
}

Polynomial f_F_inv(const std::vector<unsigned>& I, const std::vector<unsigned>& J) {
    return f_F_inv_int(I, J).reduce_mod2();
}

Polynomial g_inv(const std::vector<unsigned>& I, const std::vector<unsigned>& J) {
    Polynomial f = f_F_inv(I, J);
    return f + apply(swap_x1y1(4, f.ring), f);
}

Polynomial p6() {
    Ring ring = Ring::integers();
    Polynomial p = Polynomial::zero(ring);
    for (unsigned mask = 0; mask < 64; ++mask) {
        if (std::popcount(mask) != 3) continue;
        Monomial m;
        for (unsigned i = 1; i <= 6; ++i)
            m.factors.emplace_back((mask >> (i - 1)) & 1 ? VariableId::x(1, i)
                                                         : VariableId::y(1, i),
                                   1);
        p.add_term(m, 1);
    }
    return p;
}

unsigned long long f_even_term_count(unsigned nu, unsigned t) {
    if (nu < 2) throw IndexError("f_even needs nu >= 2");
    if (t < 1) throw IndexError("f_even needs t >= 1");
    unsigned long long low = (1ull << t) - 2, high = (1ull << t) - 1;
    unsigned long long m = 2 * (high * nu - 1);
    Coeff count = 1;
    for (unsigned long long k = 2; k <= m; ++k) count *= k;
    auto fact = [](unsigned long long v) {
        Coeff f = 1;
        for (unsigned long long k = 2; k <= v; ++k) f *= k;
        return f;
    };
    count /= fact(low) * fact(low);
    for (unsigned r = 0; r + 1 < nu; ++r) count /= fact(high) * fact(high);
    count *= nu;
    if (count > Coeff(1) << 22) throw ComponentCapExceeded("f_even term count beyond cap");
    return count.convert_to<unsigned long long>();
}

Polynomial f_even(unsigned nu, unsigned t) {
    unsigned long long expected = f_even_term_count(nu, t);
    unsigned low = (1u << t) - 2, high = (1u << t) - 1;
    unsigned m = 2 * (high * nu - 1);

    Ring ring = Ring::gf2();
    Polynomial f = Polynomial::zero(ring);
    std::vector<unsigned> caps(2 * nu);
    std::vector<std::pair<VariableId, uint32_t>> chosen(m);

    // Slots are visited in vector order, so the factor list comes out sorted.
    for (unsigned pos = 0; pos < nu; ++pos) {
        for (unsigned tt = 0; tt < nu; ++tt) {
            unsigned deg = (tt == pos) ? low : high;
            caps[2 * tt] = deg;
            caps[2 * tt + 1] = deg;
        }
        std::function<void(unsigned)> rec2 = [&](unsigned slot) {
            if (slot == m) {
                Monomial mono;
                mono.factors = chosen;
                f.add_term(mono, 1);
                return;
            }
            for (unsigned l = 0; l < 2 * nu; ++l) {
                if (caps[l] == 0) continue;
                --caps[l];
                unsigned tt = l / 2 + 1;
                chosen[slot] = {(l % 2 == 0) ? VariableId::x(tt, slot + 1)
                                             : VariableId::y(tt, slot + 1),
                                1};
                rec2(slot + 1);
                ++caps[l];
            }
        };
        rec2(0);
    }
    if (f.term_count() != expected)
        throw ShapeError("f_even enumeration disagrees with the closed-form count");
    return f;
}

std::vector<std::vector<std::pair<unsigned, unsigned>>> perfect_matchings(unsigned nu) {
    std::vector<std::vector<std::pair<unsigned, unsigned>>> out;
    std::vector<unsigned> pool(2 * nu);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<std::pair<unsigned, unsigned>> current;
    std::function<void(std::vector<unsigned>&)> rec = [&](std::vector<unsigned>& rest) {
        if (rest.empty()) {
            out.push_back(current);
            return;
        }
        unsigned a = rest.front();
        for (size_t k = 1; k < rest.size(); ++k) {
            unsigned b = rest[k];
            std::vector<unsigned> next;
            for (size_t q = 1; q < rest.size(); ++q)
                if (q != k) next.push_back(rest[q]);
            current.emplace_back(a, b);
            rec(next);
            current.pop_back();
        }
    };
    rec(pool);
    return out;
}

Polynomial match_sum(unsigned nu) {
    if (nu < 1) throw IndexError("match_sum needs nu >= 1");
    Ring ring = Ring::integers();
    Polynomial s = Polynomial::zero(ring);
    for (const auto& matching : perfect_matchings(nu)) {
        Polynomial prod = Polynomial::constant(ring, 1);
        for (auto [a, b] : matching) prod = prod * b_inv(a, b, 2 * nu, ring);
        s += prod;
    }
    return s;
}

Polynomial delta_int(unsigned nu) {
    std::vector<unsigned> idx(2 * nu);
    std::iota(idx.begin(), idx.end(), 1);
    Polynomial diff =
        match_sum(nu) + d_inv(idx, 2 * nu, Ring::integers()).scaled(Coeff(-1));
    return diff.divide_exact(2);
}

Polynomial delta_inv(unsigned nu) { return delta_int(nu).reduce_mod2(); }

Polynomial gram_det(unsigned n) {
    if (n < 1) throw IndexError("gram_det needs n >= 1");
    Ring ring = Ring::integers();
    std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial::zero(ring)));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            M[i][j] = (i == j)
                          ? Polynomial::variable(ring, VariableId::aq(i + 1)).scaled(2)
                          : Polynomial::variable(ring, VariableId::ab(i + 1, j + 1));
    return det_poly(M, ring);
}

Polynomial match_sum_abstract(unsigned nu) {
    Ring ring = Ring::integers();
    Polynomial s = Polynomial::zero(ring);
    for (const auto& matching : perfect_matchings(nu)) {
        Polynomial prod = Polynomial::constant(ring, 1);
        for (auto [a, b] : matching)
            prod = prod * Polynomial::variable(ring, VariableId::ab(a, b));
        s += prod;
    }
    return s;
}

Polynomial gram_det_concrete(unsigned n) {
    Ring ring = Ring::integers();
    std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial::zero(ring)));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            M[i][j] = (i == j) ? q_inv(i + 1, n, ring).scaled(2)
                               : b_inv(std::min(i, j) + 1, std::max(i, j) + 1, n, ring);
    return det_poly(M, ring);
}

Polynomial g_relation(unsigned n) {
    if (n % 2 == 0) throw ShapeError("g_relation is defined for odd n");
    Ring ring = Ring::integers();
    Polynomial d2 = Polynomial::variable(ring, VariableId::ad(), 2);
    return d2 + gram_det(n).divide_exact(2).scaled(Coeff(-1));
}

bool verify_g_relation(unsigned n) {
    if (n % 2 == 0) throw ShapeError("g_relation is defined for odd n");
    unsigned nu = n / 2;
    Ring ring = Ring::integers();
    std::vector<unsigned> idx(n);
    std::iota(idx.begin(), idx.end(), 1);
    Polynomial D = d_inv(idx, n, ring);
    Polynomial half = gram_det_concrete(n).divide_exact(2);
    Coeff sign = (nu % 2 == 0) ? 1 : -1;
    Polynomial integral = (D * D).scaled(sign) + half.scaled(Coeff(-1));
    if (!integral.is_zero()) return false;

    std::map<VariableId, Polynomial> sub;
    Ring g2 = Ring::gf2();
    for (unsigned i = 1; i <= n; ++i) sub.emplace(VariableId::aq(i), q_inv(i, n, g2));
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j)
            sub.emplace(VariableId::ab(i, j), b_inv(i, j, n, g2));
    sub.emplace(VariableId::ad(), d_inv(idx, n, g2));
    return g_relation(n).reduce_mod2().substitute(sub).is_zero();
}

GammaRelation gamma_relation(unsigned n) {
    if (n % 2 == 1 || n < 2) throw ShapeError("gamma_relation is defined for even n");
    unsigned nu = n / 2;
    Polynomial S = match_sum_abstract(nu);
    Coeff sign = (nu % 2 == 0) ? 1 : -1;
    Polynomial L = S * S + gram_det(n).scaled(-sign);
    Ring ring = Ring::integers();
    Polynomial delta = Polynomial::variable(ring, VariableId::adelta());
    Polynomial gamma = delta * delta + (delta * S).scaled(Coeff(-1)) + L.divide_exact(4);
    return {gamma, L, S};
}

bool verify_gamma_relation(unsigned n) {
    if (n % 2 == 1 || n < 2) throw ShapeError("gamma_relation is defined for even n");
    unsigned nu = n / 2;
    Ring ring = Ring::integers();
    std::vector<unsigned> idx(n);
    std::iota(idx.begin(), idx.end(), 1);
    Polynomial S = match_sum(nu);
    Polynomial delta = delta_int(nu);
    Coeff sign = (nu % 2 == 0) ? 1 : -1;
    Polynomial L = S * S + gram_det_concrete(n).scaled(-sign);
    Polynomial expr = delta * delta + (delta * S).scaled(Coeff(-1)) + L.divide_exact(4);
    if (!expr.is_zero()) return false;
    gamma_relation(n);
    return true;
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

unsigned parse_uint(const std::string& s) {
    if (s.empty()) throw ParseError("empty number in invariant name");
    unsigned v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError("bad number '" + s + "' in invariant name");
        v = v * 10 + unsigned(c - '0');
        if (v > 100000) throw ParseError("index out of range in invariant name");
    }
    return v;
}

std::vector<unsigned> parse_list(const std::string& s) {
    std::vector<unsigned> out;
    for (const std::string& p : split_on(s, ',')) out.push_back(parse_uint(p));
    return out;
}

unsigned parse_named(const std::string& s, const std::string& key) {
    auto eq = s.find('=');
    if (eq == std::string::npos || s.substr(0, eq) != key)
        throw ParseError("expected " + key + "=<value>, got '" + s + "'");
    return parse_uint(s.substr(eq + 1));
}

std::string list_str(const std::vector<unsigned>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace

InvariantId InvariantId::parse(const std::string& name) {
    InvariantId id;
    auto colon = name.find(':');
    std::string head = name.substr(0, colon);
    std::string payload = colon == std::string::npos ? "" : name.substr(colon + 1);

    auto need_payload = [&]() {
        if (payload.empty()) throw ParseError("invariant '" + head + "' needs arguments");
    };
    auto two_lists = [&]() {
        auto bar = payload.find('|');
        if (bar == std::string::npos)
            throw ParseError("expected I|J index lists in '" + name + "'");
        id.I = parse_list(payload.substr(0, bar));
        id.J = parse_list(payload.substr(bar + 1));
    };

    if (head == "Q") {
        id.tag = Tag::Q;
        need_payload();
        id.I = parse_list(payload);
        if (id.I.size() != 1) throw ParseError("Q takes one index");
    } else if (head == "B") {
        id.tag = Tag::B;
        need_payload();
        id.I = parse_list(payload);
        if (id.I.size() != 2) throw ParseError("B takes two indices");
    } else if (head == "D") {
        id.tag = Tag::D;
        need_payload();
        id.I = parse_list(payload);
    } else if (head == "BIJ") {
        id.tag = Tag::BIJ;
        need_payload();
        two_lists();
    } else if (head == "TR") {
        id.tag = Tag::TR;
        need_payload();
        id.I = parse_list(payload);
    } else if (head == "F" || head == "G") {
        id.tag = head == "F" ? Tag::F : Tag::G;
        need_payload();
        two_lists();
    } else if (head == "P6") {
        id.tag = Tag::P6;
        if (!payload.empty()) throw ParseError("P6 takes no arguments");
    } else if (head == "FEVEN") {
        id.tag = Tag::FEven;
        need_payload();
        auto parts = split_on(payload, ',');
        if (parts.size() != 2) throw ParseError("FEVEN needs nu=<v>,t=<v>");
        id.nu = parse_named(parts[0], "nu");
        id.t = parse_named(parts[1], "t");
    } else if (head == "MS" || head == "DELTA") {
        id.tag = head == "MS" ? Tag::MatchSum : Tag::Delta;
        need_payload();
        id.nu = parse_named(payload, "nu");
    } else if (head == "GRAMDET" || head == "GREL" || head == "L" || head == "GAMMA") {
        id.tag = head == "GRAMDET" ? Tag::GramDet
                 : head == "GREL"  ? Tag::GRel
                 : head == "L"     ? Tag::LPoly
                                   : Tag::GammaRel;
        need_payload();
        id.n = parse_named(payload, "n");
    } else {
        throw ParseError("unknown invariant '" + head + "'");
    }
    return id;
}

std::string InvariantId::str() const {
    switch (tag) {
        case Tag::Q: return "Q:" + list_str(I);
        case Tag::B: return "B:" + list_str(I);
        case Tag::D: return "D:" + list_str(I);
        case Tag::BIJ: return "BIJ:" + list_str(I) + "|" + list_str(J);
        case Tag::TR: return "TR:" + list_str(I);
        case Tag::F: return "F:" + list_str(I) + "|" + list_str(J);
        case Tag::G: return "G:" + list_str(I) + "|" + list_str(J);
        case Tag::P6: return "P6";
        case Tag::FEven:
            return "FEVEN:nu=" + std::to_string(nu) + ",t=" + std::to_string(t);
        case Tag::MatchSum: return "MS:nu=" + std::to_string(nu);
        case Tag::Delta: return "DELTA:nu=" + std::to_string(nu);
        case Tag::GramDet: return "GRAMDET:n=" + std::to_string(n);
        case Tag::GRel: return "GREL:n=" + std::to_string(n);
        case Tag::LPoly: return "L:n=" + std::to_string(n);
        case Tag::GammaRel: return "GAMMA:n=" + std::to_string(n);
    }
    throw ShapeError("unknown invariant tag");
}

Polynomial InvariantId::realize(unsigned ambient) const {
    auto need_ambient = [&]() {
        if (ambient == 0)
            throw ShapeError("invariant " + str() + " needs the ambient dimension n");
    };
    switch (tag) {
        case Tag::Q:
            need_ambient();
            return q_inv(I[0], ambient);
        case Tag::B:
            need_ambient();
            return b_inv(I[0], I[1], ambient);
        case Tag::D:
            need_ambient();
            return d_inv(I, ambient);
        case Tag::BIJ: return b_IJ(I, J);
        case Tag::TR: return tr_inv(I);
        case Tag::F: return f_F_inv(I, J);
        case Tag::G: return g_inv(I, J);
        case Tag::P6: return p6();
        case Tag::FEven: return f_even(nu, t);
        case Tag::MatchSum: return match_sum(nu);
        case Tag::Delta: return delta_inv(nu);
        case Tag::GramDet: return gram_det(n);
        case Tag::GRel: return g_relation(n);
        case Tag::LPoly: return gamma_relation(n).L;
        case Tag::GammaRel: return gamma_relation(n).gamma;
    }
    throw ShapeError("unknown invariant tag");
}

} // namespace oinv
