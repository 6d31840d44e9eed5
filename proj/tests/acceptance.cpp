// Acceptance gate: twelve criteria, one pass/fail line each, exit 1 when any
// criterion fails.  Expected values, seeds, and runtime budgets are pinned
// below; randomized checks use fixed seeds so reruns are byte-identical.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <oinv/action.hpp>
#include <oinv/certify.hpp>
#include <oinv/errors.hpp>
#include <oinv/field.hpp>
#include <oinv/generators.hpp>
#include <oinv/invariants.hpp>
#include <oinv/invspace.hpp>
#include <oinv/poly.hpp>
#include <oinv/witt.hpp>

using namespace oinv;

namespace {

struct Failure {
    std::string detail;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

Multidegree ones(unsigned m) {
    Multidegree a;
    for (unsigned i = 1; i <= m; ++i) a[i] = 1;
    return a;
}

std::vector<unsigned> seq(unsigned s) {
    std::vector<unsigned> idx(s);
    std::iota(idx.begin(), idx.end(), 1);
    return idx;
}

Polynomial ppow(const Polynomial& b, unsigned e) {
    Polynomial acc = Polynomial::constant(b.ring, 1);
    for (unsigned i = 0; i < e; ++i) acc = acc * b;
    return acc;
}

GroupAction from_matrix(const std::vector<Fe>& M, unsigned n, const Ring& rk) {
    GroupAction A;
    A.n = n;
    for (Fe e : M) A.entries.push_back(Polynomial::constant(rk, e));
    return A;
}

std::map<VariableId, Polynomial> zero_z_map(unsigned vectors) {
    std::map<VariableId, Polynomial> sub;
    for (unsigned i = 1; i <= vectors; ++i)
        sub.emplace(VariableId::z(i), Polynomial::zero(Ring::gf2()));
    return sub;
}

// The fourteen isometries of xy on GF(8)^2: the torus and its swap coset.
std::vector<std::vector<Fe>> o2_gf8_elements(const FieldDesc& fd) {
    std::vector<std::vector<Fe>> out;
    for (Fe a = 1; a < 8; ++a) {
        Fe ai = f_inv(fd, a);
        out.push_back({a, 0, 0, ai});
        out.push_back({0, a, ai, 0});
    }
    return out;
}

// Kernel dimension of the full-group constraint system over GF(8),
// independent of the generator-family machinery.
size_t o2_oracle_dim(const Multidegree& alpha) {
    FieldDesc fd = make_field(3);
    Ring rk = Ring::gf2k(fd);
    auto columns = component_monomials(2, alpha, size_t(1) << 22);
    std::vector<std::vector<Fe>> M;
    for (const auto& mat : o2_gf8_elements(fd)) {
        GroupAction A = from_matrix(mat, 2, rk);
        std::unordered_map<Monomial, size_t, MonomialHash> row_of;
        for (size_t c = 0; c < columns.size(); ++c) {
            Polynomial pc(rk);
            pc.add_term(columns[c], 1);
            Polynomial diff = apply(A, pc) + pc;
            for (const auto& [w, coef] : diff.terms) {
                auto it = row_of.find(w);
                size_t r;
                if (it == row_of.end()) {
                    r = M.size();
                    row_of.emplace(w, r);
                    M.emplace_back(columns.size(), 0);
                } else {
                    r = it->second;
                }
                M[r][c] = f_add(M[r][c], Fe(coef.convert_to<uint32_t>()));
            }
        }
    }
    return fe_kernel(M, columns.size(), fd).size();
}

// Canonical reduced echelon basis of the span of the given polynomials.
std::vector<Polynomial> rref_span(const std::vector<Polynomial>& polys,
                                  unsigned n, const Multidegree& alpha) {
    auto columns = component_monomials(n, alpha, size_t(1) << 22);
    std::unordered_map<Monomial, size_t, MonomialHash> col_of;
    for (size_t c = 0; c < columns.size(); ++c) col_of.emplace(columns[c], c);
    BitMatrix M(columns.size());
    for (const auto& p : polys) {
        size_t r = M.add_row();
        for (const auto& [m, coef] : p.terms) {
            (void)coef;
            M.flip(r, col_of.at(m));
        }
    }
    M.rref();
    std::vector<Polynomial> out;
    for (size_t r = 0; r < M.row_count(); ++r) {
        Polynomial p(Ring::gf2());
        for (size_t c = 0; c < columns.size(); ++c)
            if (M.get(r, c)) p.add_term(columns[c], 1);
        out.push_back(std::move(p));
    }
    return out;
}

std::string leading_term(const Polynomial& p) {
    Polynomial w(p.ring);
    w.add_term(p.sorted_terms().front().first, 1);
    return w.str();
}

std::string crit1_base_invariance() {
    CheckOptions sym;
    sym.mode = CheckMode::Symbolic;
    for (unsigned nu : {1u, 2u, 3u}) {
        unsigned n = 2 * nu;
        Certificate cq = invariance_check(q_inv(1, n), GroupId::O, n, sym);
        require(cq.pass && cq.mode == "symbolic",
                "Q symbolic check failed for O(" + std::to_string(n) + ")");
        Certificate cb = invariance_check(b_inv(1, 2, n), GroupId::O, n, sym);
        require(cb.pass && cb.mode == "symbolic",
                "B symbolic check failed for O(" + std::to_string(n) + ")");
    }
    CheckOptions rnd;
    rnd.mode = CheckMode::Randomized;
    rnd.k = 8;
    rnd.elements = 64;
    rnd.seed = 1001;
    for (unsigned n : {3u, 4u, 5u}) {
        Certificate cd = invariance_check(d_inv(seq(n), n), GroupId::O, n, rnd);
        require(cd.pass && cd.mode == "randomized" && cd.elements == 64,
                "D randomized check failed for O(" + std::to_string(n) + ")");
    }
    return "Q,B symbolic for O(2),O(4),O(6); D randomized for n=3,4,5, 64 elements over GF(2^8)";
}

std::string crit2_o2_structure() {
    size_t d2 = invariant_space(2, GroupId::O, ones(2)).dim();
    require(d2 == 1, "multilinear m=2 dimension " + std::to_string(d2) + ", expected 1");
    size_t d4 = invariant_space(2, GroupId::O, ones(4)).dim();
    require(d4 == 3, "multilinear m=4 dimension " + std::to_string(d4) + ", expected 3");
    size_t oracle = o2_oracle_dim(ones(6));
    size_t d6 = invariant_space(2, GroupId::O, ones(6)).dim();
    require(d6 == oracle, "multilinear m=6 dimension " + std::to_string(d6) +
                              " disagrees with the kernel oracle " + std::to_string(oracle));

    DecompositionResult ind = is_decomposable(b_IJ({1, 2}, {3, 4}), GroupId::O, 2);
    require(!ind.decomposable, "B(1,2|3,4) reported decomposable");
    require(ind.separating_monomial.has_value(),
            "no separating monomial for B(1,2|3,4)");

    DecompositionResult dec = is_decomposable(b_IJ({1, 2}, {1, 3}), GroupId::O, 2);
    require(dec.decomposable, "B(1,2|1,3) reported indecomposable");
    require(dec.combination == b_IJ({1, 2}, {1, 3}), "recombined product differs from B(1,2|1,3)");
    require(dec.products.size() == 1, "expected one product in the decomposition");
    Polynomial qa = q_inv(1, 2);
    Polynomial bb = b_IJ({2}, {3});
    const auto& pr = dec.products[0];
    require((pr.first == qa && pr.second == bb) || (pr.first == bb && pr.second == qa),
            "decomposition certificate is not Q(1) * B(2|3)");

    std::mt19937_64 rng(20260202);
    auto rand_ms = [&](size_t len) {
        std::vector<unsigned> v;
        for (size_t i = 0; i < len; ++i) v.push_back(1 + unsigned(rng() % 5));
        return v;
    };
    for (int rep = 0; rep < 50; ++rep) {
        size_t se = 1 + size_t(rng() % 3);
        size_t sg = 1 + size_t(rng() % 3);
        auto E = rand_ms(se), Fm = rand_ms(se), Gm = rand_ms(sg), H = rand_ms(sg);
        auto ex = b_product_expand(E, Fm, Gm, H);
        Polynomial lhs = b_IJ(E, Fm) * b_IJ(Gm, H);
        Polynomial rhs = b_IJ(ex.first.I, ex.first.J) + b_IJ(ex.second.I, ex.second.J);
        require(lhs == rhs, "product expansion mismatch at rep " + std::to_string(rep));
    }
    return "multilinear dims 1, 3, " + std::to_string(d6) + " (oracle " +
           std::to_string(oracle) + "); B(1,2|3,4) indecomposable; B(1,2|1,3) = Q(1)B(2|3); "
           "50 random product expansions exact";
}

std::string crit3_o3_traces() {
    require(tr_inv({1, 2}) == b_inv(1, 2, 3), "tr(1,2) differs from B(12)");
    CheckOptions sym;
    sym.mode = CheckMode::Symbolic;
    for (unsigned s : {2u, 3u, 4u}) {
        Certificate c = invariance_check(tr_inv(seq(s)), GroupId::O, 3, sym);
        require(c.pass, "trace symbolic check failed for s=" + std::to_string(s));
    }
    DecompositionResult d = is_decomposable(tr_inv({1, 2, 3}), GroupId::O, 3);
    require(!d.decomposable && d.separating_monomial.has_value(),
            "tr(1,2,3) not certified indecomposable");

    // z := 0 kills the odd trace and leaves the alternating plane pattern
    require(tr_inv({1, 2, 3}).substitute(zero_z_map(3)) == Polynomial::zero(Ring::gf2()),
            "odd trace survives z := 0");
    require(tr_inv({1, 2, 3, 4}).substitute(zero_z_map(4)) == b_IJ({1, 3}, {2, 4}),
            "even trace restriction is not B(1,3|2,4)");

    for (unsigned s : {3u, 4u}) {
        std::vector<unsigned> idx = seq(s);
        std::vector<unsigned> shorter(idx.begin(), idx.end() - 1);
        std::map<VariableId, Polynomial> sub;
        Ring z = Ring::integers();
        sub.emplace(VariableId::z(s), Polynomial::constant(z, 1));
        sub.emplace(VariableId::x(1, s), Polynomial::zero(z));
        sub.emplace(VariableId::y(1, s), Polynomial::zero(z));
        require(tr_inv_int(idx).substitute(sub) == tr_inv_int(shorter),
                "identity slot reduction failed at s=" + std::to_string(s));
    }
    return "tr(1,2) = B(12); symbolic O(3) pass for s<=4; tr(1,2,3) indecomposable; "
           "z:=0 and identity-slot reductions exact";
}

std::string crit4_so4_o4() {
    CheckOptions sym;
    sym.mode = CheckMode::Symbolic;
    Ring g2 = Ring::gf2();

    Polynomial F = f_F_inv({1, 2}, {3, 4});
    Certificate cf = invariance_check(F, GroupId::SO, 4, sym);
    require(cf.pass, "F failed the SO(4) symbolic check");
    std::map<VariableId, Polynomial> kill;
    for (unsigned i = 1; i <= 4; ++i) {
        kill.emplace(VariableId::x(2, i), Polynomial::zero(g2));
        kill.emplace(VariableId::y(2, i), Polynomial::zero(g2));
    }
    require(F.substitute(kill) == b_IJ({1, 2}, {3, 4}),
            "restriction of F to the plane is not B(1,2|3,4)");

    Polynomial G = g_inv({1, 2}, {3, 4});
    Certificate cg = invariance_check(G, GroupId::O, 4, sym);
    require(cg.pass, "G failed the O(4) symbolic check");

    // coset substitution: vectors 1,2 in the plane, vector 3 -> e_{y2},
    // vector 4 -> e_{x2}
    std::map<VariableId, Polynomial> sub;
    for (unsigned i : {1u, 2u}) {
        sub.emplace(VariableId::x(2, i), Polynomial::zero(g2));
        sub.emplace(VariableId::y(2, i), Polynomial::zero(g2));
    }
    sub.emplace(VariableId::x(1, 3), Polynomial::zero(g2));
    sub.emplace(VariableId::x(2, 3), Polynomial::zero(g2));
    sub.emplace(VariableId::y(2, 3), Polynomial::constant(g2, 1));
    sub.emplace(VariableId::y(1, 3), Polynomial::zero(g2));
    sub.emplace(VariableId::x(1, 4), Polynomial::zero(g2));
    sub.emplace(VariableId::x(2, 4), Polynomial::constant(g2, 1));
    sub.emplace(VariableId::y(2, 4), Polynomial::zero(g2));
    sub.emplace(VariableId::y(1, 4), Polynomial::zero(g2));
    require(G.substitute(sub) == b_IJ({1}, {2}), "coset substitution of G is not B(1|2)");

    return "F passes SO(4); F restricted to the plane equals B(1,2|3,4); G passes O(4); "
           "coset substitution of G equals B(1|2)";
}

std::string crit5_even_invariant() {
    Polynomial fe = f_even(2, 2);
    unsigned long long cnt = fe.term_count();
    unsigned long long closed = f_even_term_count(2, 2);
    bool count_ok = (cnt == 100800ULL);

    CheckOptions sym;
    sym.mode = CheckMode::Symbolic;
    bool inv_ok = invariance_check(fe, GroupId::O, 4, sym).pass;

    Ring g2 = Ring::gf2();
    GroupAction T = from_matrix({1, 1, 0, 0,
                                 0, 1, 0, 0,
                                 0, 0, 1, 0,
                                 0, 0, 0, 1},
                                4, g2);
    bool transvection_ok = is_symplectic(T) && !is_orthogonal(T);
    Polynomial diff = apply(T, fe) + fe;
    bool changed = diff != Polynomial::zero(g2);
    std::string witness = changed ? leading_term(diff) : "(none)";

    std::ostringstream os;
    if (count_ok)
        os << "term count 100800";
    else
        os << "term count " << cnt << " (pinned expectation 100800; enumerated and "
           << "closed-form counts agree at " << closed
           << ", every admissible type matrix having equal rows)";
    os << "; O(4) symbolic invariance " << (inv_ok ? "pass" : "FAIL")
       << "; symplectic transvection x1 -> x1+y1 "
       << (changed ? "changes it, witness monomial " + witness : "FIXES it");
    if (count_ok && inv_ok && transvection_ok && changed) return os.str();
    throw Failure{os.str()};
}

std::string crit6_plane_sextilinear() {
    Polynomial p = p6();
    require(p.term_count() == 20,
            "p6 has " + std::to_string(p.term_count()) + " terms, expected 20");
    CheckOptions sym;
    sym.mode = CheckMode::Symbolic;
    Certificate c = invariance_check(p.reduce_mod2(), GroupId::SL2, 2, sym);
    require(c.pass, "p6 mod 2 failed the SL(2) symbolic check");
    return "20 integer terms; mod 2 passes the SL(2) symbolic check";
}

std::string crit7_delta_parity() {
    for (unsigned nu : {1u, 2u, 3u}) {
        unsigned n2 = 2 * nu;
        Polynomial S = match_sum(nu);
        Polynomial D = d_inv(seq(n2), n2, Ring::integers());
        require(S.reduce_mod2() == d_inv(seq(n2), n2),
                "match sum and determinant differ mod 2 at nu=" + std::to_string(nu));
        Polynomial diffSD = S + D.scaled(Coeff(-1));
        Polynomial half = [&]() -> Polynomial {
            try {
                return diffSD.divide_exact(2);
            } catch (const NotDivisible&) {
                throw Failure{"match_sum - D is not divisible by 2 at nu=" + std::to_string(nu)};
            }
        }();
        Polynomial dlt = delta_inv(nu);
        require(half.reduce_mod2() == dlt,
                "half difference disagrees with Delta at nu=" + std::to_string(nu));
        if (nu <= 2) {
            CheckOptions sym;
            sym.mode = CheckMode::Symbolic;
            Certificate c = invariance_check(dlt, GroupId::SO, n2, sym);
            require(c.pass && c.mode == "symbolic",
                    "Delta failed the SO symbolic check at nu=" + std::to_string(nu));
        } else {
            CheckOptions rnd;
            rnd.mode = CheckMode::Randomized;
            rnd.k = 8;
            rnd.elements = 64;
            rnd.seed = 707;
            Certificate c = invariance_check(dlt, GroupId::SO, n2, rnd);
            require(c.pass, "Delta failed the randomized SO(6) check");
        }
        require(apply(swap_x1y1(n2, Ring::gf2()), dlt) != dlt,
                "Delta is fixed by the swap at nu=" + std::to_string(nu));
    }
    return "S = D mod 2 and (S-D)/2 exact for nu<=3; SO-invariant (symbolic nu<=2, "
           "randomized nu=3); moved by the swap x1 <-> y1";
}

std::string crit8_relations() {
    require(verify_g_relation(3), "G relation failed at n=3");
    require(verify_g_relation(5), "G relation failed at n=5");
    for (unsigned n : {3u, 5u})
        for (const auto& [m, c] : gram_det(n).sorted_terms()) {
            (void)m;
            require(c % 2 == 0, "odd coefficient in gram_det(" + std::to_string(n) + ")");
        }
    require(verify_gamma_relation(2), "Gamma relation failed at n=2");
    require(verify_gamma_relation(4), "Gamma relation failed at n=4");
    for (unsigned n : {2u, 4u})
        for (const auto& [m, c] : gamma_relation(n).L.sorted_terms()) {
            (void)m;
            require(c % 4 == 0,
                    "L coefficient not divisible by 4 at n=" + std::to_string(n));
        }
    return "G relation zero for n=3,5; gram determinant coefficients all even; "
           "Gamma relation zero for n=2,4; L coefficients all divisible by 4";
}

std::string crit9_rewriting() {
    std::mt19937_64 rng(20260909);
    Ring g2 = Ring::gf2();
    for (unsigned n : {3u, 5u}) {
        for (int rep = 0; rep < 10; ++rep) {
            Polynomial f = Polynomial::zero(g2);
            while (f == Polynomial::zero(g2)) {
                f = Polynomial::zero(g2);
                unsigned nterms = 1 + unsigned(rng() % 3);
                for (unsigned t = 0; t < nterms; ++t) {
                    Polynomial prod = Polynomial::constant(g2, 1);
                    unsigned factors = 1 + unsigned(rng() % 3);
                    for (unsigned u = 0; u < factors; ++u) {
                        unsigned i = 1 + unsigned(rng() % 3);
                        if (rng() % 2 == 0) {
                            prod = prod * q_inv(i, n);
                        } else {
                            unsigned j = 1 + unsigned(rng() % 3);
                            while (j == i) j = 1 + unsigned(rng() % 3);
                            prod = prod * b_inv(std::min(i, j), std::max(i, j), n);
                        }
                    }
                    f += prod;
                }
            }
            Polynomial abstract = express_QB(f, n);
            require(substitute_QB(abstract, n) == f,
                    "back substitution mismatch at n=" + std::to_string(n) + ", rep " +
                        std::to_string(rep));
        }
    }
    bool threw = false;
    try {
        express_QB(Polynomial::parse("z_1", g2), 3);
    } catch (const OddZError&) {
        threw = true;
    }
    require(threw, "odd-z input was not rejected with OddZError");
    return "20 random Q,B polynomials rewritten and back-substituted exactly for n=3,5; "
           "odd-z input rejected";
}

std::string crit10_witt() {
    FieldDesc fd = make_field(8);
    std::mt19937_64 rng(20261010);
    unsigned extended_count = 0;
    unsigned total = 0;
    for (unsigned n = 1; n <= 6; ++n) {
        for (unsigned m = 1; m <= n; ++m) {
            for (int rep = 0; rep < 100; ++rep) {
                GramData g;
                g.m = m;
                g.field = fd;
                g.beta.assign(m, std::vector<Fe>(m, 0));
                for (unsigned i = 0; i < m; ++i)
                    for (unsigned j = i + 1; j < m; ++j)
                        g.beta[i][j] = g.beta[j][i] = f_random(fd, rng);
                for (unsigned i = 0; i < m; ++i) g.qvals.push_back(f_random(fd, rng));
                VectorTuple v = realize_gram(g, n, rng());
                require(v.field.k == 8 || v.field.k == 16,
                        "more than one quadratic extension");
                require(v.extended == (v.field.k == 16), "inconsistent extension flag");
                if (v.extended) ++extended_count;
                GramData fp = fingerprint(v, GroupId::O);
                auto lift = [&](Fe a) { return v.extended ? f_embed(fd, v.field, a) : a; };
                for (unsigned i = 0; i < m; ++i) {
                    require(fp.qvals[i] == lift(g.qvals[i]),
                            "q value mismatch after realization");
                    for (unsigned j = 0; j < m; ++j)
                        require(fp.beta[i][j] == lift(g.beta[i][j]),
                                "pairing mismatch after realization");
                }
                ++total;
            }
        }
    }

    std::mt19937_64 rng2(20261011);
    auto random_tuple = [&](unsigned n, unsigned m) {
        VectorTuple v;
        v.n = n;
        v.m = m;
        v.field = fd;
        v.columns.assign(m, std::vector<Fe>(n));
        for (auto& col : v.columns)
            for (auto& e : col) e = f_random(fd, rng2);
        return v;
    };
    unsigned same_done = 0;
    while (same_done < 100) {
        unsigned n = 2 + unsigned(rng2() % 5);
        unsigned m = 1 + unsigned(rng2() % n);
        VectorTuple v = random_tuple(n, m);
        if (same_orbit_generic(v, v, GroupId::O) != OrbitVerdict::Same) continue;
        GroupAction A = random_element(GroupId::O, n, fd, 1 + unsigned(rng2() % 5), rng2);
        std::vector<Fe> M = action_matrix(A, fd);
        VectorTuple w = v;
        for (auto& col : w.columns) col = matrix_apply(M, n, col, fd);
        require(same_orbit_generic(v, w, GroupId::O) == OrbitVerdict::Same,
                "transported tuple not recognized as the same orbit");
        ++same_done;
    }
    unsigned diff_done = 0;
    while (diff_done < 100) {
        unsigned n = 2 + unsigned(rng2() % 5);
        unsigned m = 1 + unsigned(rng2() % n);
        VectorTuple v = random_tuple(n, m);
        if (same_orbit_generic(v, v, GroupId::O) != OrbitVerdict::Same) continue;
        if (q_value_at(v.columns[0], n, fd) == 0) continue;
        Fe lam = f_random(fd, rng2);
        if (lam == 0 || lam == 1) continue;
        VectorTuple w = v;
        for (auto& e : w.columns[0]) e = f_mul(fd, lam, e);
        if (same_orbit_generic(w, w, GroupId::O) != OrbitVerdict::Same) continue;
        require(same_orbit_generic(v, w, GroupId::O) == OrbitVerdict::Different,
                "fingerprint-distinct pair not separated");
        ++diff_done;
    }

    struct NullCase {
        const char* name;
        unsigned ambient;
    };
    for (const auto& nc : {NullCase{"DELTA:nu=2", 4}, NullCase{"FEVEN:nu=2,t=2", 4},
                           NullCase{"F:1,2|3,4", 4}, NullCase{"TR:1,2,3", 3}}) {
        Certificate c = null_cone_vanishing(InvariantId::parse(nc.name), nc.ambient, 100, 8, 42);
        require(c.pass, std::string(nc.name) + " does not vanish on the null cone");
    }
    return std::to_string(total) + " realizations round trip (" +
           std::to_string(extended_count) + " extended once); 100 transported pairs same; "
           "100 scaled pairs different; Delta, f_even, F, tr vanish on 100 singular tuples each";
}

std::string crit11_jacobian() {
    FieldDesc fd = make_field(8);
    struct Case {
        unsigned n, m;
        size_t expect;
    };
    for (const Case& c : {Case{4, 2, 3}, Case{4, 4, 10}, Case{3, 3, 6}, Case{5, 5, 15}}) {
        auto coords = field_coordinates(c.n, c.m);
        require(coords.size() == c.expect,
                "coordinate count " + std::to_string(coords.size()) + " at (n,m)=(" +
                    std::to_string(c.n) + "," + std::to_string(c.m) + "), expected " +
                    std::to_string(c.expect));
        std::vector<Polynomial> polys;
        for (const auto& [name, p] : coords) {
            (void)name;
            polys.push_back(p);
        }
        size_t r = jacobian_rank(polys, standard_point(c.n, c.m), c.n, fd);
        require(r == c.expect, "jacobian rank " + std::to_string(r) + " at (n,m)=(" +
                                   std::to_string(c.n) + "," + std::to_string(c.m) + ")");
    }
    return "jacobian rank equals the coordinate count at the standard point for "
           "(4,2)=3, (4,4)=10, (3,3)=6, (5,5)=15";
}

std::string crit12_small_m() {
    unsigned cases = 0;
    for (unsigned a1 = 0; a1 <= 4; ++a1) {
        for (unsigned a2 = 0; a1 + a2 <= 4; ++a2) {
            if (a1 + a2 == 0) continue;
            Multidegree alpha;
            if (a1) alpha[1] = a1;
            if (a2) alpha[2] = a2;
            InvariantSpace sp = invariant_space(4, GroupId::O, alpha);
            std::vector<Polynomial> prods;
            for (unsigned e3 = 0; e3 <= std::min(a1, a2); ++e3) {
                if ((a1 - e3) % 2 || (a2 - e3) % 2) continue;
                prods.push_back(ppow(q_inv(1, 4), (a1 - e3) / 2) *
                                ppow(q_inv(2, 4), (a2 - e3) / 2) *
                                ppow(b_inv(1, 2, 4), e3));
            }
            require(rref_span(sp.basis, 4, alpha) == rref_span(prods, 4, alpha),
                    "basis mismatch at multidegree (" + std::to_string(a1) + "," +
                        std::to_string(a2) + ")");
            ++cases;
        }
    }
    return std::to_string(cases) + " multidegrees with |alpha| <= 4 match the span of "
                                   "Q(1),Q(2),B(12) products";
}

struct Criterion {
    const char* label;
    double budget_seconds;
    std::string (*fn)();
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"base invariance", 10.0, crit1_base_invariance},
        {"O(2) structure", 30.0, crit2_o2_structure},
        {"O(3) traces", 60.0, crit3_o3_traces},
        {"SO(4)/O(4)", 60.0, crit4_so4_o4},
        {"even-dimensional invariant", 300.0, crit5_even_invariant},
        {"plane sextilinear", 0.0, crit6_plane_sextilinear},
        {"Delta and parity", 120.0, crit7_delta_parity},
        {"relations", 120.0, crit8_relations},
        {"rewriting", 0.0, crit9_rewriting},
        {"Witt realization", 120.0, crit10_witt},
        {"jacobian rank", 0.0, crit11_jacobian},
        {"small-m consistency", 0.0, crit12_small_m},
    };

    unsigned passed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            detail = c.fn();
            ok = true;
        } catch (const Failure& f) {
            detail = f.detail;
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && c.budget_seconds > 0 && elapsed > c.budget_seconds) {
            ok = false;
            detail += "; runtime " + std::to_string(elapsed) + "s exceeds the " +
                      std::to_string(c.budget_seconds) + "s budget";
        }
        std::ostringstream line;
        line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1) << " (" << c.label
             << "): " << detail << " [" << std::fixed << std::setprecision(1) << elapsed
             << "s]";
        std::cout << line.str() << "\n";
        if (ok) ++passed;
    }
    std::cout << "acceptance: " << passed << "/" << criteria.size() << " criteria passed\n";
    return passed == criteria.size() ? 0 : 1;
}
