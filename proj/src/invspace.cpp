#include <oinv/invspace.hpp>

#include <algorithm>
#include <climits>
#include <functional>
#include <random>
#include <sstream>

#include <oinv/errors.hpp>
#include <oinv/generators.hpp>
#include <oinv/invariants.hpp>

namespace oinv {

namespace {

bool bits_get(const std::vector<uint64_t>& w, size_t c) {
    return (w[c >> 6] >> (c & 63)) & 1;
}

void bits_flip(std::vector<uint64_t>& w, size_t c) {
    w[c >> 6] ^= uint64_t(1) << (c & 63);
}

void bits_xor(std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        a[i] ^= b[i];
}

bool bits_zero(const std::vector<uint64_t>& w) {
    for (uint64_t x : w)
        if (x)
            return false;
    return true;
}

// Index of the lowest set bit, i.e. the leftmost nonzero column.
std::optional<size_t> bits_leading(const std::vector<uint64_t>& w) {
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i])
            return (i << 6) + static_cast<size_t>(__builtin_ctzll(w[i]));
    return std::nullopt;
}

std::vector<size_t> sym_diff(const std::vector<size_t>& a,
                             const std::vector<size_t>& b) {
    std::vector<size_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

Polynomial monomial_poly(const Ring& r, const Monomial& m) {
    Polynomial p(r);
    p.add_term(m, 1);
    return p;
}

} // namespace

size_t BitMatrix::add_row() {
    rows_.emplace_back(words_, 0);
    return rows_.size() - 1;
}

void BitMatrix::xor_rows(size_t dst, size_t src) {
    bits_xor(rows_[dst], rows_[src]);
}

size_t BitMatrix::rref() {
    pivots_.clear();
    size_t rank = 0;
    for (size_t col = 0; col < cols_ && rank < rows_.size(); ++col) {
        size_t sel = rows_.size();
        for (size_t r = rank; r < rows_.size(); ++r)
            if (get(r, col)) {
                sel = r;
                break;
            }
        if (sel == rows_.size())
            continue;
        std::swap(rows_[rank], rows_[sel]);
        for (size_t r = 0; r < rows_.size(); ++r)
            if (r != rank && get(r, col))
                bits_xor(rows_[r], rows_[rank]);
        pivots_.push_back(col);
        ++rank;
    }
    rows_.resize(rank);
    return rank;
}

std::vector<std::vector<size_t>> BitMatrix::kernel() const {
    std::vector<char> is_pivot(cols_, 0);
    for (size_t p : pivots_)
        is_pivot[p] = 1;
    BitMatrix K(cols_);
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f])
            continue;
        size_t r = K.add_row();
        K.flip(r, f);
        for (size_t i = 0; i < pivots_.size(); ++i)
            if (get(i, f))
                K.flip(r, pivots_[i]);
    }
    K.rref();
    std::vector<std::vector<size_t>> out;
    for (size_t r = 0; r < K.row_count(); ++r) {
        std::vector<size_t> v;
        for (size_t c = 0; c < cols_; ++c)
            if (K.get(r, c))
                v.push_back(c);
        out.push_back(std::move(v));
    }
    return out;
}

void SpanSolver::add(const std::vector<size_t>& support) {
    std::vector<uint64_t> bits(words_, 0);
    for (size_t c : support)
        bits_flip(bits, c);
    std::vector<size_t> comb{count_};
    ++count_;
    for (const PivotRow& pr : pivot_rows_)
        if (bits_get(bits, pr.pivot)) {
            bits_xor(bits, pr.bits);
            comb = sym_diff(comb, pr.comb);
        }
    auto lead = bits_leading(bits);
    if (!lead)
        return;
    PivotRow nr{*lead, std::move(bits), std::move(comb)};
    for (PivotRow& pr : pivot_rows_)
        if (bits_get(pr.bits, nr.pivot)) {
            bits_xor(pr.bits, nr.bits);
            pr.comb = sym_diff(pr.comb, nr.comb);
        }
    pivot_rows_.push_back(std::move(nr));
}

std::optional<std::vector<size_t>> SpanSolver::express(
    const std::vector<size_t>& target_support,
    std::vector<size_t>* residual_support) const {
    std::vector<uint64_t> bits(words_, 0);
    for (size_t c : target_support)
        bits_flip(bits, c);
    std::vector<size_t> comb;
    for (const PivotRow& pr : pivot_rows_)
        if (bits_get(bits, pr.pivot)) {
            bits_xor(bits, pr.bits);
            comb = sym_diff(comb, pr.comb);
        }
    if (bits_zero(bits))
        return comb;
    if (residual_support) {
        residual_support->clear();
        for (size_t c = 0; c < cols_; ++c)
            if (bits_get(bits, c))
                residual_support->push_back(c);
    }
    return std::nullopt;
}

namespace {

// Shared dense elimination; records pivot columns when requested.
size_t fe_eliminate(std::vector<std::vector<Fe>>& M, const FieldDesc& fd,
                    std::vector<size_t>* pivots) {
    if (M.empty())
        return 0;
    size_t rows = M.size();
    size_t cols = M[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = rows;
        for (size_t r = rank; r < rows; ++r)
            if (M[r][col]) {
                sel = r;
                break;
            }
        if (sel == rows)
            continue;
        std::swap(M[rank], M[sel]);
        Fe inv = f_inv(fd, M[rank][col]);
        for (Fe& x : M[rank])
            x = f_mul(fd, x, inv);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || !M[r][col])
                continue;
            Fe factor = M[r][col];
            for (size_t c = col; c < cols; ++c)
                M[r][c] = f_add(M[r][c], f_mul(fd, factor, M[rank][c]));
        }
        if (pivots)
            pivots->push_back(col);
        ++rank;
    }
    return rank;
}

} // namespace

size_t fe_rank(std::vector<std::vector<Fe>>& M, const FieldDesc& fd) {
    return fe_eliminate(M, fd, nullptr);
}

std::vector<std::vector<Fe>> fe_kernel(std::vector<std::vector<Fe>>& M,
                                       size_t cols, const FieldDesc& fd) {
    std::vector<size_t> pivots;
    size_t rank = fe_eliminate(M, fd, &pivots);
    std::vector<char> is_pivot(cols, 0);
    for (size_t p : pivots)
        is_pivot[p] = 1;
    std::vector<std::vector<Fe>> kernel;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Fe> v(cols, 0);
        v[f] = 1;
        for (size_t r = 0; r < rank; ++r)
            v[pivots[r]] = M[r][f];
        kernel.push_back(std::move(v));
    }
    fe_eliminate(kernel, fd, nullptr);
    return kernel;
}

namespace {

Coeff binomial(unsigned n, unsigned k) {
    Coeff out = 1;
    for (unsigned i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

} // namespace

Coeff component_size(unsigned n, const Multidegree& alpha) {
    Coeff total = 1;
    for (const auto& [i, d] : alpha) {
        (void)i;
        if (d)
            total *= binomial(n + d - 1, d);
    }
    return total;
}

std::vector<Monomial> component_monomials(unsigned n, const Multidegree& alpha,
                                          size_t cap) {
    Coeff size = component_size(n, alpha);
    if (size > Coeff(cap)) {
        std::ostringstream os;
        os << "multidegree component has " << size
           << " monomials, exceeding the cap of " << cap;
        throw ComponentCapExceeded(os.str());
    }
    std::vector<std::pair<unsigned, unsigned>> vecs;
    for (const auto& [i, d] : alpha)
        if (d)
            vecs.emplace_back(i, d);

    std::vector<Monomial> out;
    std::vector<std::pair<VariableId, uint32_t>> factors;
    std::vector<uint32_t> exps(n, 0);

    std::function<void(size_t)> per_vector = [&](size_t vi) {
        if (vi == vecs.size()) {
            Monomial m;
            m.factors = factors;
            std::sort(m.factors.begin(), m.factors.end(),
                      [](const auto& a, const auto& b) {
                          return a.first.raw < b.first.raw;
                      });
            out.push_back(std::move(m));
            return;
        }
        auto [i, d] = vecs[vi];
        std::function<void(unsigned, unsigned)> comp = [&](unsigned r,
                                                           unsigned rem) {
            if (r + 1 == n) {
                size_t base = factors.size();
                if (rem)
                    factors.emplace_back(coordinate_variable(r, n, i), rem);
                per_vector(vi + 1);
                factors.resize(base);
                return;
            }
            for (unsigned e = 0; e <= rem; ++e) {
                size_t base = factors.size();
                if (e)
                    factors.emplace_back(coordinate_variable(r, n, i), e);
                comp(r + 1, rem - e);
                factors.resize(base);
            }
        };
        comp(0, d);
    };
    per_vector(0);

    std::sort(out.begin(), out.end(), term_order_before);
    return out;
}

InvariantSpace invariant_space(unsigned n, GroupId group,
                               const Multidegree& alpha,
                               const SpaceOptions& opt) {
    if (n == 0)
        throw DimensionMismatch("invariant_space requires n >= 1");
    auto columns = component_monomials(n, alpha, opt.cap);
    unsigned nu = n / 2;

    bool symbolic;
    switch (opt.mode) {
    case CheckMode::Symbolic:
        if (!has_symbolic_family(group, n))
            throw UnsupportedGroup("no symbolic generator family for " +
                                   group_name(group, n));
        symbolic = true;
        break;
    case CheckMode::Randomized:
        symbolic = false;
        break;
    default:
        symbolic = has_symbolic_family(group, n);
        break;
    }

    InvariantSpace out;
    out.group = group;
    out.n = n;
    out.alpha = alpha;
    out.system.columns = columns;

    if (symbolic) {
        Ring g2 = Ring::gf2();
        VariableId c0 = VariableId::param(0);
        BitMatrix M(columns.size());
        for (size_t c = 0; c < columns.size(); ++c)
            if (!weight_rule_holds(columns[c], nu)) {
                size_t r = M.add_row();
                M.flip(r, c);
            }
        GeneratorFamily fam = generator_family(group, n);
        for (const GroupAction& g : fam.unipotents) {
            std::map<uint32_t, std::unordered_map<Monomial, size_t, MonomialHash>>
                row_of;
            for (size_t c = 0; c < columns.size(); ++c) {
                Polynomial diff =
                    apply(g, monomial_poly(g2, columns[c])) +
                    monomial_poly(g2, columns[c]);
                unsigned dmax = diff.max_param_degree();
                for (uint32_t j = 1; j <= dmax; ++j) {
                    Polynomial cj = diff.param_coefficient(c0, j);
                    for (const auto& [w, coef] : cj.terms) {
                        (void)coef;
                        auto& rows = row_of[j];
                        auto it = rows.find(w);
                        size_t r;
                        if (it == rows.end()) {
                            r = M.add_row();
                            rows.emplace(w, r);
                        } else {
                            r = it->second;
                        }
                        M.flip(r, c);
                    }
                }
            }
        }
        if (fam.swap_check) {
            GroupAction sw = swap_x1y1(n, g2);
            std::unordered_map<Monomial, size_t, MonomialHash> row_of;
            for (size_t c = 0; c < columns.size(); ++c) {
                Polynomial diff =
                    apply(sw, monomial_poly(g2, columns[c])) +
                    monomial_poly(g2, columns[c]);
                for (const auto& [w, coef] : diff.terms) {
                    (void)coef;
                    auto it = row_of.find(w);
                    size_t r;
                    if (it == row_of.end()) {
                        r = M.add_row();
                        row_of.emplace(w, r);
                    } else {
                        r = it->second;
                    }
                    M.flip(r, c);
                }
            }
        }
        out.system.constraint_rows = M.row_count();
        out.system.rank = M.rref();
        for (const auto& sup : M.kernel()) {
            Polynomial b(g2);
            for (size_t c : sup)
                b.add_term(columns[c], 1);
            out.basis.push_back(std::move(b));
        }
        out.provenance = "symbolic";
    } else {
        FieldDesc fd = make_field(opt.k);
        Ring rk = Ring::gf2k(fd);
        std::mt19937_64 rng(opt.seed);
        std::vector<std::vector<Fe>> M;
        for (size_t c = 0; c < columns.size(); ++c)
            if (!weight_rule_holds(columns[c], nu)) {
                M.emplace_back(columns.size(), 0);
                M.back()[c] = 1;
            }
        for (unsigned e = 0; e < opt.elements; ++e) {
            unsigned r = static_cast<unsigned>(rng() % opt.reflections) + 1;
            GroupAction A = random_element(group, n, fd, r, rng);
            std::unordered_map<Monomial, size_t, MonomialHash> row_of;
            for (size_t c = 0; c < columns.size(); ++c) {
                Polynomial diff =
                    apply(A, monomial_poly(rk, columns[c])) +
                    monomial_poly(rk, columns[c]);
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
        out.system.constraint_rows = M.size();
        auto ker = fe_kernel(M, columns.size(), fd);
        out.system.rank = columns.size() - ker.size();
        for (const auto& v : ker) {
            bool rational = true;
            for (Fe x : v)
                if (x > 1) {
                    rational = false;
                    break;
                }
            Polynomial b(rational ? Ring::gf2() : rk);
            for (size_t c = 0; c < columns.size(); ++c)
                if (v[c])
                    b.add_term(columns[c], Coeff(v[c]));
            out.basis.push_back(std::move(b));
        }
        std::ostringstream os;
        os << "randomized seed=" << opt.seed << " k=" << opt.k
           << " elements=" << opt.elements;
        out.provenance = os.str();
    }
    return out;
}

DecompositionResult is_decomposable(const Polynomial& target, GroupId group,
                                    unsigned n, const SpaceOptions& opt) {
    if (!(target.ring == Ring::gf2()))
        throw RingMismatch("is_decomposable expects a GF(2) polynomial");
    Multidegree alpha = target.multidegree();
    auto columns = component_monomials(n, alpha, opt.cap);
    std::unordered_map<Monomial, size_t, MonomialHash> col_of;
    for (size_t c = 0; c < columns.size(); ++c)
        col_of.emplace(columns[c], c);

    std::map<Multidegree, InvariantSpace> cache;
    auto space_of = [&](const Multidegree& beta) -> const InvariantSpace& {
        auto it = cache.find(beta);
        if (it == cache.end())
            it = cache.emplace(beta, invariant_space(n, group, beta, opt)).first;
        return it->second;
    };

    auto support_of = [&](const Polynomial& p) {
        std::vector<size_t> sup;
        for (const auto& [m, coef] : p.terms) {
            (void)coef;
            sup.push_back(col_of.at(m));
        }
        std::sort(sup.begin(), sup.end());
        return sup;
    };

    SpanSolver span(columns.size());
    std::vector<std::pair<Polynomial, Polynomial>> gens;

    std::vector<std::pair<unsigned, unsigned>> caps(alpha.begin(), alpha.end());
    std::vector<unsigned> cnt(caps.size(), 0);
    for (;;) {
        size_t pos = 0;
        while (pos < cnt.size() && cnt[pos] == caps[pos].second)
            cnt[pos++] = 0;
        if (pos == cnt.size())
            break;
        ++cnt[pos];

        bool zero = true, full = true;
        for (size_t i = 0; i < cnt.size(); ++i) {
            if (cnt[i])
                zero = false;
            if (cnt[i] != caps[i].second)
                full = false;
        }
        if (zero || full)
            continue;
        std::vector<unsigned> comp(cnt.size());
        for (size_t i = 0; i < cnt.size(); ++i)
            comp[i] = caps[i].second - cnt[i];
        if (comp < cnt)
            continue;
        bool half = comp == cnt;

        Multidegree beta, gamma;
        for (size_t i = 0; i < cnt.size(); ++i) {
            if (cnt[i])
                beta[caps[i].first] = cnt[i];
            if (comp[i])
                gamma[caps[i].first] = comp[i];
        }
        const InvariantSpace& Sb = space_of(beta);
        const InvariantSpace& Sg = space_of(gamma);
        for (size_t i = 0; i < Sb.basis.size(); ++i)
            for (size_t j = half ? i : 0; j < Sg.basis.size(); ++j) {
                Polynomial prod = Sb.basis[i] * Sg.basis[j];
                span.add(support_of(prod));
                gens.emplace_back(Sb.basis[i], Sg.basis[j]);
            }
    }

    DecompositionResult res;
    std::vector<size_t> residual;
    auto comb = span.express(support_of(target), &residual);
    if (comb) {
        res.decomposable = true;
        Polynomial sum = Polynomial::zero(Ring::gf2());
        std::ostringstream os;
        for (size_t gi : *comb) {
            res.products.push_back(gens[gi]);
            sum += gens[gi].first * gens[gi].second;
            if (os.tellp() > 0)
                os << " + ";
            os << "(" << gens[gi].first.str() << ")*(" << gens[gi].second.str()
               << ")";
        }
        res.combination = std::move(sum);
        res.certificate = os.str();
    } else {
        res.decomposable = false;
        res.separating_monomial = columns[residual.front()];
        res.certificate =
            "after reduction against the span of products of lower-multidegree "
            "invariants, the target keeps the monomial " +
            columns[residual.front()].str();
    }
    return res;
}

std::optional<Polynomial> express_in_B(const Polynomial& p, unsigned nu,
                                       size_t cap) {
    if (nu == 0)
        throw DimensionMismatch("express_in_B requires nu >= 1");
    if (!(p.ring == Ring::gf2()))
        throw RingMismatch("express_in_B expects a GF(2) polynomial");
    Ring g2 = Ring::gf2();
    if (p.is_zero())
        return Polynomial::zero(g2);
    unsigned n = 2 * nu;
    for (const auto& [m, coef] : p.terms) {
        (void)coef;
        for (const auto& [v, e] : m.factors) {
            (void)e;
            if (!v.is_coordinate() || v.kind() == VarKind::Z || v.coord() > nu)
                throw ShapeError("express_in_B expects x,y coordinates of k^" +
                                 std::to_string(n));
        }
    }
    Multidegree alpha = p.multidegree();

    std::vector<unsigned> verts;
    std::vector<unsigned> deg;
    for (const auto& [i, d] : alpha)
        if (d) {
            verts.push_back(i);
            deg.push_back(d);
        }
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t a = 0; a < verts.size(); ++a)
        for (size_t b = a + 1; b < verts.size(); ++b)
            edges.emplace_back(a, b);

    // Multigraphs on the support vertices with degree sequence alpha.
    std::vector<std::vector<unsigned>> graphs;
    std::vector<unsigned> mult(edges.size(), 0);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == edges.size()) {
            for (unsigned d : deg)
                if (d)
                    return;
            if (graphs.size() == cap)
                throw ComponentCapExceeded(
                    "number of candidate B-products exceeds the cap");
            graphs.push_back(mult);
            return;
        }
        auto [a, b] = edges[k];
        if (k == 0 || edges[k - 1].first != a)
            for (size_t v = 0; v < a; ++v)
                if (deg[v])
                    return;
        unsigned top = std::min(deg[a], deg[b]);
        for (unsigned e = 0; e <= top; ++e) {
            mult[k] = e;
            deg[a] -= e;
            deg[b] -= e;
            rec(k + 1);
            deg[a] += e;
            deg[b] += e;
        }
        mult[k] = 0;
    };
    rec(0);

    if (graphs.empty())
        return std::nullopt;

    auto columns = component_monomials(n, alpha, cap);
    std::unordered_map<Monomial, size_t, MonomialHash> col_of;
    for (size_t c = 0; c < columns.size(); ++c)
        col_of.emplace(columns[c], c);
    auto support_of = [&](const Polynomial& q) {
        std::vector<size_t> sup;
        for (const auto& [m, coef] : q.terms) {
            (void)coef;
            sup.push_back(col_of.at(m));
        }
        std::sort(sup.begin(), sup.end());
        return sup;
    };

    SpanSolver span(columns.size());
    for (const auto& g : graphs) {
        Polynomial prod = Polynomial::constant(g2, 1);
        for (size_t k = 0; k < edges.size(); ++k)
            if (g[k])
                prod = prod *
                       b_inv(verts[edges[k].first], verts[edges[k].second], n)
                           .pow(g[k]);
        span.add(support_of(prod));
    }
    auto comb = span.express(support_of(p));
    if (!comb)
        return std::nullopt;
    Polynomial abstract(g2);
    for (size_t gi : *comb) {
        Monomial m;
        for (size_t k = 0; k < edges.size(); ++k)
            if (graphs[gi][k])
                m.factors.emplace_back(
                    VariableId::ab(verts[edges[k].first], verts[edges[k].second]),
                    graphs[gi][k]);
        std::sort(m.factors.begin(), m.factors.end(),
                  [](const auto& a, const auto& b) {
                      return a.first.raw < b.first.raw;
                  });
        abstract.add_term(m, 1);
    }
    return abstract;
}

Polynomial substitute_QB(const Polynomial& abstract, unsigned n) {
    std::map<VariableId, Polynomial> images;
    for (const auto& [m, coef] : abstract.terms) {
        (void)coef;
        for (const auto& [v, e] : m.factors) {
            (void)e;
            if (images.count(v))
                continue;
            if (v.kind() == VarKind::AQ)
                images.emplace(v, q_inv(v.vec(), n, abstract.ring));
            else if (v.kind() == VarKind::AB)
                images.emplace(v, b_inv(v.vec(), v.second(), n, abstract.ring));
            else
                throw ShapeError("substitute_QB expects only Q and B "
                                 "abstract variables, found " +
                                 v.str());
        }
    }
    return abstract.substitute(images);
}

Polynomial express_QB(const Polynomial& f, unsigned n, size_t cap) {
    if (n % 2 == 0)
        throw ShapeError("express_QB requires odd n");
    if (!(f.ring == Ring::gf2()))
        throw RingMismatch("express_QB expects a GF(2) polynomial");
    unsigned nu = n / 2;
    for (const auto& [m, coef] : f.terms) {
        (void)coef;
        for (const auto& [v, e] : m.factors) {
            if (!v.is_coordinate() ||
                (v.kind() != VarKind::Z && v.coord() > nu))
                throw ShapeError("express_QB expects coordinates of k^" +
                                 std::to_string(n));
            if (v.kind() == VarKind::Z && e % 2)
                throw OddZError("z_" + std::to_string(v.vec()) +
                                " occurs with odd exponent " +
                                std::to_string(e));
        }
    }

    Ring g2 = Ring::gf2();
    using ZVec = std::vector<std::pair<unsigned, unsigned>>;
    auto zvec_of = [](const Monomial& m) {
        ZVec z;
        for (const auto& [v, e] : m.factors)
            if (v.kind() == VarKind::Z)
                z.emplace_back(v.vec(), e);
        return z;
    };
    // Positive when a is larger in (total degree, lex on exponents).
    auto zcmp = [](const ZVec& a, const ZVec& b) {
        unsigned ta = 0, tb = 0;
        for (const auto& [i, e] : a) {
            (void)i;
            ta += e;
        }
        for (const auto& [i, e] : b) {
            (void)i;
            tb += e;
        }
        if (ta != tb)
            return ta > tb ? 1 : -1;
        size_t ia = 0, ib = 0;
        while (ia < a.size() || ib < b.size()) {
            unsigned va = ia < a.size() ? a[ia].first : UINT_MAX;
            unsigned vb = ib < b.size() ? b[ib].first : UINT_MAX;
            if (va != vb)
                return va < vb ? 1 : -1;
            if (a[ia].second != b[ib].second)
                return a[ia].second > b[ib].second ? 1 : -1;
            ++ia;
            ++ib;
        }
        return 0;
    };

    Polynomial work = f;
    Polynomial result(g2);
    while (!work.is_zero()) {
        ZVec best;
        bool first = true;
        for (const auto& [m, coef] : work.terms) {
            (void)coef;
            ZVec z = zvec_of(m);
            if (first || zcmp(z, best) > 0) {
                best = std::move(z);
                first = false;
            }
        }
        Polynomial p(g2);
        for (const auto& [m, coef] : work.terms) {
            (void)coef;
            if (zvec_of(m) != best)
                continue;
            Monomial stripped;
            for (const auto& [v, e] : m.factors)
                if (v.kind() != VarKind::Z)
                    stripped.factors.emplace_back(v, e);
            p.add_term(stripped, 1);
        }
        // Split into multihomogeneous components; each must be a combination
        // of polar products on its own.
        std::map<Multidegree, Polynomial> comps;
        for (const auto& [m, coef] : p.terms) {
            (void)coef;
            auto [it, fresh] =
                comps.try_emplace(multidegree_of(m), Polynomial(g2));
            (void)fresh;
            it->second.add_term(m, 1);
        }
        Polynomial pb(g2);
        for (const auto& [md, comp] : comps) {
            std::optional<Polynomial> part;
            if (md.empty())
                part = Polynomial::constant(g2, 1);
            else
                part = express_in_B(comp, nu, cap);
            if (!part)
                throw NotInvariant(
                    "the coefficient of the leading z-block is not a "
                    "combination of polar products; the input is not an "
                    "invariant");
            pb += *part;
        }
        Polynomial qa = Polynomial::constant(g2, 1);
        Polynomial qc = Polynomial::constant(g2, 1);
        for (const auto& [i, e] : best) {
            qa = qa * Polynomial::variable(g2, VariableId::aq(i), e / 2);
            qc = qc * q_inv(i, n, g2).pow(e / 2);
        }
        result += qa * pb;
        work += qc * p;
    }
    if (substitute_QB(result, n) != f)
        throw NotInvariant("rewrite verification failed: back-substitution "
                           "does not reproduce the input");
    return result;
}

size_t jacobian_rank(const std::vector<Polynomial>& coords,
                     const std::vector<std::vector<Fe>>& point, unsigned n,
                     const FieldDesc& fd) {
    unsigned m = static_cast<unsigned>(point.size());
    for (const auto& v : point)
        if (v.size() != n)
            throw DimensionMismatch("point vector has wrong length");
    Ring rk = Ring::gf2k(fd);
    auto assign = [&](VariableId v) -> Fe {
        if (!v.is_coordinate())
            throw ShapeError("jacobian_rank expects coordinate variables");
        unsigned i = v.vec();
        if (i < 1 || i > m)
            throw DimensionMismatch("vector index " + std::to_string(i) +
                                    " outside the point tuple");
        unsigned r;
        if (v.kind() == VarKind::Z)
            r = n - 1;
        else
            r = 2 * (v.coord() - 1) + (v.kind() == VarKind::Y ? 1 : 0);
        if (r >= n)
            throw DimensionMismatch("coordinate outside k^" + std::to_string(n));
        return point[i - 1][r];
    };
    std::vector<std::vector<Fe>> J;
    for (const Polynomial& f : coords) {
        Polynomial fe = f.convert(rk);
        std::vector<Fe> row(size_t(m) * n, 0);
        for (unsigned i = 1; i <= m; ++i)
            for (unsigned r = 0; r < n; ++r) {
                Polynomial d = fe.derivative(coordinate_variable(r, n, i));
                if (!d.is_zero())
                    row[size_t(i - 1) * n + r] = d.evaluate(fd, assign);
            }
        J.push_back(std::move(row));
    }
    return fe_rank(J, fd);
}

std::vector<std::vector<Fe>> standard_point(unsigned n, unsigned m) {
    unsigned limit = std::min(m, 2 * (n / 2));
    std::vector<std::vector<Fe>> point(m, std::vector<Fe>(n, 0));
    for (unsigned i = 0; i < limit; ++i)
        point[i][i] = 1;
    return point;
}

std::vector<std::pair<std::string, Polynomial>> field_coordinates(unsigned n,
                                                                  unsigned m) {
    if (n < 2)
        throw DimensionMismatch("field_coordinates requires n >= 2");
    unsigned twonu = 2 * (n / 2);
    std::vector<std::pair<std::string, Polynomial>> out;
    for (unsigned i = 1; i <= std::min(m, twonu); ++i)
        out.emplace_back("Q:" + std::to_string(i), q_inv(i, n));
    for (unsigned i = 1; i <= std::min(m, twonu); ++i)
        for (unsigned j = i + 1; j <= m; ++j)
            out.emplace_back("B:" + std::to_string(i) + "," + std::to_string(j),
                             b_inv(i, j, n));
    if (n % 2)
        for (unsigned l = twonu + 1; l <= m; ++l) {
            std::vector<unsigned> idx;
            std::string name = "D:";
            for (unsigned i = 1; i <= twonu; ++i) {
                idx.push_back(i);
                name += std::to_string(i) + ",";
            }
            idx.push_back(l);
            name += std::to_string(l);
            out.emplace_back(name, d_inv(idx, n));
        }
    return out;
}

} // namespace oinv
