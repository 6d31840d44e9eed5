#include <oinv/witt.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include <json.hpp>

#include <oinv/errors.hpp>
#include <oinv/invspace.hpp>
#include <oinv/poly.hpp>

namespace oinv {

namespace {

using Matrix = std::vector<std::vector<Fe>>;

Matrix identity_matrix(std::size_t d) {
    Matrix out(d, std::vector<Fe>(d, 0));
    for (std::size_t i = 0; i < d; ++i) out[i][i] = 1;
    return out;
}

void require_alternating(const Matrix& beta, unsigned m, const FieldDesc& fd) {
    if (beta.size() != m) {
        throw ShapeError("pairing matrix has " + std::to_string(beta.size()) + " rows, expected " +
                         std::to_string(m));
    }
    Fe limit = (fd.k >= 32) ? ~Fe(0) : ((Fe(1) << fd.k) - 1);
    for (unsigned i = 0; i < m; ++i) {
        if (beta[i].size() != m) throw ShapeError("pairing matrix is not square");
        for (unsigned j = 0; j < m; ++j) {
            if (beta[i][j] > limit) {
                throw ShapeError("pairing entry out of range for GF(2^" + std::to_string(fd.k) + ")");
            }
        }
        if (beta[i][i] != 0) throw ShapeError("pairing matrix has a nonzero diagonal entry");
        for (unsigned j = i + 1; j < m; ++j) {
            if (beta[i][j] != beta[j][i]) throw ShapeError("pairing matrix is not symmetric");
        }
    }
}

void validate_gram(const GramData& g) {
    require_alternating(g.beta, g.m, g.field);
    if (g.qvals.size() != g.m) {
        throw ShapeError("expected " + std::to_string(g.m) + " form values, got " +
                         std::to_string(g.qvals.size()));
    }
    Fe limit = (g.field.k >= 32) ? ~Fe(0) : ((Fe(1) << g.field.k) - 1);
    for (Fe v : g.qvals) {
        if (v > limit) {
            throw ShapeError("form value out of range for GF(2^" + std::to_string(g.field.k) + ")");
        }
    }
}

// u^T * beta * w
Fe pair_value(const Matrix& beta, const std::vector<Fe>& u, const std::vector<Fe>& w,
              const FieldDesc& fd) {
    Fe acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        Fe row = 0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] != 0) row = f_add(row, f_mul(fd, beta[i][j], w[j]));
        }
        acc = f_add(acc, f_mul(fd, u[i], row));
    }
    return acc;
}

void add_scaled(std::vector<Fe>& v, Fe c, const std::vector<Fe>& w, const FieldDesc& fd) {
    if (c == 0) return;
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = f_add(v[t], f_mul(fd, c, w[t]));
}

bool is_zero_vector(const std::vector<Fe>& v) {
    return std::all_of(v.begin(), v.end(), [](Fe x) { return x == 0; });
}

Matrix fe_inverse(const Matrix& M, const FieldDesc& fd) {
    std::size_t d = M.size();
    Matrix a = M;
    Matrix inv = identity_matrix(d);
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = d;
        for (std::size_t r = col; r < d; ++r) {
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == d) throw SingularVector("matrix is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Fe s = f_inv(fd, a[col][col]);
        for (std::size_t c = 0; c < d; ++c) {
            a[col][c] = f_mul(fd, s, a[col][c]);
            inv[col][c] = f_mul(fd, s, inv[col][c]);
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Fe f = a[r][col];
            for (std::size_t c = 0; c < d; ++c) {
                a[r][c] = f_add(a[r][c], f_mul(fd, f, a[col][c]));
                inv[r][c] = f_add(inv[r][c], f_mul(fd, f, inv[col][c]));
            }
        }
    }
    return inv;
}

// Quadratic form on the coefficient space with values qv on the basis and
// polar matrix B.
struct CoeffForm {
    const std::vector<Fe>& qv;
    const Matrix& B;
    const FieldDesc& fd;

    Fe q(const std::vector<Fe>& v) const {
        Fe acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            acc = f_add(acc, f_mul(fd, qv[i], f_mul(fd, v[i], v[i])));
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                if (v[j] != 0) acc = f_add(acc, f_mul(fd, B[i][j], f_mul(fd, v[i], v[j])));
            }
        }
        return acc;
    }

    Fe b(const std::vector<Fe>& u, const std::vector<Fe>& w) const {
        return pair_value(B, u, w, fd);
    }
};

// Greedy extraction of `target` independent vectors from cand.
std::vector<std::vector<Fe>> independent_subset(const std::vector<std::vector<Fe>>& cand,
                                                std::size_t target, const FieldDesc& fd) {
    std::vector<std::vector<Fe>> rows;
    std::vector<std::size_t> piv;
    std::vector<std::vector<Fe>> keep;
    for (const auto& c : cand) {
        if (keep.size() == target) break;
        auto v = c;
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (v[piv[t]] != 0) add_scaled(v, v[piv[t]], rows[t], fd);
        }
        std::size_t p = v.size();
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (v[t] != 0) {
                p = t;
                break;
            }
        }
        if (p == v.size()) continue;
        Fe s = f_inv(fd, v[p]);
        for (auto& x : v) x = f_mul(fd, s, x);
        rows.push_back(v);
        piv.push_back(p);
        keep.push_back(c);
    }
    if (keep.size() != target) {
        throw SingularVector("internal: expected " + std::to_string(target) +
                             " independent residual vectors");
    }
    return keep;
}

// Nonzero isotropic vector in the span of basis.  basis carries a
// non-degenerate polar pairing; for dimension 2 the form must be hyperbolic
// (guaranteed by the prior Arf check) and the plane formula always succeeds.
std::vector<Fe> find_isotropic(const CoeffForm& F, const std::vector<std::vector<Fe>>& basis,
                               std::mt19937_64& rng) {
    const FieldDesc& fd = F.fd;
    for (const auto& c : basis) {
        if (F.q(c) == 0) return c;
    }
    auto from_plane = [&](const std::vector<Fe>& v1,
                          const std::vector<Fe>& v2) -> std::optional<std::vector<Fe>> {
        Fe c = F.b(v1, v2);
        if (c == 0) return std::nullopt;
        Fe a = F.q(v1);
        if (a == 0) return is_zero_vector(v1) ? std::nullopt : std::optional(v1);
        Fe bq = F.q(v2);
        if (bq == 0) return is_zero_vector(v2) ? std::nullopt : std::optional(v2);
        Fe w = f_mul(fd, f_mul(fd, a, bq), f_inv(fd, f_mul(fd, c, c)));
        auto s = artin_schreier_solve(fd, w);
        if (!s) return std::nullopt;
        auto u = v2;
        add_scaled(u, f_mul(fd, f_mul(fd, c, f_inv(fd, a)), *s), v1, fd);
        if (is_zero_vector(u) || F.q(u) != 0) return std::nullopt;
        return u;
    };
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (auto u = from_plane(basis[i], basis[j])) return *u;
        }
    }
    std::size_t d = basis.size();
    std::vector<Fe> v1(d == 0 ? 0 : basis[0].size(), 0);
    std::vector<Fe> v2 = v1;
    for (int tries = 0; tries < (1 << 18); ++tries) {
        std::fill(v1.begin(), v1.end(), 0);
        std::fill(v2.begin(), v2.end(), 0);
        for (const auto& c : basis) add_scaled(v1, f_random(fd, rng), c, fd);
        for (const auto& c : basis) add_scaled(v2, f_random(fd, rng), c, fd);
        if (!is_zero_vector(v1) && F.q(v1) == 0) return v1;
        if (auto u = from_plane(v1, v2)) return *u;
    }
    throw SingularVector("internal: no isotropic vector found");
}

// Basis p_1, s_1, ..., p_s, s_s of the coefficient space with q = 0 on every
// basis vector, b(p_t, s_t) = 1 and all other pairs orthogonal.
std::vector<std::vector<Fe>> hyperbolic_basis(const std::vector<Fe>& qv, const Matrix& B,
                                              const FieldDesc& fd, std::uint64_t seed) {
    std::size_t d = qv.size();
    CoeffForm F{qv, B, fd};
    std::mt19937_64 rng(seed ^ 0x77697474ULL);
    std::vector<std::vector<Fe>> basis = identity_matrix(d);
    std::vector<std::vector<Fe>> out;
    while (!basis.empty()) {
        std::vector<Fe> u = find_isotropic(F, basis, rng);
        std::size_t wi = basis.size();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (F.b(u, basis[i]) != 0) {
                wi = i;
                break;
            }
        }
        if (wi == basis.size()) throw SingularVector("internal: pairing degenerated");
        std::vector<Fe> w = basis[wi];
        Fe s = f_inv(fd, F.b(u, w));
        for (auto& x : w) x = f_mul(fd, s, x);
        add_scaled(w, F.q(w), u, fd);
        std::vector<std::vector<Fe>> next;
        for (const auto& v0 : basis) {
            auto v = v0;
            add_scaled(v, F.b(v, w), u, fd);
            add_scaled(v, F.b(v, u), w, fd);
            next.push_back(std::move(v));
        }
        out.push_back(std::move(u));
        out.push_back(std::move(w));
        basis = independent_subset(next, basis.size() - 2, fd);
    }
    return out;
}

std::function<Fe(VariableId)> column_assignment(const std::vector<std::vector<Fe>>& columns,
                                                unsigned n) {
    return [&columns, n](VariableId v) -> Fe {
        unsigned i = v.vec();
        if (i == 0 || i > columns.size()) {
            throw DimensionMismatch("variable references vector " + std::to_string(i) +
                                    " outside the tuple");
        }
        unsigned row = 0;
        switch (v.kind()) {
            case VarKind::X: row = 2 * (v.coord() - 1); break;
            case VarKind::Y: row = 2 * (v.coord() - 1) + 1; break;
            case VarKind::Z: row = n - 1; break;
            default: throw ShapeError("non-coordinate variable in evaluation");
        }
        if (row >= n) {
            throw DimensionMismatch("variable row " + std::to_string(row) +
                                    " outside dimension " + std::to_string(n));
        }
        return columns[i - 1][row];
    };
}

void require_tuple_shape(const VectorTuple& v) {
    if (v.columns.size() != v.m) {
        throw ShapeError("tuple holds " + std::to_string(v.columns.size()) +
                         " columns, expected " + std::to_string(v.m));
    }
    Fe limit = (v.field.k >= 32) ? ~Fe(0) : ((Fe(1) << v.field.k) - 1);
    for (const auto& c : v.columns) {
        if (c.size() != v.n) throw ShapeError("tuple column has wrong dimension");
        for (Fe x : c) {
            if (x > limit) {
                throw ShapeError("tuple entry out of range for GF(2^" + std::to_string(v.field.k) +
                                 ")");
            }
        }
    }
}

// Rank of the first lim columns modulo the radical of the polar pairing (the
// z axis for odd n, trivial for even n).
unsigned rank_mod_radical(const VectorTuple& v, unsigned lim) {
    unsigned cols = (v.n % 2 == 1) ? v.n - 1 : v.n;
    std::vector<std::vector<Fe>> M;
    for (unsigned i = 0; i < lim; ++i) {
        M.emplace_back(v.columns[i].begin(), v.columns[i].begin() + cols);
    }
    return static_cast<unsigned>(fe_rank(M, v.field));
}

bool tuple_generic(const VectorTuple& v, GroupId group) {
    unsigned nu = v.n / 2;
    unsigned lim = std::min(v.m, 2 * nu);
    if (rank_mod_radical(v, lim) != lim) return false;
    if (group == GroupId::SO && v.n % 2 == 0 && v.m < 2 * nu) {
        // perp of the span must contain a non-singular vector; q restricted
        // to the perp is identically zero iff all basis q values and all
        // pairwise pairing values vanish
        std::vector<std::vector<Fe>> rowsys;
        for (unsigned i = 0; i < v.m; ++i) {
            std::vector<Fe> row(v.n, 0);
            for (unsigned t = 0; t < nu; ++t) {
                row[2 * t] = v.columns[i][2 * t + 1];
                row[2 * t + 1] = v.columns[i][2 * t];
            }
            rowsys.push_back(std::move(row));
        }
        auto perp = fe_kernel(rowsys, v.n, v.field);
        bool nonsingular = false;
        for (std::size_t i = 0; i < perp.size() && !nonsingular; ++i) {
            if (q_value_at(perp[i], v.n, v.field) != 0) nonsingular = true;
            for (std::size_t j = i + 1; j < perp.size() && !nonsingular; ++j) {
                if (beta_value_at(perp[i], perp[j], v.n, v.field) != 0) nonsingular = true;
            }
        }
        if (!nonsingular) return false;
    }
    return true;
}

}  // namespace

Fe q_value_at(const std::vector<Fe>& v, unsigned n, const FieldDesc& fd) {
    if (v.size() != n) {
        throw DimensionMismatch("vector has dimension " + std::to_string(v.size()) +
                                ", expected " + std::to_string(n));
    }
    unsigned nu = n / 2;
    Fe acc = 0;
    for (unsigned t = 0; t < nu; ++t) acc = f_add(acc, f_mul(fd, v[2 * t], v[2 * t + 1]));
    if (n % 2 == 1) acc = f_add(acc, f_mul(fd, v[n - 1], v[n - 1]));
    return acc;
}

Fe beta_value_at(const std::vector<Fe>& a, const std::vector<Fe>& b, unsigned n,
                 const FieldDesc& fd) {
    if (a.size() != n || b.size() != n) {
        throw DimensionMismatch("pairing arguments must have dimension " + std::to_string(n));
    }
    unsigned nu = n / 2;
    Fe acc = 0;
    for (unsigned t = 0; t < nu; ++t) {
        acc = f_add(acc, f_mul(fd, a[2 * t], b[2 * t + 1]));
        acc = f_add(acc, f_mul(fd, a[2 * t + 1], b[2 * t]));
    }
    return acc;
}

AlternatingNormalForm alternating_normal_form(const std::vector<std::vector<Fe>>& beta,
                                              const FieldDesc& fd) {
    unsigned m = static_cast<unsigned>(beta.size());
    require_alternating(beta, m, fd);
    std::vector<std::vector<Fe>> rest = identity_matrix(m);
    std::vector<std::vector<Fe>> as, bs;
    for (;;) {
        std::size_t pi = rest.size(), pj = 0;
        Fe c = 0;
        for (std::size_t i = 0; i < rest.size() && pi == rest.size(); ++i) {
            for (std::size_t j = i + 1; j < rest.size(); ++j) {
                Fe c0 = pair_value(beta, rest[i], rest[j], fd);
                if (c0 != 0) {
                    pi = i;
                    pj = j;
                    c = c0;
                    break;
                }
            }
        }
        if (pi == rest.size()) break;
        std::vector<Fe> a = rest[pi];
        std::vector<Fe> b = rest[pj];
        Fe s = f_inv(fd, c);
        for (auto& x : b) x = f_mul(fd, s, x);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pj));
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pi));
        for (auto& v : rest) {
            Fe cb = pair_value(beta, v, b, fd);
            Fe ca = pair_value(beta, v, a, fd);
            add_scaled(v, cb, a, fd);
            add_scaled(v, ca, b, fd);
        }
        as.push_back(std::move(a));
        bs.push_back(std::move(b));
    }
    AlternatingNormalForm nf;
    nf.rank = 2 * as.size();
    nf.P.assign(m, std::vector<Fe>(m, 0));
    std::size_t col = 0;
    auto emit = [&](const std::vector<Fe>& v) {
        for (unsigned r = 0; r < m; ++r) nf.P[r][col] = v[r];
        ++col;
    };
    for (const auto& v : as) emit(v);
    for (const auto& v : bs) emit(v);
    for (const auto& v : rest) emit(v);
    return nf;
}

VectorTuple realize_gram(const GramData& g, unsigned n, std::uint64_t seed) {
    validate_gram(g);
    if (g.m > n) {
        throw DimensionMismatch("cannot place " + std::to_string(g.m) + " vectors in dimension " +
                                std::to_string(n));
    }
    unsigned nu = n / 2;
    FieldDesc fd = g.field;
    Matrix beta = g.beta;
    std::vector<Fe> qv = g.qvals;
    auto nf = alternating_normal_form(beta, fd);
    std::size_t r = nf.rank;
    if (r > 2 * static_cast<std::size_t>(nu)) {
        throw ShapeError("pairing rank " + std::to_string(r) + " exceeds " +
                         std::to_string(2 * nu));
    }

    VectorTuple out;
    out.n = n;
    out.m = g.m;
    out.extended = false;

    if (n % 2 == 0 && r == n) {
        // spanning case: m = n and the pairing is non-degenerate, so the
        // columns must form a hyperbolic coefficient basis; a nonzero Arf
        // class is cleared by one quadratic field extension
        Matrix upper(g.m, std::vector<Fe>(g.m, 0));
        for (unsigned i = 0; i < g.m; ++i) {
            upper[i][i] = qv[i];
            for (unsigned j = i + 1; j < g.m; ++j) upper[i][j] = beta[i][j];
        }
        if (arf_invariant(upper, fd) != 0) {
            FieldDesc big = make_field(2 * fd.k);
            for (auto& row : beta) {
                for (auto& x : row) x = f_embed(fd, big, x);
            }
            for (auto& x : qv) x = f_embed(fd, big, x);
            fd = big;
            out.extended = true;
        }
        auto H = hyperbolic_basis(qv, beta, fd, seed);
        Matrix Hm(n, std::vector<Fe>(n, 0));
        for (unsigned c = 0; c < n; ++c) {
            for (unsigned rr = 0; rr < n; ++rr) Hm[rr][c] = H[c][rr];
        }
        Matrix V = fe_inverse(Hm, fd);
        out.columns.assign(g.m, std::vector<Fe>(n, 0));
        for (unsigned i = 0; i < g.m; ++i) {
            for (unsigned rr = 0; rr < n; ++rr) out.columns[i][rr] = V[rr][i];
        }
    } else {
        Matrix Pinv = fe_inverse(nf.P, fd);
        out.columns.assign(g.m, std::vector<Fe>(n, 0));
        std::size_t half = r / 2;
        for (unsigned i = 0; i < g.m; ++i) {
            for (std::size_t a = 0; a < g.m; ++a) {
                Fe coef = Pinv[a][i];
                if (coef == 0 || a >= r) continue;
                unsigned row = (a < half) ? 2 * static_cast<unsigned>(a)
                                          : 2 * static_cast<unsigned>(a - half) + 1;
                out.columns[i][row] = f_add(out.columns[i][row], coef);
            }
        }
        if (n % 2 == 1) {
            for (unsigned i = 0; i < g.m; ++i) {
                Fe need = f_add(qv[i], q_value_at(out.columns[i], n, fd));
                out.columns[i][n - 1] = field_sqrt(fd, need);
            }
        } else {
            // r < n here, so the last coordinate pair is orthogonal to every
            // column and carries the correction vector with form value 1
            for (unsigned i = 0; i < g.m; ++i) {
                Fe need = f_add(qv[i], q_value_at(out.columns[i], n, fd));
                Fe lam = field_sqrt(fd, need);
                out.columns[i][n - 2] = f_add(out.columns[i][n - 2], lam);
                out.columns[i][n - 1] = f_add(out.columns[i][n - 1], lam);
            }
        }
    }

    out.field = fd;
    for (unsigned i = 0; i < g.m; ++i) {
        if (q_value_at(out.columns[i], n, fd) != qv[i]) {
            throw SingularVector("internal: realized form value mismatch at vector " +
                                 std::to_string(i + 1));
        }
        for (unsigned j = 0; j < g.m; ++j) {
            if (beta_value_at(out.columns[i], out.columns[j], n, fd) != beta[i][j]) {
                throw SingularVector("internal: realized pairing mismatch at (" +
                                     std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            }
        }
    }
    return out;
}

GramData fingerprint(const VectorTuple& v, GroupId group) {
    if (group != GroupId::O && group != GroupId::SO) {
        throw UnsupportedGroup("fingerprints are defined for O and SO");
    }
    require_tuple_shape(v);
    unsigned n = v.n, m = v.m, nu = n / 2;
    GramData g;
    g.m = m;
    g.field = v.field;
    g.qvals.resize(m);
    g.beta.assign(m, std::vector<Fe>(m, 0));
    for (unsigned i = 0; i < m; ++i) {
        g.qvals[i] = q_value_at(v.columns[i], n, v.field);
        for (unsigned j = i + 1; j < m; ++j) {
            Fe b = beta_value_at(v.columns[i], v.columns[j], n, v.field);
            g.beta[i][j] = b;
            g.beta[j][i] = b;
        }
    }
    auto assign = column_assignment(v.columns, n);
    if (n % 2 == 1 && m > 2 * nu) {
        std::vector<Fe> dv;
        std::vector<unsigned> idx(2 * nu);
        std::iota(idx.begin(), idx.end(), 1u);
        for (unsigned l = 2 * nu + 1; l <= m; ++l) {
            auto indices = idx;
            indices.push_back(l);
            dv.push_back(d_inv(indices, n).evaluate(v.field, assign));
        }
        g.dvals = std::move(dv);
    }
    if (group == GroupId::SO && n % 2 == 0 && m >= n) {
        g.deltaval = delta_inv(nu).evaluate(v.field, assign);
    }
    return g;
}

std::string verdict_name(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::Same: return "same";
        case OrbitVerdict::Different: return "different";
        default: return "not_generic";
    }
}

OrbitVerdict same_orbit_generic(const VectorTuple& a, const VectorTuple& b, GroupId group) {
    if (group != GroupId::O && group != GroupId::SO) {
        throw UnsupportedGroup("orbit comparison is defined for O and SO");
    }
    require_tuple_shape(a);
    require_tuple_shape(b);
    if (a.n != b.n || a.m != b.m || !(a.field == b.field)) {
        throw DimensionMismatch("tuples have different shapes");
    }
    if (!tuple_generic(a, group) || !tuple_generic(b, group)) return OrbitVerdict::NotGeneric;
    GramData fa = fingerprint(a, group);
    GramData fb = fingerprint(b, group);
    bool same = fa.beta == fb.beta && fa.qvals == fb.qvals && fa.dvals == fb.dvals &&
                fa.deltaval == fb.deltaval;
    return same ? OrbitVerdict::Same : OrbitVerdict::Different;
}

bool null_cone_test(const VectorTuple& v) {
    require_tuple_shape(v);
    for (unsigned i = 0; i < v.m; ++i) {
        if (q_value_at(v.columns[i], v.n, v.field) != 0) return false;
        for (unsigned j = i + 1; j < v.m; ++j) {
            if (beta_value_at(v.columns[i], v.columns[j], v.n, v.field) != 0) return false;
        }
    }
    return true;
}

Certificate null_cone_vanishing(const InvariantId& id, unsigned ambient, unsigned trials,
                                unsigned k, std::uint64_t seed) {
    Polynomial p = id.realize(ambient);
    if (p.ring.tag == RingTag::Int) p = p.reduce_mod2();
    unsigned maxt = 0, maxv = 0;
    bool has_z = false;
    for (const auto& [mono, coeff] : p.terms) {
        (void)coeff;
        for (const auto& [var, e] : mono.factors) {
            (void)e;
            if (!var.is_coordinate()) {
                throw ShapeError("invariant is not written in vector coordinates");
            }
            maxv = std::max(maxv, var.vec());
            if (var.kind() == VarKind::Z) {
                has_z = true;
            } else {
                maxt = std::max(maxt, var.coord());
            }
        }
    }
    unsigned n = 2 * maxt + (has_z ? 1 : 0);
    FieldDesc fd = make_field(k);
    std::mt19937_64 rng(seed);
    Certificate cert;
    cert.pass = true;
    cert.mode = "randomized";
    cert.group = id.str();
    cert.generators_checked = 0;
    cert.seed = seed;
    cert.elements = trials;
    cert.points = trials;
    std::vector<std::vector<Fe>> columns(maxv, std::vector<Fe>(n, 0));
    auto assign = column_assignment(columns, n == 0 ? 1 : n);
    for (unsigned trial = 0; trial < trials; ++trial) {
        for (auto& col : columns) {
            std::fill(col.begin(), col.end(), 0);
            for (unsigned t = 0; t < maxt; ++t) col[2 * t] = f_random(fd, rng);
        }
        Fe val = p.evaluate(fd, assign);
        if (val != 0) {
            cert.pass = false;
            std::ostringstream os;
            os << "trial " << trial << ": " << id.str() << " evaluates to " << val
               << " on a totally singular tuple";
            cert.witness = os.str();
            break;
        }
    }
    return cert;
}

Fe arf_invariant(const std::vector<std::vector<Fe>>& upper, const FieldDesc& fd) {
    std::size_t d = upper.size();
    if (d == 0 || d % 2 != 0) {
        throw ShapeError("the form must live in a positive even dimension");
    }
    for (const auto& row : upper) {
        if (row.size() != d) throw ShapeError("form matrix is not square");
    }
    Matrix B(d, std::vector<Fe>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            Fe b = f_add(upper[i][j], upper[j][i]);
            B[i][j] = b;
            B[j][i] = b;
        }
    }
    auto qf = [&](const std::vector<Fe>& v) {
        Fe acc = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = i; j < d; ++j) {
                if (upper[i][j] != 0 && v[j] != 0) {
                    acc = f_add(acc, f_mul(fd, upper[i][j], f_mul(fd, v[i], v[j])));
                }
            }
        }
        return acc;
    };
    auto nf = alternating_normal_form(B, fd);
    if (nf.rank != d) throw SingularVector("the polar pairing is degenerate");
    std::size_t s = d / 2;
    Fe acc = 0;
    std::vector<Fe> a(d), b(d);
    for (std::size_t t = 0; t < s; ++t) {
        for (std::size_t rr = 0; rr < d; ++rr) {
            a[rr] = nf.P[rr][t];
            b[rr] = nf.P[rr][s + t];
        }
        acc = f_add(acc, f_mul(fd, qf(a), qf(b)));
    }
    if (f_trace(fd, acc) == 0) return 0;
    for (Fe c = 1;; ++c) {
        if (f_trace(fd, c) != 0) return c;
    }
}

std::string GramData::to_json() const {
    nlohmann::json j;
    j["m"] = m;
    j["field"] = {{"k", field.k}};
    j["beta"] = beta;
    j["q"] = qvals;
    if (dvals) j["d"] = *dvals;
    if (deltaval) j["delta"] = *deltaval;
    return j.dump(2);
}

GramData GramData::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    GramData g;
    try {
        g.m = j.at("m").get<unsigned>();
        g.field = make_field(j.at("field").at("k").get<unsigned>());
        g.beta = j.at("beta").get<std::vector<std::vector<Fe>>>();
        g.qvals = j.at("q").get<std::vector<Fe>>();
        if (j.contains("d")) g.dvals = j.at("d").get<std::vector<Fe>>();
        if (j.contains("delta")) g.deltaval = j.at("delta").get<Fe>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad Gram data: ") + e.what());
    }
    validate_gram(g);
    return g;
}

std::string VectorTuple::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["m"] = m;
    j["field"] = {{"k", field.k}};
    j["columns"] = columns;
    return j.dump(2);
}

VectorTuple VectorTuple::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    VectorTuple v;
    try {
        v.n = j.at("n").get<unsigned>();
        v.m = j.at("m").get<unsigned>();
        v.field = make_field(j.at("field").at("k").get<unsigned>());
        v.columns = j.at("columns").get<std::vector<std::vector<Fe>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad tuple data: ") + e.what());
    }
    require_tuple_shape(v);
    return v;
}

}  // namespace oinv
