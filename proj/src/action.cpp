#include "oinv/action.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "oinv/errors.hpp"

namespace oinv {

std::string group_name(GroupId g, unsigned n) {
    switch (g) {
        case GroupId::O: return "O" + std::to_string(n);
        case GroupId::SO: return "SO" + std::to_string(n);
        case GroupId::Sp: return "Sp" + std::to_string(n);
        case GroupId::SL2: return "SL2";
    }
    throw UnsupportedGroup("unknown group id");
}

VariableId coordinate_variable(unsigned r, unsigned n, unsigned i) {
    if (r >= n) throw IndexError("coordinate index out of range");
    if (n % 2 == 1 && r == n - 1) return VariableId::z(i);
    unsigned t = r / 2 + 1;
    return (r % 2 == 0) ? VariableId::x(t, i) : VariableId::y(t, i);
}

Polynomial q_form(unsigned n, const Ring& r, unsigned i) {
    Polynomial q = Polynomial::zero(r);
    for (unsigned t = 1; 2 * t <= n; ++t)
        q += Polynomial::variable(r, VariableId::x(t, i)) *
             Polynomial::variable(r, VariableId::y(t, i));
    if (n % 2 == 1) {
        Polynomial z = Polynomial::variable(r, VariableId::z(i));
        q += z * z;
    }
    return q;
}

Polynomial polar_form(unsigned n, const Ring& r, unsigned i, unsigned j) {
    Polynomial b = Polynomial::zero(r);
    for (unsigned t = 1; 2 * t <= n; ++t) {
        b += Polynomial::variable(r, VariableId::x(t, i)) *
             Polynomial::variable(r, VariableId::y(t, j));
        b += Polynomial::variable(r, VariableId::y(t, i)) *
             Polynomial::variable(r, VariableId::x(t, j));
    }
    if (n % 2 == 1 && r.tag == RingTag::Int) {
        Polynomial zz = Polynomial::variable(r, VariableId::z(i)) *
                        Polynomial::variable(r, VariableId::z(j));
        b += zz.scaled(2);
    }
    return b;
}

GroupAction identity_action(unsigned n, const Ring& r) {
    GroupAction A;
    A.n = n;
    A.entries.assign(size_t(n) * n, Polynomial::zero(r));
    for (unsigned d = 0; d < n; ++d) A.at(d, d) = Polynomial::constant(r, 1);
    A.parity = 0;
    return A;
}

namespace {

// beta(e_r, u): pairs x_t <-> y_t, and the z axis is in the radical.
Fe polar_coefficient(const std::vector<Fe>& u, unsigned r, unsigned n) {
    if (n % 2 == 1 && r == n - 1) return 0;
    return (r % 2 == 0) ? u[r + 1] : u[r - 1];
}

Fe q_value(const std::vector<Fe>& u, unsigned n, const FieldDesc& fd) {
    Fe q = 0;
    for (unsigned t = 0; 2 * t + 1 < n; ++t) q ^= f_mul(fd, u[2 * t], u[2 * t + 1]);
    if (n % 2 == 1) q ^= f_mul(fd, u[n - 1], u[n - 1]);
    return q;
}

} // namespace

GroupAction reflection(const std::vector<Fe>& u, unsigned n, const FieldDesc& fd) {
    if (u.size() != n) throw DimensionMismatch("reflection vector has wrong length");
    Fe qu = q_value(u, n, fd);
    if (qu == 0) throw SingularVector("reflection in a singular vector");
    Fe qinv = f_inv(fd, qu);
    Ring ring = Ring::gf2k(fd);
    GroupAction A = identity_action(n, ring);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned s = 0; s < n; ++s) {
            Fe add = f_mul(fd, u[r], f_mul(fd, polar_coefficient(u, s, n), qinv));
            if (add != 0) A.at(r, s) += Polynomial::constant(ring, Coeff(add));
        }
    A.parity = 1;
    return A;
}

namespace {

Ring action_target_ring(const GroupAction& A, const Polynomial& p) {
    Ring ar = A.ring();
    if (ar.tag == RingTag::GF2K) {
        if (p.ring.tag == RingTag::GF2K && !(p.ring.fd == ar.fd) && p.ring.fd.k != ar.fd.k)
            throw RingMismatch("action and polynomial live over different fields");
        return (p.ring.tag == RingTag::GF2K && p.ring.fd.k > ar.fd.k) ? p.ring : ar;
    }
    return p.ring;
}

} // namespace

Polynomial apply(const GroupAction& A, const Polynomial& p) {
    Ring target = action_target_ring(A, p);
    Polynomial base = p.convert(target);

    std::set<unsigned> indices;
    for (const auto& [m, c] : base.terms)
        for (const auto& [v, e] : m.factors)
            if (v.is_coordinate()) {
                if (v.kind() == VarKind::Z) {
                    if (A.n % 2 == 0) throw DimensionMismatch("z coordinate in even dimension");
                } else if (2 * v.coord() > A.n) {
                    throw DimensionMismatch("coordinate pair index exceeds dimension");
                }
                indices.insert(v.vec());
            }
    if (indices.empty()) return base;

    std::map<VariableId, Polynomial> sub;
    for (unsigned i : indices)
        for (unsigned r = 0; r < A.n; ++r) {
            Polynomial image = Polynomial::zero(target);
            for (unsigned s = 0; s < A.n; ++s) {
                const Polynomial& ent = A.at(r, s);
                if (ent.is_zero()) continue;
                image += ent.convert(target) *
                         Polynomial::variable(target, coordinate_variable(s, A.n, i));
            }
            sub.emplace(coordinate_variable(r, A.n, i), std::move(image));
        }
    return base.substitute(sub);
}

bool is_orthogonal(const GroupAction& A) {
    Ring r = A.ring();
    Polynomial q = q_form(A.n, r, 1);
    return apply(A, q) == q;
}

bool is_symplectic(const GroupAction& A) {
    Ring r = A.ring();
    Polynomial b = polar_form(A.n, r, 1, 2);
    return apply(A, b) == b;
}

GroupAction compose(const GroupAction& g, const GroupAction& h) {
    if (g.n != h.n) throw DimensionMismatch("composing actions of different dimension");
    Ring gr = g.ring(), hr = h.ring();
    Ring target = gr;
    if (hr.tag == RingTag::GF2K && (gr.tag != RingTag::GF2K || hr.fd.k > gr.fd.k)) target = hr;
    if (gr.tag == RingTag::Int || hr.tag == RingTag::Int) target = Ring::integers();

    unsigned n = g.n;
    GroupAction out;
    out.n = n;
    out.entries.assign(size_t(n) * n, Polynomial::zero(target));
    for (unsigned r = 0; r < n; ++r)
        for (unsigned s = 0; s < n; ++s) {
            Polynomial acc = Polynomial::zero(target);
            for (unsigned t = 0; t < n; ++t) {
                const Polynomial& a = h.at(r, t);
                const Polynomial& b = g.at(t, s);
                if (a.is_zero() || b.is_zero()) continue;
                acc += a.convert(target) * b.convert(target);
            }
            out.at(r, s) = std::move(acc);
        }
    if (g.parity && h.parity) out.parity = (*g.parity + *h.parity) % 2;
    return out;
}

GroupAction random_element(GroupId g, unsigned n, const FieldDesc& fd, unsigned r,
                           std::mt19937_64& rng) {
    if (g == GroupId::SO && r % 2 == 1) ++r;
    GroupAction acc = identity_action(n, Ring::gf2k(fd));
    for (unsigned i = 0; i < r; ++i) {
        std::vector<Fe> u(n);
        do {
            for (auto& c : u) c = f_random(fd, rng);
        } while (q_value(u, n, fd) == 0);
        acc = compose(acc, reflection(u, n, fd));
    }
    return acc;
}

std::vector<Fe> action_matrix(const GroupAction& A, const FieldDesc& fd) {
    std::vector<Fe> M(size_t(A.n) * A.n, 0);
    for (unsigned r = 0; r < A.n; ++r)
        for (unsigned s = 0; s < A.n; ++s) {
            const Polynomial& e = A.at(r, s);
            if (e.is_zero()) continue;
            M[r * A.n + s] = e.evaluate(fd, [](VariableId v) -> Fe {
                throw ShapeError("non-constant entry in concrete action: " + v.str());
            });
        }
    return M;
}

std::vector<Fe> matrix_apply(const std::vector<Fe>& M, unsigned n, const std::vector<Fe>& w,
                             const FieldDesc& fd) {
    std::vector<Fe> out(n, 0);
    for (unsigned r = 0; r < n; ++r) {
        Fe acc = 0;
        for (unsigned s = 0; s < n; ++s) acc ^= f_mul(fd, M[r * n + s], w[s]);
        out[r] = acc;
    }
    return out;
}

} // namespace oinv
