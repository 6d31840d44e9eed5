#include "oinv/generators.hpp"

#include <map>

#include "oinv/errors.hpp"

namespace oinv {

namespace {

unsigned cx(unsigned t) { return 2 * (t - 1); }
unsigned cy(unsigned t) { return 2 * (t - 1) + 1; }

struct EntryAdd {
    unsigned r, s, cexp;
};

GroupAction unipotent(unsigned n, std::initializer_list<EntryAdd> adds) {
    Ring ring = Ring::gf2();
    GroupAction A = identity_action(n, ring);
    Polynomial c = Polynomial::variable(ring, VariableId::param(0));
    for (const EntryAdd& a : adds) A.at(a.r, a.s) += c.pow(a.cexp);
    A.parity.reset();
    return A;
}

} // namespace

bool has_symbolic_family(GroupId g, unsigned n) {
    switch (g) {
        case GroupId::O: return n % 2 == 0 || n == 3;
        case GroupId::SO: return n == 2 || n == 3 || n == 4;
        case GroupId::Sp: return n >= 2 && n % 2 == 0;
        case GroupId::SL2: return n == 2;
    }
    return false;
}

GeneratorFamily generator_family(GroupId g, unsigned n) {
    if (!has_symbolic_family(g, n))
        throw UnsupportedGroup("no symbolic generator family for " + group_name(g, n));

    GeneratorFamily fam;
    fam.group = g;
    fam.n = n;
    fam.nu = n / 2;
    fam.name = group_name(g, n);

    if (g == GroupId::O && n % 2 == 0) {
        for (unsigned i = 1; i <= fam.nu; ++i)
            for (unsigned j = 1; j <= fam.nu; ++j) {
                if (i == j) continue;
                fam.unipotents.push_back(
                    unipotent(n, {{cx(i), cx(j), 1}, {cy(j), cy(i), 1}}));
            }
        fam.swap_check = true;
        return fam;
    }

    if (n == 3) {
        // Conjugation image of SL(2); in characteristic 2 this is all of O(3).
        fam.unipotents.push_back(unipotent(3, {{cx(1), cy(1), 2}, {2, cy(1), 1}}));
        fam.unipotents.push_back(unipotent(3, {{cy(1), cx(1), 2}, {2, cx(1), 1}}));
        return fam;
    }

    if (g == GroupId::SO && n == 2) return fam;

    if (g == GroupId::SO && n == 4) {
        fam.unipotents.push_back(unipotent(4, {{cx(1), cy(2), 1}, {cx(2), cy(1), 1}}));
        fam.unipotents.push_back(unipotent(4, {{cy(2), cx(1), 1}, {cy(1), cx(2), 1}}));
        fam.unipotents.push_back(unipotent(4, {{cx(2), cx(1), 1}, {cy(1), cy(2), 1}}));
        fam.unipotents.push_back(unipotent(4, {{cx(1), cx(2), 1}, {cy(2), cy(1), 1}}));
        return fam;
    }

    if (g == GroupId::Sp || g == GroupId::SL2) {
        for (unsigned i = 1; i <= fam.nu; ++i)
            for (unsigned j = 1; j <= fam.nu; ++j) {
                if (i == j) continue;
                fam.unipotents.push_back(
                    unipotent(n, {{cx(i), cx(j), 1}, {cy(j), cy(i), 1}}));
            }
        for (unsigned t = 1; t <= fam.nu; ++t) {
            fam.unipotents.push_back(unipotent(n, {{cx(t), cy(t), 1}}));
            fam.unipotents.push_back(unipotent(n, {{cy(t), cx(t), 1}}));
        }
        for (unsigned s = 1; s <= fam.nu; ++s)
            for (unsigned t = s + 1; t <= fam.nu; ++t) {
                fam.unipotents.push_back(
                    unipotent(n, {{cx(s), cy(t), 1}, {cx(t), cy(s), 1}}));
                fam.unipotents.push_back(
                    unipotent(n, {{cy(s), cx(t), 1}, {cy(t), cx(s), 1}}));
            }
        return fam;
    }

    throw UnsupportedGroup("no symbolic generator family for " + fam.name);
}

GroupAction swap_x1y1(unsigned n, const Ring& r) {
    GroupAction A = identity_action(n, r);
    A.at(0, 0) = Polynomial::zero(r);
    A.at(1, 1) = Polynomial::zero(r);
    A.at(0, 1) = Polynomial::constant(r, 1);
    A.at(1, 0) = Polynomial::constant(r, 1);
    A.parity = 1;
    return A;
}

bool weight_rule_holds(const Monomial& m, unsigned nu) {
    std::map<unsigned, long> diff;
    for (const auto& [v, e] : m.factors) {
        if (!v.is_coordinate()) continue;
        if (v.kind() == VarKind::X)
            diff[v.coord()] += long(e);
        else if (v.kind() == VarKind::Y)
            diff[v.coord()] -= long(e);
    }
    for (const auto& [t, d] : diff) {
        if (t > nu && d != 0) return false;
        if (d != 0) return false;
    }
    return true;
}

} // namespace oinv
