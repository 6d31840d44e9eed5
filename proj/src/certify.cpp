#include "oinv/certify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oinv/errors.hpp"

namespace oinv {

CompiledPoly CompiledPoly::compile(const Polynomial& p, const FieldDesc& fd) {
    Polynomial q = p.convert(Ring::gf2k(fd));
    std::map<VariableId, uint32_t> slot_of;
    CompiledPoly cp;
    for (const auto& [m, c] : q.terms)
        for (const auto& [v, e] : m.factors)
            if (!slot_of.count(v)) {
                slot_of.emplace(v, uint32_t(cp.slots.size()));
                cp.slots.push_back(v);
            }
    for (const auto& [m, c] : q.sorted_terms()) {
        CTerm t;
        t.c = Fe(c.convert_to<uint32_t>());
        for (const auto& [v, e] : m.factors) t.pows.emplace_back(slot_of.at(v), e);
        cp.terms.push_back(std::move(t));
    }
    return cp;
}

Fe CompiledPoly::eval(const FieldDesc& fd, const std::vector<Fe>& values) const {
    Fe acc = 0;
    for (const CTerm& t : terms) {
        Fe prod = t.c;
        for (const auto& [s, e] : t.pows) {
            if (prod == 0) break;
            prod = f_mul(fd, prod, f_pow(fd, values[s], e));
        }
        acc ^= prod;
    }
    return acc;
}

std::string Certificate::to_json() const {
    nlohmann::json j;
    j["status"] = pass ? "pass" : "fail";
    j["mode"] = mode;
    j["group"] = group;
    j["generators_checked"] = generators_checked;
    j["seed"] = seed;
    j["elements"] = elements;
    j["points"] = points;
    if (witness) j["witness"] = *witness;
    return j.dump(2);
}

namespace {

Polynomial poly_diff(const Polynomial& a, const Polynomial& b) {
    if (a.ring.tag == RingTag::Int) return a + b.scaled(Coeff(-1));
    return a + b;
}

Certificate symbolic_check(const Polynomial& p, const GeneratorFamily& fam) {
    Certificate cert;
    cert.mode = "symbolic";
    cert.group = fam.name;
    cert.pass = true;

    for (const auto& [m, c] : p.sorted_terms()) {
        if (!weight_rule_holds(m, fam.nu)) {
            cert.pass = false;
            cert.witness = "torus weight rule fails on monomial " + m.str();
            return cert;
        }
    }

    std::vector<std::pair<const GroupAction*, std::string>> gens;
    for (size_t i = 0; i < fam.unipotents.size(); ++i)
        gens.emplace_back(&fam.unipotents[i], "unipotent generator #" + std::to_string(i));
    GroupAction sw;
    if (fam.swap_check) {
        sw = swap_x1y1(fam.n, Ring::gf2());
        gens.emplace_back(&sw, "coordinate swap x1 <-> y1");
    }

    for (const auto& [A, label] : gens) {
        Polynomial moved = apply(*A, p);
        Polynomial diff = poly_diff(moved, p.convert(moved.ring));
        ++cert.generators_checked;
        if (!diff.is_zero()) {
            cert.pass = false;
            auto ts = diff.sorted_terms();
            cert.witness = label + " moves the polynomial; difference leads with " +
                           ts.front().first.str();
            return cert;
        }
    }
    return cert;
}

// Concrete sample from a symplectic family: product of unipotents with random
// parameter values and torus scalings diag(a, a^{-1}) in random pairs.
std::vector<Fe> sample_symplectic_matrix(const GeneratorFamily& fam, const FieldDesc& fd,
                                         std::mt19937_64& rng) {
    unsigned n = fam.n;
    GroupAction acc = identity_action(n, Ring::gf2k(fd));
    std::uniform_int_distribution<size_t> pick(0, fam.unipotents.size());
    for (unsigned step = 0; step < 8; ++step) {
        size_t idx = pick(rng);
        if (idx == fam.unipotents.size()) {
            Fe a = 0;
            while (a == 0) a = f_random(fd, rng);
            GroupAction torus = identity_action(n, Ring::gf2k(fd));
            unsigned t = unsigned(rng() % fam.nu) + 1;
            torus.at(2 * (t - 1), 2 * (t - 1)) = Polynomial::constant(torus.ring(), Coeff(a));
            torus.at(2 * (t - 1) + 1, 2 * (t - 1) + 1) =
                Polynomial::constant(torus.ring(), Coeff(f_inv(fd, a)));
            acc = compose(acc, torus);
            continue;
        }
        Fe c = f_random(fd, rng);
        const GroupAction& u = fam.unipotents[idx];
        GroupAction conc = identity_action(n, Ring::gf2k(fd));
        for (unsigned r = 0; r < n; ++r)
            for (unsigned s = 0; s < n; ++s) {
                const Polynomial& e = u.at(r, s);
                if (e.is_zero()) continue;
                Fe val = e.convert(Ring::gf2k(fd)).evaluate(fd, [&](VariableId v) -> Fe {
                    if (!v.is_param()) throw ShapeError("unexpected variable " + v.str());
                    return c;
                });
                conc.at(r, s) = Polynomial::constant(conc.ring(), Coeff(val));
            }
        acc = compose(acc, conc);
    }
    return action_matrix(acc, fd);
}

Certificate randomized_check(const Polynomial& p, GroupId g, unsigned n,
                             const CheckOptions& opt) {
    Certificate cert;
    cert.mode = "randomized";
    cert.group = group_name(g, n);
    cert.seed = opt.seed;
    cert.elements = opt.elements;
    cert.points = opt.points;
    cert.pass = true;

    FieldDesc fd = make_field(opt.k);
    Polynomial pc = p.convert(Ring::gf2k(fd));

    std::set<unsigned> indices;
    for (const auto& [m, c] : pc.terms)
        for (const auto& [v, e] : m.factors) {
            if (v.is_param() || v.is_abstract())
                throw ShapeError("randomized check needs a coordinate polynomial, got " +
                                 v.str());
            if (v.kind() == VarKind::Z) {
                if (n % 2 == 0) throw DimensionMismatch("z coordinate in even dimension");
            } else if (2 * v.coord() > n) {
                throw DimensionMismatch("coordinate pair index exceeds dimension");
            }
            indices.insert(v.vec());
        }

    CompiledPoly cp = CompiledPoly::compile(pc, fd);
    std::mt19937_64 rng(opt.seed);

    std::optional<GeneratorFamily> sp_fam;
    if (g == GroupId::Sp || g == GroupId::SL2) sp_fam = generator_family(g, n);

    std::vector<Fe> base(cp.slots.size()), moved(cp.slots.size());
    for (unsigned e = 0; e < opt.elements; ++e) {
        std::vector<Fe> M;
        if (sp_fam) {
            M = sample_symplectic_matrix(*sp_fam, fd, rng);
        } else {
            unsigned r = unsigned(rng() % opt.reflections) + 1;
            M = action_matrix(random_element(g, n, fd, r, rng), fd);
        }
        ++cert.generators_checked;
        for (unsigned pt = 0; pt < opt.points; ++pt) {
            std::map<unsigned, std::vector<Fe>> w;
            for (unsigned i : indices) {
                auto& col = w[i];
                col.resize(n);
                for (auto& v : col) v = f_random(fd, rng);
            }
            for (size_t s = 0; s < cp.slots.size(); ++s) {
                VariableId v = cp.slots[s];
                unsigned r = (v.kind() == VarKind::Z) ? n - 1
                             : 2 * (v.coord() - 1) + (v.kind() == VarKind::Y ? 1 : 0);
                base[s] = w.at(v.vec())[r];
            }
            for (unsigned i : indices) w[i] = matrix_apply(M, n, w[i], fd);
            for (size_t s = 0; s < cp.slots.size(); ++s) {
                VariableId v = cp.slots[s];
                unsigned r = (v.kind() == VarKind::Z) ? n - 1
                             : 2 * (v.coord() - 1) + (v.kind() == VarKind::Y ? 1 : 0);
                moved[s] = w.at(v.vec())[r];
            }
            Fe before = cp.eval(fd, base);
            Fe after = cp.eval(fd, moved);
            if (before != after) {
                cert.pass = false;
                std::ostringstream os;
                os << "element " << e << ", point " << pt << ": value " << before
                   << " moves to " << after << " (seed " << opt.seed << ", k=" << opt.k
                   << ")";
                cert.witness = os.str();
                return cert;
            }
        }
    }
    return cert;
}

} // namespace

Certificate invariance_check(const Polynomial& p, GroupId g, unsigned n,
                             const CheckOptions& opt) {
    CheckMode mode = opt.mode;
    if (mode == CheckMode::Auto)
        mode = has_symbolic_family(g, n) ? CheckMode::Symbolic : CheckMode::Randomized;
    if (mode == CheckMode::Symbolic) return symbolic_check(p, generator_family(g, n));
    return randomized_check(p, g, n, opt);
}

} // namespace oinv
