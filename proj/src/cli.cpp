#include <oinv/cli.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <oinv/certify.hpp>
#include <oinv/errors.hpp>
#include <oinv/invariants.hpp>
#include <oinv/invspace.hpp>
#include <oinv/witt.hpp>

namespace oinv {

namespace {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::pair<GroupId, unsigned> parse_group(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
    std::string head = s.substr(0, i);
    for (auto& c : head) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    unsigned n = 0;
    if (i < s.size()) {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(s.substr(i), &used);
            if (i + used != s.size()) throw std::invalid_argument("trailing");
            n = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw UsageError("cannot read a dimension in group '" + s + "'");
        }
    }
    if (head == "O") return {GroupId::O, n};
    if (head == "SO") return {GroupId::SO, n};
    if (head == "SP") return {GroupId::Sp, n};
    if (head == "SL") {
        if (n != 0 && n != 2) throw UsageError("only SL2 is supported");
        return {GroupId::SL2, 2};
    }
    throw UsageError("unknown group '" + s + "'");
}

std::string group_label(GroupId g, unsigned n) {
    switch (g) {
        case GroupId::O: return "O" + std::to_string(n);
        case GroupId::SO: return "SO" + std::to_string(n);
        case GroupId::Sp: return "Sp" + std::to_string(n);
        default: return "SL2";
    }
}

CheckMode parse_mode(const std::string& s) {
    if (s == "auto") return CheckMode::Auto;
    if (s == "symbolic") return CheckMode::Symbolic;
    if (s == "randomized") return CheckMode::Randomized;
    throw UsageError("unknown mode '" + s + "' (expected auto, symbolic or randomized)");
}

Ring parse_ring_name(const std::string& s) {
    if (s == "gf2") return Ring::gf2();
    if (s == "int") return Ring::integers();
    throw UsageError("unknown ring '" + s + "' (expected gf2 or int)");
}

std::string ring_label(const Ring& r) {
    switch (r.tag) {
        case RingTag::GF2: return "GF(2)";
        case RingTag::GF2K: return "GF(2^" + std::to_string(r.fd.k) + ")";
        default: return "Int";
    }
}

Multidegree parse_alpha(const std::string& s) {
    Multidegree md;
    std::stringstream ss(s);
    std::string item;
    unsigned idx = 1;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument("trailing");
            if (v != 0) md[idx] = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw UsageError("cannot read multidegree entry '" + item + "'");
        }
        ++idx;
    }
    if (idx == 1) throw UsageError("empty multidegree");
    return md;
}

std::string slurp(std::istream& s) {
    std::stringstream buf;
    buf << s.rdbuf();
    return buf.str();
}

std::string read_source(const std::string& spec, std::istream& in) {
    if (spec == "-") return slurp(in);
    std::ifstream f(spec);
    if (!f) throw UsageError("cannot read file '" + spec + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// Polynomial from an invariant name or, for "-", from the input stream.
Polynomial input_poly(const std::string& name, unsigned ambient, const Ring& ring,
                      std::istream& in) {
    if (name == "-") return Polynomial::parse(slurp(in), ring);
    return InvariantId::parse(name).realize(ambient);
}

nlohmann::json alpha_json(const Multidegree& md) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [i, d] : md) arr.push_back({i, d});
    return arr;
}

int cmd_gen(const std::string& name, unsigned n, bool json, std::ostream& out) {
    InvariantId id = InvariantId::parse(name);
    Polynomial p = id.realize(n);
    if (json) {
        nlohmann::json j;
        j["name"] = id.str();
        j["ring"] = ring_label(p.ring);
        j["terms"] = p.term_count();
        j["poly"] = p.str();
        out << j.dump(2) << "\n";
    } else {
        out << p.str() << "\n";
    }
    return 0;
}

int cmd_check(const std::string& name, const std::string& group, const std::string& ring,
              const CheckOptions& opt, bool json, std::istream& in, std::ostream& out) {
    auto [gid, gn] = parse_group(group);
    if (gn == 0) throw UsageError("group '" + group + "' needs a dimension, e.g. O4");
    Polynomial p = input_poly(name, gn, parse_ring_name(ring), in);
    Certificate cert = invariance_check(p, gid, gn, opt);
    if (json) {
        out << cert.to_json() << "\n";
    } else {
        out << (cert.pass ? "pass" : "fail") << " (mode=" << cert.mode << ", group=" << cert.group;
        if (cert.mode == "symbolic") {
            out << ", generators=" << cert.generators_checked;
        } else {
            out << ", elements=" << cert.elements << ", points=" << cert.points;
        }
        out << ")\n";
        if (cert.witness) out << "witness: " << *cert.witness << "\n";
    }
    return cert.pass ? 0 : 1;
}

int cmd_space(const std::string& group, const std::string& alpha, const SpaceOptions& opt,
              bool json, std::ostream& out) {
    auto [gid, gn] = parse_group(group);
    if (gn == 0) throw UsageError("group '" + group + "' needs a dimension, e.g. O2");
    Multidegree md = parse_alpha(alpha);
    InvariantSpace sp = invariant_space(gn, gid, md, opt);
    if (json) {
        nlohmann::json j;
        j["group"] = group_label(gid, gn);
        j["n"] = gn;
        j["alpha"] = alpha_json(md);
        j["dim"] = sp.dim();
        j["provenance"] = sp.provenance;
        j["columns"] = sp.system.columns.size();
        j["constraint_rows"] = sp.system.constraint_rows;
        j["rank"] = sp.system.rank;
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& b : sp.basis) basis.push_back(b.str());
        j["basis"] = basis;
        out << j.dump(2) << "\n";
    } else {
        out << "dim " << sp.dim() << " (" << sp.provenance << ")\n";
        for (const auto& b : sp.basis) out << b.str() << "\n";
    }
    return 0;
}

int cmd_decompose(const std::string& name, const std::string& group, const std::string& ring,
                  const SpaceOptions& opt, bool json, std::istream& in, std::ostream& out) {
    auto [gid, gn] = parse_group(group);
    if (gn == 0) throw UsageError("group '" + group + "' needs a dimension, e.g. O2");
    Polynomial p = input_poly(name, gn, parse_ring_name(ring), in);
    DecompositionResult res = is_decomposable(p, gid, gn, opt);
    if (json) {
        nlohmann::json j;
        j["decomposable"] = res.decomposable;
        j["certificate"] = res.certificate;
        if (res.decomposable) {
            nlohmann::json prods = nlohmann::json::array();
            for (const auto& [a, b] : res.products) prods.push_back({a.str(), b.str()});
            j["products"] = prods;
            j["combination"] = res.combination.str();
        } else if (res.separating_monomial) {
            j["separating_monomial"] = res.separating_monomial->str();
        }
        out << j.dump(2) << "\n";
    } else {
        out << (res.decomposable ? "decomposable" : "indecomposable") << "\n";
        out << res.certificate << "\n";
    }
    return 0;
}

int cmd_relations(unsigned n, bool json, std::ostream& out) {
    if (n < 2) throw UsageError("--n must be at least 2");
    nlohmann::json checks = nlohmann::json::array();
    bool all = true;
    std::ostringstream text;
    if (n % 2 == 1) {
        bool g_ok = verify_g_relation(n);
        bool even_ok = true;
        for (const auto& [m, c] : gram_det(n).terms) {
            (void)m;
            if (c % 2 != 0) even_ok = false;
        }
        all = g_ok && even_ok;
        checks.push_back({{"name", "g_relation_zero"}, {"pass", g_ok}});
        checks.push_back({{"name", "gram_det_coefficients_even"}, {"pass", even_ok}});
        text << "G-relation: " << (g_ok ? "0 (verified over Int and GF(2))" : "FAILED") << "\n";
        text << "gram determinant coefficients: " << (even_ok ? "all even" : "FAILED") << "\n";
    } else {
        bool gamma_ok = verify_gamma_relation(n);
        bool l_ok = true;
        for (const auto& [m, c] : gamma_relation(n).L.terms) {
            (void)m;
            if (c % 4 != 0) l_ok = false;
        }
        all = gamma_ok && l_ok;
        checks.push_back({{"name", "gamma_relation_zero"}, {"pass", gamma_ok}});
        checks.push_back({{"name", "L_coefficients_divisible_by_4"}, {"pass", l_ok}});
        text << "Gamma-relation: " << (gamma_ok ? "0 (verified over Int)" : "FAILED") << "\n";
        text << "L coefficients: " << (l_ok ? "all divisible by 4" : "FAILED") << "\n";
    }
    if (json) {
        nlohmann::json j;
        j["n"] = n;
        j["pass"] = all;
        j["checks"] = checks;
        out << j.dump(2) << "\n";
    } else {
        out << text.str();
    }
    return all ? 0 : 1;
}

int cmd_rewrite(const std::string& source, const std::string& target, unsigned n, unsigned nu,
                std::size_t cap, bool json, std::istream& in, std::ostream& out) {
    std::string text = source == "-" ? slurp(in) : source;
    Polynomial p = Polynomial::parse(text, Ring::gf2());
    Polynomial res(Ring::gf2());
    if (target == "qb") {
        if (n == 0) throw UsageError("--target qb needs --n");
        res = express_QB(p, n, cap);
    } else if (target == "b") {
        if (nu == 0) throw UsageError("--target b needs --nu");
        auto r = express_in_B(p, nu, cap);
        if (!r) throw NotInvariant("input is not invariant under Sp(" + std::to_string(2 * nu) +
                                   ")");
        res = *r;
    } else {
        throw UsageError("unknown target '" + target + "' (expected qb or b)");
    }
    if (json) {
        nlohmann::json j;
        j["target"] = target;
        j["result"] = res.str();
        j["terms"] = res.term_count();
        out << j.dump(2) << "\n";
    } else {
        out << res.str() << "\n";
    }
    return 0;
}

int cmd_realize(const std::string& gram, unsigned n, std::uint64_t seed, bool json,
                std::istream& in, std::ostream& out) {
    if (n == 0) throw UsageError("realize needs --n");
    GramData g = GramData::from_json(read_source(gram, in));
    VectorTuple v = realize_gram(g, n, seed);
    if (json) {
        nlohmann::json j;
        j["extended"] = v.extended;
        j["tuple"] = nlohmann::json::parse(v.to_json());
        out << j.dump(2) << "\n";
    } else {
        for (unsigned i = 0; i < v.m; ++i) {
            out << "v" << (i + 1) << " =";
            for (Fe x : v.columns[i]) out << " " << x;
            out << "\n";
        }
        out << "field: GF(2^" << v.field.k << ")\n";
        out << "extended: " << (v.extended ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_orbit(const std::string& a, const std::string& b, const std::string& group, bool json,
              std::istream& in, std::ostream& out) {
    if (a == "-" && b == "-") throw UsageError("only one tuple may come from the input stream");
    auto [gid, gn] = parse_group(group);
    VectorTuple va = VectorTuple::from_json(read_source(a, in));
    VectorTuple vb = VectorTuple::from_json(read_source(b, in));
    if (gn != 0 && gn != va.n) {
        throw UsageError("group dimension " + std::to_string(gn) +
                         " does not match the tuples (n=" + std::to_string(va.n) + ")");
    }
    OrbitVerdict verdict = same_orbit_generic(va, vb, gid);
    if (json) {
        nlohmann::json j;
        j["verdict"] = verdict_name(verdict);
        j["n"] = va.n;
        j["m"] = va.m;
        out << j.dump(2) << "\n";
    } else {
        out << verdict_name(verdict) << "\n";
    }
    return 0;
}

int cmd_nullcone(const std::string& name, const std::string& tuple, unsigned trials,
                 unsigned ambient, unsigned k, std::uint64_t seed, bool json, std::istream& in,
                 std::ostream& out) {
    if (!tuple.empty()) {
        VectorTuple v = VectorTuple::from_json(read_source(tuple, in));
        bool member = null_cone_test(v);
        if (json) {
            nlohmann::json j;
            j["member"] = member;
            j["n"] = v.n;
            j["m"] = v.m;
            out << j.dump(2) << "\n";
        } else {
            out << (member ? "member" : "not member") << "\n";
        }
        return 0;
    }
    if (name.empty()) throw UsageError("nullcone needs an invariant name or --tuple");
    InvariantId id = InvariantId::parse(name);
    Certificate cert = null_cone_vanishing(id, ambient, trials, k, seed);
    if (json) {
        out << cert.to_json() << "\n";
    } else {
        out << (cert.pass ? "pass" : "fail") << " (" << cert.group << ", trials=" << cert.points
            << ")\n";
        if (cert.witness) out << "witness: " << *cert.witness << "\n";
    }
    return cert.pass ? 0 : 1;
}

int cmd_jacobian(unsigned n, unsigned m, unsigned k, bool json, std::ostream& out) {
    auto coords = field_coordinates(n, m);
    std::vector<Polynomial> polys;
    nlohmann::json names = nlohmann::json::array();
    for (const auto& [name, p] : coords) {
        polys.push_back(p);
        names.push_back(name);
    }
    std::size_t rank = jacobian_rank(polys, standard_point(n, m), n, make_field(k));
    bool full = rank == coords.size();
    if (json) {
        nlohmann::json j;
        j["n"] = n;
        j["m"] = m;
        j["coordinates"] = coords.size();
        j["rank"] = rank;
        j["full_rank"] = full;
        j["names"] = names;
        out << j.dump(2) << "\n";
    } else {
        out << "coordinates: " << coords.size() << "\n";
        out << "rank: " << rank << "\n";
        out << "full rank: " << (full ? "yes" : "no") << "\n";
    }
    return full ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"exact vector invariants of orthogonal groups in characteristic 2"};
    app.name("inv");
    app.require_subcommand(1);

    std::string name, group = "O2", ring = "gf2", mode = "auto", alpha, target = "qb";
    std::string gram = "-", tuple_a, tuple_b, tuple;
    unsigned n = 0, m = 0, nu = 0, k = 8, elements = 0, points = 64, reflections = 6;
    unsigned trials = 100, ambient = 0;
    std::uint64_t seed = 0;
    std::size_t cap = std::size_t(1) << 22;
    bool json = false;

    auto* gen = app.add_subcommand("gen", "emit an invariant in the text format");
    gen->add_option("name", name, "invariant name, e.g. Q:1 or FEVEN:nu=2,t=2")->required();
    gen->add_option("--n", n, "ambient dimension for Q/B/D");
    gen->add_flag("--json", json, "JSON output");

    auto* check = app.add_subcommand("check", "invariance certificate for a polynomial");
    check->add_option("name", name, "invariant name, or - to read a polynomial")->required();
    check->add_option("--group", group, "group with dimension, e.g. O4")->required();
    check->add_option("--ring", ring, "ring for a polynomial read from input (gf2|int)");
    check->add_option("--mode", mode, "auto|symbolic|randomized");
    check->add_option("--k", k, "field degree for randomized checks");
    check->add_option("--seed", seed, "random seed");
    check->add_option("--elements", elements, "sampled group elements");
    check->add_option("--points", points, "sampled evaluation points");
    check->add_option("--reflections", reflections, "max reflections per element");
    check->add_flag("--json", json, "JSON output");

    auto* space = app.add_subcommand("space", "basis of a multihomogeneous invariant space");
    space->add_option("--group", group, "group with dimension, e.g. O2")->required();
    space->add_option("--alpha", alpha, "multidegree, e.g. 1,1,2")->required();
    space->add_option("--mode", mode, "auto|symbolic|randomized");
    space->add_option("--k", k, "field degree for randomized mode");
    space->add_option("--seed", seed, "random seed");
    space->add_option("--elements", elements, "sampled group elements");
    space->add_option("--cap", cap, "component size cap");
    space->add_flag("--json", json, "JSON output");

    auto* dec = app.add_subcommand("decompose", "decide decomposability of an invariant");
    dec->add_option("name", name, "invariant name, or - to read a polynomial")->required();
    dec->add_option("--group", group, "group with dimension, e.g. O2")->required();
    dec->add_option("--ring", ring, "ring for a polynomial read from input (gf2|int)");
    dec->add_option("--mode", mode, "auto|symbolic|randomized");
    dec->add_option("--k", k, "field degree for randomized mode");
    dec->add_option("--seed", seed, "random seed");
    dec->add_option("--cap", cap, "component size cap");
    dec->add_flag("--json", json, "JSON output");

    auto* rel = app.add_subcommand("relations", "verify the determinant relations");
    rel->add_option("--n", n, "dimension")->required();
    rel->add_flag("--json", json, "JSON output");

    auto* rew = app.add_subcommand("rewrite", "rewrite an invariant in Q,B variables");
    rew->add_option("poly", name, "polynomial text, or - to read it")->required();
    rew->add_option("--target", target, "qb (odd n) or b (symplectic)");
    rew->add_option("--n", n, "odd ambient dimension for --target qb");
    rew->add_option("--nu", nu, "half dimension for --target b");
    rew->add_option("--cap", cap, "component size cap");
    rew->add_flag("--json", json, "JSON output");

    auto* rea = app.add_subcommand("realize", "vectors with prescribed Gram data");
    rea->add_option("--gram", gram, "Gram data JSON file, or - for the input stream");
    rea->add_option("--n", n, "ambient dimension")->required();
    rea->add_option("--seed", seed, "random seed");
    rea->add_flag("--json", json, "JSON output");

    auto* orb = app.add_subcommand("orbit", "compare two tuples on the generic locus");
    orb->add_option("--a", tuple_a, "first tuple JSON file, or -")->required();
    orb->add_option("--b", tuple_b, "second tuple JSON file, or -")->required();
    orb->add_option("--group", group, "O or SO, optionally with dimension")->required();
    orb->add_flag("--json", json, "JSON output");

    auto* nc = app.add_subcommand("nullcone", "null-cone membership and vanishing");
    nc->add_option("name", name, "invariant whose vanishing to certify");
    nc->add_option("--tuple", tuple, "tuple JSON file, or -, for a membership test");
    nc->add_option("--trials", trials, "random totally singular tuples");
    nc->add_option("--ambient", ambient, "ambient dimension for Q/B/D names");
    nc->add_option("--k", k, "field degree");
    nc->add_option("--seed", seed, "random seed");
    nc->add_flag("--json", json, "JSON output");

    auto* jac = app.add_subcommand("jacobian", "rank of the separating map at the standard point");
    jac->add_option("--n", n, "ambient dimension")->required();
    jac->add_option("--m", m, "number of vectors")->required();
    jac->add_option("--k", k, "field degree");
    jac->add_flag("--json", json, "JSON output");

    std::vector<const char*> argv;
    argv.push_back("inv");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        CheckOptions copt;
        copt.k = k;
        copt.seed = seed;
        if (elements != 0) copt.elements = elements;
        copt.points = points;
        copt.reflections = reflections;
        copt.mode = parse_mode(mode);
        SpaceOptions sopt;
        sopt.cap = cap;
        sopt.mode = parse_mode(mode);
        sopt.k = k;
        sopt.seed = seed;
        if (elements != 0) sopt.elements = elements;
        sopt.reflections = reflections;

        if (app.got_subcommand(gen)) return cmd_gen(name, n, json, out);
        if (app.got_subcommand(check)) return cmd_check(name, group, ring, copt, json, in, out);
        if (app.got_subcommand(space)) return cmd_space(group, alpha, sopt, json, out);
        if (app.got_subcommand(dec)) return cmd_decompose(name, group, ring, sopt, json, in, out);
        if (app.got_subcommand(rel)) return cmd_relations(n, json, out);
        if (app.got_subcommand(rew)) return cmd_rewrite(name, target, n, nu, cap, json, in, out);
        if (app.got_subcommand(rea)) return cmd_realize(gram, n, seed, json, in, out);
        if (app.got_subcommand(orb)) return cmd_orbit(tuple_a, tuple_b, group, json, in, out);
        if (app.got_subcommand(nc)) {
            return cmd_nullcone(name, tuple, trials, ambient, k, seed, json, in, out);
        }
        if (app.got_subcommand(jac)) return cmd_jacobian(n, m, k, json, out);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const OddZError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotInvariant& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotDivisible& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const SingularVector& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace oinv
