#include "oinv/poly.hpp"

#include <algorithm>
#include <cctype>

namespace oinv {

std::string Ring::str() const {
    switch (tag) {
    case RingTag::GF2:
        return "GF2";
    case RingTag::GF2K:
        return "GF2^" + std::to_string(fd.k);
    case RingTag::Int:
        return "Int";
    }
    return "?";
}

/* ---- monomials ---- */

Monomial Monomial::var(VariableId v, uint32_t e) {
    Monomial m;
    if (e > 0)
        m.factors.emplace_back(v, e);
    return m;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial r;
    r.factors.reserve(factors.size() + o.factors.size());
    size_t i = 0, j = 0;
    while (i < factors.size() && j < o.factors.size()) {
        if (factors[i].first < o.factors[j].first)
            r.factors.push_back(factors[i++]);
        else if (o.factors[j].first < factors[i].first)
            r.factors.push_back(o.factors[j++]);
        else {
            r.factors.emplace_back(factors[i].first, factors[i].second + o.factors[j].second);
            ++i, ++j;
        }
    }
    while (i < factors.size())
        r.factors.push_back(factors[i++]);
    while (j < o.factors.size())
        r.factors.push_back(o.factors[j++]);
    return r;
}

uint32_t Monomial::exponent(VariableId v) const {
    for (const auto& [w, e] : factors)
        if (w == v)
            return e;
    return 0;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [v, e] : factors)
        d += e;
    return d;
}

std::string Monomial::str() const {
    if (factors.empty())
        return "1";
    std::string s;
    for (const auto& [v, e] : factors) {
        if (!s.empty())
            s += "*";
        s += v.str();
        if (e >= 2)
            s += "^" + std::to_string(e);
    }
    return s;
}

bool term_order_before(const Monomial& a, const Monomial& b) {
    const size_t na = a.factors.size(), nb = b.factors.size();
    size_t i = 0;
    while (i < na && i < nb) {
        const auto& pa = a.factors[i];
        const auto& pb = b.factors[i];
        if (pa.first != pb.first)
            return pa.first < pb.first;
        if (pa.second != pb.second)
            return pa.second > pb.second;
        ++i;
    }
    return na > nb;
}

Multidegree multidegree_of(const Monomial& m) {
    Multidegree md;
    for (const auto& [v, e] : m.factors)
        if (v.is_coordinate())
            md[v.vec()] += e;
    return md;
}

TypeMatrix type_of(const Monomial& m, unsigned nu) {
    TypeMatrix t;
    t.sigma.assign(nu, 0);
    t.tau.assign(nu, 0);
    for (const auto& [v, e] : m.factors) {
        if (v.kind() == VarKind::X && v.coord() >= 1 && v.coord() <= nu)
            t.sigma[v.coord() - 1] += e;
        else if (v.kind() == VarKind::Y && v.coord() >= 1 && v.coord() <= nu)
            t.tau[v.coord() - 1] += e;
        else
            throw IndexError("type_of: monomial must use x/y variables with coordinate <= nu, got " + v.str());
    }
    return t;
}

/* ---- coefficient slots ---- */

Coeff ring_normalize(const Ring& r, const Coeff& c) {
    switch (r.tag) {
    case RingTag::GF2: {
        Coeff m = c % 2;
        if (m < 0)
            m += 2;
        return m;
    }
    case RingTag::GF2K:
        if (c < 0 || c >= (Coeff(1) << r.fd.k))
            throw RingMismatch("coefficient out of range for " + r.str());
        return c;
    case RingTag::Int:
        return c;
    }
    return c;
}

Coeff ring_add(const Ring& r, const Coeff& a, const Coeff& b) {
    switch (r.tag) {
    case RingTag::GF2:
        return (a + b) % 2;
    case RingTag::GF2K:
        return Coeff(static_cast<uint32_t>(a) ^ static_cast<uint32_t>(b));
    case RingTag::Int:
        return a + b;
    }
    return a + b;
}

Coeff ring_mul(const Ring& r, const Coeff& a, const Coeff& b) {
    switch (r.tag) {
    case RingTag::GF2:
        return (a * b) % 2;
    case RingTag::GF2K:
        return Coeff(f_mul(r.fd, static_cast<uint32_t>(a), static_cast<uint32_t>(b)));
    case RingTag::Int:
        return a * b;
    }
    return a * b;
}

/* ---- polynomial core ---- */

Polynomial Polynomial::constant(const Ring& r, const Coeff& c) {
    Polynomial p(r);
    p.add_term(Monomial::one(), c);
    return p;
}

Polynomial Polynomial::variable(const Ring& r, VariableId v, uint32_t e) {
    Polynomial p(r);
    p.add_term(Monomial::var(v, e), 1);
    return p;
}

Coeff Polynomial::coeff(const Monomial& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Coeff(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Coeff& c) {
    Coeff cc = ring_normalize(ring, c);
    if (cc == 0)
        return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, std::move(cc));
        return;
    }
    Coeff s = ring_add(ring, it->second, cc);
    if (s == 0)
        terms.erase(it);
    else
        it->second = std::move(s);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (!(ring == o.ring))
        throw RingMismatch("add: " + ring.str() + " vs " + o.ring.str());
    for (const auto& [m, c] : o.terms)
        add_term(m, c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (!(ring == o.ring))
        throw RingMismatch("mul: " + ring.str() + " vs " + o.ring.str());
    Polynomial r(ring);
    for (const auto& [m1, c1] : terms)
        for (const auto& [m2, c2] : o.terms)
            r.add_term(m1.times(m2), ring_mul(ring, c1, c2));
    return r;
}

Polynomial Polynomial::scaled(const Coeff& c) const {
    Polynomial r(ring);
    for (const auto& [m, cc] : terms)
        r.add_term(m, ring_mul(ring, cc, ring_normalize(ring, c)));
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = Polynomial::constant(ring, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

Polynomial Polynomial::substitute(const std::map<VariableId, Polynomial>& images) const {
    for (const auto& [v, img] : images)
        if (!(img.ring == ring))
            throw RingMismatch("substitute: image of " + v.str() + " is over " + img.ring.str());
    std::map<VariableId, std::vector<Polynomial>> powers;
    auto power = [&](VariableId v, uint32_t e) -> const Polynomial& {
        auto& vec = powers[v];
        if (vec.empty()) {
            vec.push_back(Polynomial::constant(ring, 1));
            vec.push_back(images.at(v));
        }
        while (vec.size() <= e)
            vec.push_back(vec.back() * vec[1]);
        return vec[e];
    };
    Polynomial result(ring);
    for (const auto& [m, c] : terms) {
        Monomial fixed;
        Polynomial acc = Polynomial::constant(ring, c);
        for (const auto& [v, e] : m.factors) {
            if (images.count(v))
                acc = acc * power(v, e);
            else
                fixed = fixed.times(Monomial::var(v, e));
        }
        for (const auto& [am, ac] : acc.terms)
            result.add_term(am.times(fixed), ac);
    }
    return result;
}

Polynomial Polynomial::component(const Multidegree& alpha) const {
    Polynomial r(ring);
    for (const auto& [m, c] : terms)
        if (multidegree_of(m) == alpha)
            r.add_term(m, c);
    return r;
}

bool Polynomial::is_multihomogeneous() const {
    if (terms.empty())
        return true;
    auto it = terms.begin();
    Multidegree md = multidegree_of(it->first);
    for (++it; it != terms.end(); ++it)
        if (multidegree_of(it->first) != md)
            return false;
    return true;
}

Multidegree Polynomial::multidegree() const {
    if (terms.empty())
        throw ShapeError("multidegree of the zero polynomial is undefined");
    Multidegree md = multidegree_of(terms.begin()->first);
    for (const auto& [m, c] : terms)
        if (multidegree_of(m) != md)
            throw ShapeError("polynomial is not multihomogeneous");
    return md;
}

Polynomial Polynomial::divide_exact(const Coeff& d) const {
    if (ring.tag != RingTag::Int)
        throw RingMismatch("divide_exact requires the Int ring");
    if (d == 0)
        throw IndexError("divide_exact: zero divisor");
    Polynomial r(ring);
    for (const auto& [m, c] : terms) {
        if (c % d != 0)
            throw NotDivisible("divide_exact: coefficient " + c.str() + " of " + m.str() +
                                   " not divisible by " + d.str(),
                               m.str());
        r.add_term(m, c / d);
    }
    return r;
}

Polynomial Polynomial::reduce_mod2() const {
    if (ring.tag != RingTag::Int)
        throw RingMismatch("reduce_mod2 requires the Int ring");
    Polynomial r(Ring::gf2());
    for (const auto& [m, c] : terms)
        r.add_term(m, c);
    return r;
}

Polynomial Polynomial::convert(const Ring& target) const {
    if (ring == target)
        return *this;
    Polynomial r(target);
    switch (ring.tag) {
    case RingTag::GF2:
        for (const auto& [m, c] : terms)
            r.add_term(m, c);
        return r;
    case RingTag::Int:
        for (const auto& [m, c] : terms)
            r.add_term(m, ((c % 2) + 2) % 2);
        return r;
    case RingTag::GF2K:
        if (target.tag == RingTag::GF2K && target.fd.k % ring.fd.k == 0) {
            for (const auto& [m, c] : terms)
                r.add_term(m, Coeff(f_embed(ring.fd, target.fd, static_cast<uint32_t>(c))));
            return r;
        }
        throw RingMismatch("convert: cannot convert " + ring.str() + " to " + target.str());
    }
    throw RingMismatch("convert: unsupported conversion");
}

Polynomial Polynomial::derivative(VariableId v) const {
    Polynomial r(ring);
    for (const auto& [m, c] : terms) {
        uint32_t e = m.exponent(v);
        if (e == 0)
            continue;
        Coeff nc;
        if (ring.tag == RingTag::Int)
            nc = c * e;
        else
            nc = (e % 2 == 0) ? Coeff(0) : c;
        if (nc == 0)
            continue;
        Monomial nm;
        for (const auto& [w, we] : m.factors) {
            if (w == v) {
                if (we > 1)
                    nm.factors.emplace_back(w, we - 1);
            } else {
                nm.factors.emplace_back(w, we);
            }
        }
        r.add_term(nm, nc);
    }
    return r;
}

Fe Polynomial::evaluate(const FieldDesc& fd, const std::function<Fe(VariableId)>& assign) const {
    if (ring.tag == RingTag::Int)
        throw RingMismatch("evaluate: convert Int polynomials to a field first");
    if (ring.tag == RingTag::GF2K && !(ring.fd == fd))
        throw RingMismatch("evaluate: field mismatch");
    Fe sum = 0;
    for (const auto& [m, c] : terms) {
        Fe prod = (ring.tag == RingTag::GF2K) ? static_cast<Fe>(static_cast<uint32_t>(c)) : 1;
        for (const auto& [v, e] : m.factors)
            prod = f_mul(fd, prod, f_pow(fd, assign(v), e));
        sum ^= prod;
    }
    return sum;
}

unsigned Polynomial::degree_in(VariableId v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms)
        d = std::max(d, m.exponent(v));
    return d;
}

unsigned Polynomial::max_param_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms) {
        unsigned t = 0;
        for (const auto& [v, e] : m.factors)
            if (v.is_param())
                t += e;
        d = std::max(d, t);
    }
    return d;
}

Polynomial Polynomial::param_coefficient(VariableId param, uint32_t j) const {
    Polynomial r(ring);
    for (const auto& [m, c] : terms) {
        if (m.exponent(param) != j)
            continue;
        Monomial nm;
        for (const auto& [v, e] : m.factors)
            if (v != param)
                nm.factors.emplace_back(v, e);
        r.add_term(nm, c);
    }
    return r;
}

std::vector<std::pair<Monomial, Coeff>> Polynomial::sorted_terms() const {
    std::vector<std::pair<Monomial, Coeff>> v(terms.begin(), terms.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return term_order_before(a.first, b.first); });
    return v;
}

std::string Polynomial::str() const {
    if (terms.empty())
        return "0";
    std::string s;
    for (const auto& [m, c] : sorted_terms()) {
        bool neg = c < 0;
        Coeff mag = neg ? Coeff(-c) : c;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (m.factors.empty())
            s += mag.str();
        else if (mag == 1)
            s += m.str();
        else
            s += mag.str() + "*" + m.str();
    }
    return s;
}

/* ---- parsing ---- */

namespace {

struct Scanner {
    const std::string& text;
    size_t pos = 0;

    explicit Scanner(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    uint64_t number() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError("expected a number at position " + std::to_string(pos));
        uint64_t n = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            n = n * 10 + static_cast<uint64_t>(text[pos++] - '0');
        return n;
    }
    bool starts_with(const char* s) {
        skip_ws();
        size_t n = std::string(s).size();
        return text.compare(pos, n, s) == 0;
    }
};

VariableId parse_variable(Scanner& sc) {
    char c = sc.peek();
    if (c == 'x' || c == 'y') {
        sc.eat(c);
        unsigned t = static_cast<unsigned>(sc.number());
        if (!sc.eat('_'))
            throw ParseError("expected '_' in coordinate variable");
        unsigned i = static_cast<unsigned>(sc.number());
        return c == 'x' ? VariableId::x(t, i) : VariableId::y(t, i);
    }
    if (c == 'z') {
        sc.eat('z');
        if (!sc.eat('_'))
            throw ParseError("expected '_' in z variable");
        return VariableId::z(static_cast<unsigned>(sc.number()));
    }
    if (c == 'c') {
        sc.eat('c');
        return VariableId::param(static_cast<unsigned>(sc.number()));
    }
    if (c == 'Q') {
        sc.eat('Q');
        return VariableId::aq(static_cast<unsigned>(sc.number()));
    }
    if (c == 'B') {
        sc.eat('B');
        unsigned i = static_cast<unsigned>(sc.number());
        if (!sc.eat('_'))
            throw ParseError("expected '_' in B variable");
        return VariableId::ab(i, static_cast<unsigned>(sc.number()));
    }
    if (sc.starts_with("Delta")) {
        sc.pos += 5;
        return VariableId::adelta();
    }
    if (c == 'D') {
        sc.eat('D');
        return VariableId::ad();
    }
    throw ParseError(std::string("unexpected character '") + c + "' in polynomial");
}

} // namespace

Polynomial Polynomial::parse(const std::string& text, const Ring& r) {
    Polynomial p(r);
    Scanner sc(text);
    if (sc.done())
        return p;
    bool first = true;
    while (!sc.done()) {
        bool neg = false;
        if (sc.eat('-'))
            neg = true;
        else if (!first && !sc.eat('+'))
            throw ParseError("expected '+' or '-' between terms");
        first = false;

        Coeff c = 1;
        Monomial m;
        bool any = false;
        for (;;) {
            char ch = sc.peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c *= Coeff(sc.number());
                any = true;
            } else if (std::isalpha(static_cast<unsigned char>(ch))) {
                VariableId v = parse_variable(sc);
                uint32_t e = 1;
                if (sc.eat('^'))
                    e = static_cast<uint32_t>(sc.number());
                m = m.times(Monomial::var(v, e));
                any = true;
            } else {
                break;
            }
            if (!sc.eat('*'))
                break;
        }
        if (!any)
            throw ParseError("empty term");
        p.add_term(m, neg ? Coeff(-c) : c);
    }
    return p;
}

} // namespace oinv
