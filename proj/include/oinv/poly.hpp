#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oinv/field.hpp"
#include "oinv/variable.hpp"

namespace oinv {

using Coeff = boost::multiprecision::cpp_int;

enum class RingTag : uint8_t { GF2, GF2K, Int };

// Coefficient ring tag. fd is meaningful only for GF2K; GF(2^k) elements are
// stored as their bit patterns in the coefficient slot.
struct Ring {
    RingTag tag = RingTag::GF2;
    FieldDesc fd{};

    static Ring gf2() { return Ring{RingTag::GF2, {}}; }
    static Ring gf2k(const FieldDesc& f) { return Ring{RingTag::GF2K, f}; }
    static Ring integers() { return Ring{RingTag::Int, {}}; }

    bool operator==(const Ring& o) const {
        return tag == o.tag && (tag != RingTag::GF2K || fd == o.fd);
    }
    std::string str() const;
};

// Sorted factor list, exponents >= 1. The empty monomial is 1.
struct Monomial {
    std::vector<std::pair<VariableId, uint32_t>> factors;

    static Monomial one() { return {}; }
    static Monomial var(VariableId v, uint32_t e = 1);

    Monomial times(const Monomial& o) const;
    uint32_t exponent(VariableId v) const;
    unsigned total_degree() const;
    bool operator==(const Monomial&) const = default;
    std::string str() const;
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const {
        uint64_t h = 1469598103934665603ull;
        for (const auto& [v, e] : m.factors) {
            h = (h ^ v.raw) * 1099511628211ull;
            h = (h ^ e) * 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

// True if a prints before b: descending lexicographic order on exponent
// vectors under the canonical variable order; the constant term is last.
bool term_order_before(const Monomial& a, const Monomial& b);

// Per-vector total degrees, only over coordinate variables.
using Multidegree = std::map<unsigned, unsigned>;
Multidegree multidegree_of(const Monomial& m);

// 2 x nu occurrence counts of x_t / y_t factors of a monomial.
struct TypeMatrix {
    std::vector<unsigned> sigma, tau;
    bool operator==(const TypeMatrix&) const = default;
};
TypeMatrix type_of(const Monomial& m, unsigned nu);

class Polynomial {
public:
    using TermMap = std::unordered_map<Monomial, Coeff, MonomialHash>;

    Ring ring;
    TermMap terms;

    Polynomial() : ring(Ring::gf2()) {}
    explicit Polynomial(const Ring& r) : ring(r) {}

    static Polynomial zero(const Ring& r) { return Polynomial(r); }
    static Polynomial constant(const Ring& r, const Coeff& c);
    static Polynomial variable(const Ring& r, VariableId v, uint32_t e = 1);

    bool is_zero() const { return terms.empty(); }
    size_t term_count() const { return terms.size(); }
    Coeff coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Coeff& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Coeff& c) const;
    Polynomial pow(unsigned e) const;
    bool operator==(const Polynomial& o) const { return ring == o.ring && terms == o.terms; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Simultaneous substitution; variables absent from the map are fixed.
    Polynomial substitute(const std::map<VariableId, Polynomial>& images) const;

    // Terms whose full multidegree equals alpha exactly.
    Polynomial component(const Multidegree& alpha) const;
    bool is_multihomogeneous() const;
    // Throws if the polynomial is zero or not multihomogeneous.
    Multidegree multidegree() const;

    // Int ring only. Throws NotDivisible carrying the offending monomial.
    Polynomial divide_exact(const Coeff& d) const;
    // Int ring -> GF2.
    Polynomial reduce_mod2() const;
    // GF2 -> anything, Int -> anything (mod 2 for field targets),
    // GF2K -> GF2K along a degree-multiple embedding.
    Polynomial convert(const Ring& target) const;

    // Formal partial derivative.
    Polynomial derivative(VariableId v) const;

    // GF2/GF2K rings; every variable present must be assigned.
    Fe evaluate(const FieldDesc& fd, const std::function<Fe(VariableId)>& assign) const;

    unsigned degree_in(VariableId v) const;
    unsigned max_param_degree() const;
    // Coefficient polynomial of param^j with the parameter removed.
    Polynomial param_coefficient(VariableId param, uint32_t j) const;

    std::vector<std::pair<Monomial, Coeff>> sorted_terms() const;
    std::string str() const;
    static Polynomial parse(const std::string& text, const Ring& r);
};

// Ring-element arithmetic on coefficient slots.
Coeff ring_add(const Ring& r, const Coeff& a, const Coeff& b);
Coeff ring_mul(const Ring& r, const Coeff& a, const Coeff& b);
Coeff ring_normalize(const Ring& r, const Coeff& c);

} // namespace oinv
