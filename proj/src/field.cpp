#include "oinv/field.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <utility>

namespace oinv {

namespace {

// Low-weight irreducibles, trinomials where one exists. Index = k - 1.
constexpr uint32_t kModuli[16] = {
    0x3,     // x+1
    0x7,     // x^2+x+1
    0xB,     // x^3+x+1
    0x13,    // x^4+x+1
    0x25,    // x^5+x^2+1
    0x43,    // x^6+x+1
    0x83,    // x^7+x+1
    0x11B,   // x^8+x^4+x^3+x+1
    0x211,   // x^9+x^4+1
    0x409,   // x^10+x^3+1
    0x805,   // x^11+x^2+1
    0x1053,  // x^12+x^6+x^4+x+1
    0x201B,  // x^13+x^4+x^3+x+1
    0x4443,  // x^14+x^10+x^6+x+1
    0x8003,  // x^15+x+1
    0x1100B, // x^16+x^12+x^3+x+1
};

unsigned deg(uint64_t a) {
    return a == 0 ? 0 : static_cast<unsigned>(std::bit_width(a)) - 1;
}

} // namespace

FieldDesc make_field(unsigned k) {
    if (k < 1 || k > 16)
        throw UnsupportedDegree("make_field: k must be in [1,16], got " + std::to_string(k));
    return FieldDesc{k, kModuli[k - 1]};
}

uint32_t gf2x_mod(uint64_t a, uint32_t m) {
    const unsigned dm = deg(m);
    while (a != 0 && deg(a) >= dm)
        a ^= static_cast<uint64_t>(m) << (deg(a) - dm);
    return static_cast<uint32_t>(a);
}

bool gf2x_irreducible(uint32_t m, unsigned degree) {
    if (deg(m) != degree || degree == 0)
        return false;
    for (unsigned d = 1; d <= degree / 2; ++d)
        for (uint32_t q = 1u << d; q < (2u << d); ++q)
            if (gf2x_mod(m, q) == 0)
                return false;
    return true;
}

Fe f_add(Fe a, Fe b) { return a ^ b; }

Fe f_mul(const FieldDesc& fd, Fe a, Fe b) {
    uint64_t acc = 0, aa = a;
    while (b) {
        if (b & 1)
            acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    return gf2x_mod(acc, fd.modulus);
}

Fe f_pow(const FieldDesc& fd, Fe a, uint64_t e) {
    Fe r = 1, base = a;
    while (e) {
        if (e & 1)
            r = f_mul(fd, r, base);
        base = f_mul(fd, base, base);
        e >>= 1;
    }
    return r;
}

Fe f_inv(const FieldDesc& fd, Fe a) {
    if (a == 0)
        throw SingularVector("f_inv: zero has no inverse");
    return f_pow(fd, a, (uint64_t(1) << fd.k) - 2);
}

Fe field_sqrt(const FieldDesc& fd, Fe a) {
    return f_pow(fd, a, uint64_t(1) << (fd.k - 1));
}

Fe f_trace(const FieldDesc& fd, Fe a) {
    Fe s = a, x = a;
    for (unsigned i = 1; i < fd.k; ++i) {
        x = f_mul(fd, x, x);
        s ^= x;
    }
    return s;
}

std::optional<Fe> artin_schreier_solve(const FieldDesc& fd, Fe a) {
    const Fe count = static_cast<Fe>((uint64_t(1) << fd.k) - 1);
    for (Fe x = 0; x <= count; ++x)
        if ((f_mul(fd, x, x) ^ x) == a)
            return x;
    return std::nullopt;
}

Fe f_embed(const FieldDesc& from, const FieldDesc& to, Fe a) {
    if (from == to)
        return a;
    if (to.k % from.k != 0)
        throw UnsupportedDegree("f_embed: target degree not a multiple of source degree");

    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, Fe> roots;
    Fe root;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = roots.find({from.k, to.k});
        if (it != roots.end()) {
            root = it->second;
        } else {
            // Smallest root of the source modulus inside the target field.
            root = 0;
            bool found = false;
            const uint64_t n = uint64_t(1) << to.k;
            for (uint64_t c = 0; c < n && !found; ++c) {
                Fe v = 0;
                for (int i = static_cast<int>(from.k); i >= 0; --i) {
                    v = f_mul(to, v, static_cast<Fe>(c));
                    if ((from.modulus >> i) & 1)
                        v ^= 1;
                }
                if (v == 0) {
                    root = static_cast<Fe>(c);
                    found = true;
                }
            }
            if (!found)
                throw UnsupportedDegree("f_embed: no root of source modulus in target field");
            roots[{from.k, to.k}] = root;
        }
    }
    Fe r = 0;
    for (int i = static_cast<int>(from.k) - 1; i >= 0; --i) {
        r = f_mul(to, r, root);
        if ((a >> i) & 1)
            r ^= 1;
    }
    return r;
}

Fe f_random(const FieldDesc& fd, std::mt19937_64& rng) {
    return static_cast<Fe>(rng() & ((uint64_t(1) << fd.k) - 1));
}

} // namespace oinv
