#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oinv/generators.hpp"

namespace oinv {

// Flat evaluator over a fixed field; slot i holds the value of slots[i].
struct CompiledPoly {
    struct CTerm {
        Fe c;
        std::vector<std::pair<uint32_t, uint32_t>> pows;
    };
    std::vector<VariableId> slots;
    std::vector<CTerm> terms;

    static CompiledPoly compile(const Polynomial& p, const FieldDesc& fd);
    Fe eval(const FieldDesc& fd, const std::vector<Fe>& values) const;
};

enum class CheckMode : uint8_t { Auto, Symbolic, Randomized };

struct CheckOptions {
    unsigned k = 8;
    uint64_t seed = 0;
    unsigned elements = 64;
    unsigned reflections = 6;
    unsigned points = 64;
    CheckMode mode = CheckMode::Auto;
};

struct Certificate {
    bool pass = false;
    std::string mode;
    std::string group;
    unsigned generators_checked = 0;
    uint64_t seed = 0;
    unsigned elements = 0;
    unsigned points = 0;
    std::optional<std::string> witness;

    std::string to_json() const;
};

// Decides invariance of p under the group. Symbolic mode proves it from the
// generator family; randomized mode samples concrete elements over GF(2^k)
// and compares evaluations, so a pass is evidence, a fail is a disproof.
Certificate invariance_check(const Polynomial& p, GroupId g, unsigned n,
                             const CheckOptions& opt = {});

} // namespace oinv
