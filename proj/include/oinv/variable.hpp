#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "oinv/errors.hpp"

namespace oinv {

enum class VarKind : uint8_t { X, Y, Z, Param, AQ, AB, AD, ADelta };

// Packed so that raw comparison realizes the canonical variable order:
// coordinate variables by (vector index, kind X<Y<Z, coordinate index),
// then the abstract Q/B/D/Delta block, then formal parameters last.
// Layout: [class:2][payload:30], class 0 = coordinate, 1 = abstract, 2 = param.
class VariableId {
public:
    uint32_t raw = 0;

    static VariableId x(unsigned t, unsigned i) { return coordinate(i, 0, t); }
    static VariableId y(unsigned t, unsigned i) { return coordinate(i, 1, t); }
    static VariableId z(unsigned i) { return coordinate(i, 2, 0); }
    static VariableId param(unsigned id) {
        check(id <= 0x3FFFFFFFu, "param id");
        return VariableId{(2u << 30) | id};
    }
    static VariableId aq(unsigned i) { return abstract(0, i, 0); }
    static VariableId ab(unsigned i, unsigned j) {
        check(i != j, "B index pair must be distinct");
        return i < j ? abstract(1, i, j) : abstract(1, j, i);
    }
    static VariableId ad() { return abstract(2, 0, 0); }
    static VariableId adelta() { return abstract(3, 0, 0); }

    VarKind kind() const {
        switch (raw >> 30) {
        case 0:
            return static_cast<VarKind>((raw >> 14) & 0x3);
        case 1:
            return static_cast<VarKind>(4 + ((raw >> 28) & 0x3));
        default:
            return VarKind::Param;
        }
    }
    bool is_coordinate() const { return (raw >> 30) == 0; }
    bool is_abstract() const { return (raw >> 30) == 1; }
    bool is_param() const { return (raw >> 30) == 2; }

    // t for X/Y (0 for Z); vector index i for X/Y/Z.
    unsigned coord() const { return raw & 0x3FFF; }
    unsigned vec() const { return is_coordinate() ? (raw >> 16) & 0x3FFF : (raw >> 14) & 0x3FFF; }
    unsigned second() const { return raw & 0x3FFF; }
    unsigned param_id() const { return raw & 0x3FFFFFFF; }

    std::string str() const;

    auto operator<=>(const VariableId&) const = default;

    VariableId() = default;

private:
    explicit VariableId(uint32_t r) : raw(r) {}

    static void check(bool ok, const char* what) {
        if (!ok)
            throw IndexError(std::string("VariableId: bad ") + what);
    }
    static VariableId coordinate(unsigned i, unsigned kind, unsigned t) {
        check(i >= 1 && i <= 0x3FFF, "vector index");
        if (kind != 2)
            check(t >= 1 && t <= 0x3FFF, "coordinate index");
        return VariableId{(i << 16) | (kind << 14) | t};
    }
    static VariableId abstract(unsigned akind, unsigned i, unsigned j) {
        check(i <= 0x3FFF && j <= 0x3FFF, "abstract index");
        return VariableId{(1u << 30) | (akind << 28) | (i << 14) | j};
    }

public:
    // Identity is the packed word; default-constructed value is invalid.
    static VariableId from_raw(uint32_t r) { return VariableId{r}; }
};

inline std::string VariableId::str() const {
    switch (kind()) {
    case VarKind::X:
        return "x" + std::to_string(coord()) + "_" + std::to_string(vec());
    case VarKind::Y:
        return "y" + std::to_string(coord()) + "_" + std::to_string(vec());
    case VarKind::Z:
        return "z_" + std::to_string(vec());
    case VarKind::Param:
        return "c" + std::to_string(param_id());
    case VarKind::AQ:
        return "Q" + std::to_string(vec());
    case VarKind::AB:
        return "B" + std::to_string(vec()) + "_" + std::to_string(second());
    case VarKind::AD:
        return "D";
    case VarKind::ADelta:
        return "Delta";
    }
    return "?";
}

} // namespace oinv
