#pragma once

#include <stdexcept>
#include <string>

namespace oinv {

struct UnsupportedDegree : std::runtime_error {
    explicit UnsupportedDegree(const std::string& what) : std::runtime_error(what) {}
};

struct RingMismatch : std::runtime_error {
    explicit RingMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Carries the text of the first monomial whose coefficient is not divisible.
struct NotDivisible : std::runtime_error {
    std::string monomial;
    NotDivisible(const std::string& what, std::string mono)
        : std::runtime_error(what), monomial(std::move(mono)) {}
};

struct SingularVector : std::runtime_error {
    explicit SingularVector(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedGroup : std::runtime_error {
    explicit UnsupportedGroup(const std::string& what) : std::runtime_error(what) {}
};

struct IndexError : std::runtime_error {
    explicit IndexError(const std::string& what) : std::runtime_error(what) {}
};

struct ComponentCapExceeded : std::runtime_error {
    explicit ComponentCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct OddZError : std::runtime_error {
    explicit OddZError(const std::string& what) : std::runtime_error(what) {}
};

struct NotInvariant : std::runtime_error {
    explicit NotInvariant(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace oinv
