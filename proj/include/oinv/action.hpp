#pragma once

#include <optional>
#include <random>
#include <vector>

#include "oinv/poly.hpp"

namespace oinv {

enum class GroupId : uint8_t { O, SO, Sp, SL2 };

std::string group_name(GroupId g, unsigned n);

// Linear substitution on coordinates. entries is n x n row-major; constant
// entries give a concrete element, Param entries a generator with a formal
// parameter. parity is the reflection count mod 2 when known.
struct GroupAction {
    unsigned n = 0;
    std::vector<Polynomial> entries;
    std::optional<int> parity;

    const Polynomial& at(unsigned r, unsigned s) const { return entries[r * n + s]; }
    Polynomial& at(unsigned r, unsigned s) { return entries[r * n + s]; }
    Ring ring() const { return entries.empty() ? Ring::gf2() : entries[0].ring; }
};

// Coordinate r of k^n as a variable of vector i: (x1,y1,x2,y2,...[,z]).
VariableId coordinate_variable(unsigned r, unsigned n, unsigned i);

// q(v^(i)) = sum x_t y_t (+ z^2 for odd n), over the given ring.
Polynomial q_form(unsigned n, const Ring& r, unsigned i = 1);
// beta(v^(i), v^(j)); over Int for odd n the 2 z_i z_j term is kept.
Polynomial polar_form(unsigned n, const Ring& r, unsigned i, unsigned j);

GroupAction identity_action(unsigned n, const Ring& r);

// T_u v = v - (beta(v,u)/q(u)) u; throws SingularVector when q(u) = 0.
GroupAction reflection(const std::vector<Fe>& u, unsigned n, const FieldDesc& fd);

// q(Av) = q(v) as a polynomial identity in coordinates and parameters.
bool is_orthogonal(const GroupAction& A);
// beta(Au, Av) = beta(u, v) identically.
bool is_symplectic(const GroupAction& A);

// Simultaneous substitution v^(i) -> A v^(i) for every vector index in p.
Polynomial apply(const GroupAction& A, const Polynomial& p);

// compose(g, h) acts as g first, then h; apply(compose(g,h), p) =
// apply(g, apply(h, p)). parity is additive when both are known.
GroupAction compose(const GroupAction& g, const GroupAction& h);

// Product of r random reflections (r forced even for SO). parity = r mod 2.
GroupAction random_element(GroupId g, unsigned n, const FieldDesc& fd, unsigned r,
                           std::mt19937_64& rng);

// Numeric n x n matrix of a concrete action over fd.
std::vector<Fe> action_matrix(const GroupAction& A, const FieldDesc& fd);
// w -> Aw for numeric column vectors.
std::vector<Fe> matrix_apply(const std::vector<Fe>& M, unsigned n, const std::vector<Fe>& w,
                             const FieldDesc& fd);

} // namespace oinv
