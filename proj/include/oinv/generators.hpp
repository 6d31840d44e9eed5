#pragma once

#include <string>
#include <vector>

#include "oinv/action.hpp"

namespace oinv {

// Symbolic certification data for one group: parametric unipotent generators,
// a torus weight rule, and optionally the x1 <-> y1 swap. A polynomial fixed
// by every unipotent (as an identity in the parameter), satisfying the weight
// rule, and fixed by the swap when present is invariant under the full group.
struct GeneratorFamily {
    GroupId group;
    unsigned n = 0;
    unsigned nu = 0;
    std::string name;
    std::vector<GroupAction> unipotents;
    bool swap_check = false;
};

// Throws UnsupportedGroup when no symbolic family is implemented
// (SO(2nu) for nu >= 3, O(n) for odd n >= 5).
GeneratorFamily generator_family(GroupId g, unsigned n);

bool has_symbolic_family(GroupId g, unsigned n);

// Permutation exchanging the coordinates x1 and y1.
GroupAction swap_x1y1(unsigned n, const Ring& r);

// Per monomial, for each t: total degree in x_t across all vectors equals
// total degree in y_t (z is ignored). Invariance under the diagonal torus.
bool weight_rule_holds(const Monomial& m, unsigned nu);

} // namespace oinv
