#pragma once

#include <vector>

#include "gkm/polynomial.hpp"

namespace gkm {

// Values of an equivariant class, indexed by vertex position in document order.
using ClassValues = std::vector<Polynomial>;

// A class attached to a vertex: homogeneous of the stated degree, with one
// polynomial value per vertex.
struct ClassTable {
    int owner = 0;
    int degree = 0;
    ClassValues values;

    friend bool operator==(const ClassTable& a, const ClassTable& b) {
        return a.owner == b.owner && a.degree == b.degree && a.values == b.values;
    }
};

} // namespace gkm
