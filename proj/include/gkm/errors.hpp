#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gkm {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad JSON shape, bad polynomial text, unknown ids,
// mismatched dimensions in user-supplied data.
struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error("schema: " + what) {}
};

// Operands live over different variable sets / torus dimensions.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

// Exact division by a linear form failed; carries the leading term of the
// nonzero remainder so callers can report what obstructed divisibility.
struct NotDivisible : Error {
    std::string remainder_leading_term;
    NotDivisible(const std::string& what, std::string lead)
        : Error("not divisible: " + what + " (remainder leading term " + lead + ")"),
          remainder_leading_term(std::move(lead)) {}
};

// A rational function with a nontrivial denominator was asked to become a
// polynomial.
struct NotPolynomial : Error {
    explicit NotPolynomial(const std::string& what) : Error("not a polynomial: " + what) {}
};

// The chosen direction pairs to zero with some edge weight.
struct NonGenericDirection : Error {
    std::string witness_edge;
    NonGenericDirection(const std::string& what, std::string edge)
        : Error("non-generic direction: " + what), witness_edge(std::move(edge)) {}
};

// An ascending edge fails to increase the index; carries the offenders.
struct IndexNotIncreasing : Error {
    std::vector<std::pair<std::string, std::string>> violations;
    IndexNotIncreasing(const std::string& what,
                       std::vector<std::pair<std::string, std::string>> v)
        : Error("index not increasing: " + what), violations(std::move(v)) {}
};

// The interpolation constant for an edge came out non-integral or
// non-constant; for valid inputs this signals a corrupted graph.
struct NonIntegerTheta : Error {
    std::string edge;
    NonIntegerTheta(const std::string& what, std::string e)
        : Error("non-integer interpolation constant: " + what), edge(std::move(e)) {}
};

// A structural graph invariant failed where a computation required it.
struct GraphInvalid : Error {
    explicit GraphInvalid(const std::string& what) : Error("invalid graph: " + what) {}
};

} // namespace gkm
