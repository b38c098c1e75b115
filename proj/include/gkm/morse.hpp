#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkm/graph.hpp"

namespace gkm {

struct GenericityResult {
    bool ok = true;
    // an edge whose weight pairs to zero, when not generic
    std::optional<EdgeRef> witness;
};

// A direction is generic when it pairs to a nonzero value with every edge
// weight.
inline GenericityResult is_generic(const GkmGraph& g, const DirectionVector& xi) {
    if (xi.dim() != g.dim_t()) throw DimensionMismatch("direction dimension differs from dim_t");
    for (const auto& e : g.geometric_edges())
        if (g.weight(e.from, e.to).pairing(xi) == 0) return {false, e};
    return {true, std::nullopt};
}

// Per-vertex Morse data: the Morse value, the index, and the factored plus
// expanded products of ascending-incoming and descending-incoming weights.
struct VertexMorse {
    Rational psi;
    int lambda = 0;
    std::vector<int> minus_sources;    // vertices below, document order
    std::vector<int> plus_sources;     // vertices above, document order
    std::vector<Weight> minus_weights; // weight(source, here) for each below
    std::vector<Weight> plus_weights;
    Polynomial lambda_minus; // product of minus_weights
    Polynomial lambda_plus;  // product of plus_weights
    Polynomial lambda_full;  // product of all incoming weights
};

struct MorseData {
    DirectionVector xi;
    std::vector<VertexMorse> at; // by vertex document index

    const VertexMorse& operator[](int v) const { return at[static_cast<size_t>(v)]; }
};

inline MorseData morse_data(const GkmGraph& g, const DirectionVector& xi) {
    auto gen = is_generic(g, xi);
    if (!gen.ok)
        throw NonGenericDirection("weight on edge " + g.edge_name(gen.witness->from, gen.witness->to) +
                                      " pairs to zero with the direction",
                                  g.edge_name(gen.witness->from, gen.witness->to));
    MorseData m{xi, {}};
    m.at.reserve(static_cast<size_t>(g.num_vertices()));
    const int n = g.dim_t();
    for (int v = 0; v < g.num_vertices(); ++v) {
        VertexMorse vm;
        vm.psi = g.vertex(v).phi.pairing(xi);
        std::vector<int> nbs = g.neighbors(v);
        std::sort(nbs.begin(), nbs.end()); // document order for the factor lists
        vm.lambda_minus = Polynomial::one(n);
        vm.lambda_plus = Polynomial::one(n);
        for (int s : nbs) {
            Weight w = g.weight(s, v); // incoming label
            if (w.pairing(xi) > 0) {
                vm.minus_sources.push_back(s);
                vm.minus_weights.push_back(w);
                vm.lambda_minus *= Polynomial::from_linear_form(w.to_linear_form());
            } else {
                vm.plus_sources.push_back(s);
                vm.plus_weights.push_back(w);
                vm.lambda_plus *= Polynomial::from_linear_form(w.to_linear_form());
            }
        }
        vm.lambda = static_cast<int>(vm.minus_weights.size());
        vm.lambda_full = vm.lambda_minus * vm.lambda_plus;
        m.at.push_back(std::move(vm));
    }
    return m;
}

struct IndexViolation {
    EdgeRef edge;
    int lambda_from = 0;
    int lambda_to = 0;
};

struct IndexCheck {
    bool ok = true;
    std::vector<IndexViolation> violations;
};

// True when every ascending edge strictly increases the index.
inline IndexCheck is_index_increasing(const GkmGraph& g, const MorseData& m) {
    IndexCheck r;
    for (const auto& e : g.directed_edges()) {
        if (g.weight(e.from, e.to).pairing(m.xi) <= 0) continue; // keep ascending orientation only
        int lf = m[e.from].lambda, lt = m[e.to].lambda;
        if (lf >= lt) {
            r.ok = false;
            r.violations.push_back({e, lf, lt});
        }
    }
    return r;
}

inline IndexCheck is_index_increasing(const GkmGraph& g, const DirectionVector& xi) {
    return is_index_increasing(g, morse_data(g, xi));
}

} // namespace gkm
