#pragma once

#include <map>
#include <string>
#include <vector>

#include "gkm/class_table.hpp"
#include "gkm/errors.hpp"
#include "gkm/graph.hpp"
#include "gkm/permutation.hpp"

namespace gkm {

// A built-in example space: the graph together with a conventional generic
// direction for which the standard Morse setup is index-increasing.
struct BuiltinSpace {
    std::string name;
    GkmGraph graph;
    DirectionVector default_xi;
};

// Complex projective n-space. Vertices p1..p_{n+1} with
// phi(p_i) = (sum_j x_j)/(n+1) - x_i, one edge per pair {p_i, p_j} (i < j)
// with weight x_i - x_j.
inline BuiltinSpace gen_cpn(int n) {
    if (n < 1) throw SchemaError("projective space parameter must be at least 1");
    const int d = n + 1;
    GkmGraph g(d);
    for (int i = 0; i < d; ++i) {
        std::vector<Rational> phi(static_cast<size_t>(d), Rational(1, d));
        phi[static_cast<size_t>(i)] -= 1;
        g.add_vertex("p" + std::to_string(i + 1), LinearForm(std::move(phi)));
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            std::vector<int64_t> w(static_cast<size_t>(d), 0);
            w[static_cast<size_t>(i)] = 1;
            w[static_cast<size_t>(j)] = -1;
            g.add_edge(i, j, Weight(std::move(w)));
        }
    std::vector<Rational> xi(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) xi[static_cast<size_t>(i)] = Rational(-i);
    return {"cpn:" + std::to_string(n), std::move(g), DirectionVector(std::move(xi))};
}

// The variety of complete flags in C^n. Vertices are the permutations of
// {1..n} in lexicographic one-line order, named by their digit strings.
// phi(sigma) = sum_i sigma^{-1}(i) * x_i; sigma and tau are adjacent when
// tau = t * sigma for a transposition t of two values i < j, and the weight
// on that edge is +-(x_i - x_j), signed so that phi increases along it.
inline BuiltinSpace gen_flag(int n) {
    if (n < 2 || n > 7) throw SchemaError("flag space parameter must be between 2 and 7");
    GkmGraph g(n);
    const auto perms = all_permutations(n);
    std::map<Permutation, int> index;
    for (size_t k = 0; k < perms.size(); ++k) {
        const auto inv = perm_inverse(perms[k]);
        std::vector<Rational> phi(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) phi[static_cast<size_t>(i)] = Rational(inv[static_cast<size_t>(i)]);
        g.add_vertex(perm_id(perms[k]), LinearForm(std::move(phi)));
        index.emplace(perms[k], static_cast<int>(k));
    }
    for (size_t k = 0; k < perms.size(); ++k) {
        const auto& sigma = perms[k];
        const auto inv = perm_inverse(sigma);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const auto tau = perm_swap_values(sigma, i, j);
                const int kt = index.at(tau);
                if (kt <= static_cast<int>(k)) continue;
                // phi(tau) - phi(sigma) = (pos(j) - pos(i)) * (x_i - x_j)
                // where pos(v) is the position of the value v in sigma.
                const int sgn = inv[static_cast<size_t>(j - 1)] > inv[static_cast<size_t>(i - 1)] ? 1 : -1;
                std::vector<int64_t> w(static_cast<size_t>(n), 0);
                w[static_cast<size_t>(i - 1)] = sgn;
                w[static_cast<size_t>(j - 1)] = -sgn;
                g.add_edge(static_cast<int>(k), kt, Weight(std::move(w)));
            }
    }
    std::vector<Rational> xi(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) xi[static_cast<size_t>(i)] = Rational(-i);
    return {"flag:" + std::to_string(n), std::move(g), DirectionVector(std::move(xi))};
}

// A product of two spheres with a twisted action: the second coordinate
// rotates with twice the speed. Four vertices on a square; parallel edges
// carry equal weights, so opposite vertices are not adjacent.
inline BuiltinSpace gen_cp1xcp1_twisted() {
    GkmGraph g(2);
    const int ss = g.add_vertex("SS", LinearForm({Rational(0), Rational(0)}));
    const int sn = g.add_vertex("SN", LinearForm({Rational(0), Rational(2)}));
    const int ns = g.add_vertex("NS", LinearForm({Rational(2), Rational(0)}));
    const int nn = g.add_vertex("NN", LinearForm({Rational(2), Rational(2)}));
    g.add_edge(ss, ns, Weight({2, 0}));
    g.add_edge(sn, nn, Weight({2, 0}));
    g.add_edge(ss, sn, Weight({0, 2}));
    g.add_edge(ns, nn, Weight({0, 2}));
    return {"cp1xcp1_twisted", std::move(g), DirectionVector({Rational(1), Rational(1)})};
}

// The blow-up of the projective plane at a fixed point: a quadrilateral with
// moment images on a truncated triangle. With xi = (1, -1) the Morse order is
// p1 < p2 < p3 < p4, but the edge (p2, p3) keeps lambda constant at 1, so the
// setup is not index-increasing for any generic direction.
inline BuiltinSpace gen_blowup_cp2() {
    GkmGraph g(2);
    const int p1 = g.add_vertex("p1", LinearForm({Rational(-1), Rational(0)}));
    const int p2 = g.add_vertex("p2", LinearForm({Rational(-1, 2), Rational(0)}));
    const int p3 = g.add_vertex("p3", LinearForm({Rational(0), Rational(-1, 2)}));
    const int p4 = g.add_vertex("p4", LinearForm({Rational(0), Rational(-1)}));
    g.add_edge(p1, p2, Weight({1, 0}));
    g.add_edge(p2, p3, Weight({1, -1}));
    g.add_edge(p3, p4, Weight({0, -1}));
    g.add_edge(p1, p4, Weight({1, -1}));
    return {"blowup_cp2", std::move(g), DirectionVector({Rational(1), Rational(-1)})};
}

// A basis of classes on the blown-up plane satisfying the compatibility and
// vanishing conditions by hand (the space itself admits no index-increasing
// direction, so these are not produced by the path formula).
inline std::vector<ClassTable> blowup_cp2_classes() {
    const Polynomial zero = Polynomial::constant(2, Rational(0));
    const Polynomial one = Polynomial::constant(2, Rational(1));
    const Polynomial x1 = Polynomial::variable(2, 0);
    const Polynomial x2 = Polynomial::variable(2, 1);
    std::vector<ClassTable> out;
    out.push_back({0, 0, {one, one, one, one}});
    out.push_back({1, 1, {zero, x1, x1, x1 - x2}});
    out.push_back({2, 1, {zero, zero, x1 - x2, x1 - x2}});
    out.push_back({3, 2, {zero, zero, zero, (x1 - x2) * (x2 * Rational(-1))}});
    return out;
}

// An integral class on the twisted product space supported on the two
// extreme vertices. At the top vertex its value is not a multiple of the
// full ascending-weight product, but no incoming edge is robustly zero
// there, so the divisibility report accepts it with an empty factor list.
inline ClassValues twisted_integral_class() {
    const Polynomial zero = Polynomial::constant(2, Rational(0));
    const Polynomial m = Polynomial::variable(2, 0) * Polynomial::variable(2, 1) * Rational(2);
    return {m, zero, zero, m};
}

// Parse a space designator of the form "kind" or "kind:param".
inline BuiltinSpace make_space(const std::string& designator) {
    std::string kind = designator;
    int param = -1;
    if (const auto colon = designator.find(':'); colon != std::string::npos) {
        kind = designator.substr(0, colon);
        const std::string rest = designator.substr(colon + 1);
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
            throw SchemaError("space parameter must be a nonnegative integer: '" + rest + "'");
        if (rest.size() > 2) throw SchemaError("space parameter out of range: '" + rest + "'");
        param = std::stoi(rest);
    }
    if (kind == "cpn") {
        if (param < 0) throw SchemaError("space 'cpn' needs a parameter, e.g. cpn:2");
        return gen_cpn(param);
    }
    if (kind == "flag") {
        if (param < 0) throw SchemaError("space 'flag' needs a parameter, e.g. flag:3");
        return gen_flag(param);
    }
    if (param >= 0) throw SchemaError("space '" + kind + "' does not take a parameter");
    if (kind == "cp1xcp1_twisted") return gen_cp1xcp1_twisted();
    if (kind == "blowup_cp2") return gen_blowup_cp2();
    throw SchemaError("unknown space '" + kind +
                      "' (available: cpn:N, flag:N, cp1xcp1_twisted, blowup_cp2)");
}

} // namespace gkm
