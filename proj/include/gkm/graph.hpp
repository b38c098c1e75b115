#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/linear_form.hpp"
#include "gkm/polynomial.hpp"

namespace gkm {

// Fixed point of the torus action: an id plus the moment image, which lives
// in t* and is therefore stored as a linear form.
struct Vertex {
    std::string id;
    LinearForm phi;
};

struct EdgeRef {
    int from = -1;
    int to = -1;
    bool operator==(const EdgeRef&) const = default;
};

// Labelled graph of fixed points and invariant spheres. Both orientations of
// every geometric edge are stored, with opposite weights; the constructor
// API enforces that, so only document loading has to worry about explicit
// reverse pairs.
class GkmGraph {
  public:
    explicit GkmGraph(int dim_t) : dim_t_(dim_t) {
        if (dim_t < 1) throw SchemaError("dim_t must be positive");
    }

    int dim_t() const { return dim_t_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }

    int add_vertex(const std::string& id, LinearForm phi) {
        if (id.empty()) throw SchemaError("empty vertex id");
        if (index_.count(id)) throw SchemaError("duplicate vertex id '" + id + "'");
        if (phi.dim() != dim_t_)
            throw SchemaError("vertex '" + id + "': moment image has dimension " +
                              std::to_string(phi.dim()) + ", expected " + std::to_string(dim_t_));
        int idx = num_vertices();
        index_.emplace(id, idx);
        vertices_.push_back(Vertex{id, std::move(phi)});
        adj_.emplace_back();
        return idx;
    }

    // Adds a geometric edge: both orientations, the reverse with the negated
    // weight.
    void add_edge(int from, int to, const Weight& w) {
        check_vertex(from);
        check_vertex(to);
        if (from == to) throw SchemaError("self loop at '" + vertices_[static_cast<size_t>(from)].id + "'");
        if (w.dim() != dim_t_)
            throw SchemaError("edge weight has dimension " + std::to_string(w.dim()) + ", expected " +
                              std::to_string(dim_t_));
        if (w.is_zero()) throw SchemaError("zero weight on edge " + edge_name(from, to));
        if (weights_.count({from, to})) throw SchemaError("duplicate edge " + edge_name(from, to));
        weights_.emplace(std::make_pair(from, to), w);
        weights_.emplace(std::make_pair(to, from), -w);
        insert_neighbor(from, to);
        insert_neighbor(to, from);
    }
    void add_edge(const std::string& from, const std::string& to, const Weight& w) {
        add_edge(vertex_index(from), vertex_index(to), w);
    }

    const Vertex& vertex(int i) const {
        check_vertex(i);
        return vertices_[static_cast<size_t>(i)];
    }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    int vertex_index(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw SchemaError("unknown vertex id '" + id + "'");
        return it->second;
    }
    bool has_vertex(const std::string& id) const { return index_.count(id) > 0; }

    bool has_edge(int from, int to) const { return weights_.count({from, to}) > 0; }

    const Weight& weight(int from, int to) const {
        auto it = weights_.find({from, to});
        if (it == weights_.end()) throw SchemaError("no edge " + edge_name(from, to));
        return it->second;
    }

    // Neighbor indices sorted by vertex id, so that path enumeration is
    // lexicographic on id sequences.
    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[static_cast<size_t>(v)];
    }

    int valence(int v) const { return static_cast<int>(neighbors(v).size()); }

    // All directed edges sorted by (from, to) document index.
    std::vector<EdgeRef> directed_edges() const {
        std::vector<EdgeRef> out;
        out.reserve(weights_.size());
        for (const auto& [key, w] : weights_) out.push_back({key.first, key.second});
        return out;
    }

    // One representative per geometric edge, the orientation with the
    // smaller document index first.
    std::vector<EdgeRef> geometric_edges() const {
        std::vector<EdgeRef> out;
        out.reserve(weights_.size() / 2);
        for (const auto& [key, w] : weights_)
            if (key.first < key.second) out.push_back({key.first, key.second});
        return out;
    }

    std::string edge_name(int from, int to) const {
        auto nm = [&](int v) {
            return v >= 0 && v < num_vertices() ? vertices_[static_cast<size_t>(v)].id
                                                : "#" + std::to_string(v);
        };
        return "(" + nm(from) + ", " + nm(to) + ")";
    }

    bool operator==(const GkmGraph& o) const {
        if (dim_t_ != o.dim_t_ || vertices_.size() != o.vertices_.size()) return false;
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i].id != o.vertices_[i].id || !(vertices_[i].phi == o.vertices_[i].phi))
                return false;
        return weights_ == o.weights_;
    }

  private:
    void check_vertex(int i) const {
        if (i < 0 || i >= num_vertices())
            throw SchemaError("vertex index " + std::to_string(i) + " out of range");
    }
    void insert_neighbor(int v, int n) {
        auto& lst = adj_[static_cast<size_t>(v)];
        auto pos = std::lower_bound(lst.begin(), lst.end(), n, [&](int a, int b) {
            return vertices_[static_cast<size_t>(a)].id < vertices_[static_cast<size_t>(b)].id;
        });
        lst.insert(pos, n);
    }

    int dim_t_;
    std::vector<Vertex> vertices_;
    std::map<std::string, int> index_;
    std::map<std::pair<int, int>, Weight> weights_;
    std::vector<std::vector<int>> adj_;
};

// ----- validation ----------------------------------------------------------

struct Violation {
    std::string kind;   // "valence" | "weight-independence" | "positive-multiple"
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> items;

    void add(std::string kind, std::string detail) {
        ok = false;
        items.push_back({std::move(kind), std::move(detail)});
    }
};

// Checks the axioms a well-formed graph of fixed-point data satisfies:
// constant valence, pairwise linearly independent weights at every vertex,
// and the moment difference along each edge being a positive rational
// multiple of the edge weight.
inline ValidationReport validate(const GkmGraph& g) {
    ValidationReport report;
    const int n = g.num_vertices();
    if (n == 0) {
        report.add("valence", "graph has no vertices");
        return report;
    }
    int d = g.valence(0);
    for (int v = 0; v < n; ++v) {
        if (g.valence(v) != d)
            report.add("valence", "vertex '" + g.vertex(v).id + "' has valence " +
                                      std::to_string(g.valence(v)) + ", expected " + std::to_string(d) +
                                      " as at '" + g.vertex(0).id + "'");
        const auto& nb = g.neighbors(v);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                const Weight& a = g.weight(v, nb[i]);
                const Weight& b = g.weight(v, nb[j]);
                if (a.parallel_to(b))
                    report.add("weight-independence",
                               "at vertex '" + g.vertex(v).id + "': weights toward '" +
                                   g.vertex(nb[i]).id + "' and '" + g.vertex(nb[j]).id +
                                   "' are linearly dependent");
            }
    }
    for (const auto& e : g.geometric_edges()) {
        LinearForm diff = g.vertex(e.to).phi - g.vertex(e.from).phi;
        auto c = diff.ratio_to(g.weight(e.from, e.to).to_linear_form());
        if (!c || *c <= 0)
            report.add("positive-multiple",
                       "edge " + g.edge_name(e.from, e.to) +
                           ": moment difference is not a positive multiple of the weight");
    }
    return report;
}

// ----- flow-closure sets ----------------------------------------------------

namespace detail {

inline void check_generic_at(const GkmGraph& g, const DirectionVector& xi, int v) {
    for (int nb : g.neighbors(v))
        if (g.weight(v, nb).pairing(xi) == 0)
            throw NonGenericDirection("weight on edge " + g.edge_name(v, nb) +
                                          " pairs to zero with the direction",
                                      g.edge_name(v, nb));
}

inline std::set<int> closure(const GkmGraph& g, const DirectionVector& xi, int start, bool ascending) {
    if (xi.dim() != g.dim_t()) throw DimensionMismatch("direction dimension differs from dim_t");
    std::set<int> seen{start};
    std::vector<int> frontier{start};
    while (!frontier.empty()) {
        int v = frontier.back();
        frontier.pop_back();
        check_generic_at(g, xi, v);
        for (int nb : g.neighbors(v)) {
            Rational pr = g.weight(v, nb).pairing(xi);
            bool forward = ascending ? pr > 0 : pr < 0;
            if (forward && seen.insert(nb).second) frontier.push_back(nb);
        }
    }
    return seen;
}

} // namespace detail

// Vertices reachable from p along ascending edges (p included).
inline std::set<int> stable_set(const GkmGraph& g, const DirectionVector& xi, int p) {
    return detail::closure(g, xi, p, true);
}

// Vertices reachable from p along descending edges (p included).
inline std::set<int> unstable_set(const GkmGraph& g, const DirectionVector& xi, int p) {
    return detail::closure(g, xi, p, false);
}

// ----- graphviz export ------------------------------------------------------

// Renders one drawn edge per geometric edge, labelled by its weight. With a
// direction, vertices are ranked by the Morse value and edges are oriented
// ascending; the direction must then be generic.
inline std::string export_dot(const GkmGraph& g, const std::optional<DirectionVector>& xi = std::nullopt) {
    std::ostringstream os;
    auto label = [&](const Weight& w) {
        return Polynomial::from_linear_form(w.to_linear_form()).to_string();
    };
    if (!xi) {
        os << "graph gkm {\n  node [shape=ellipse];\n";
        for (const auto& v : g.vertices()) os << "  \"" << v.id << "\";\n";
        for (const auto& e : g.geometric_edges())
            os << "  \"" << g.vertex(e.from).id << "\" -- \"" << g.vertex(e.to).id << "\" [label=\""
               << label(g.weight(e.from, e.to)) << "\"];\n";
        os << "}\n";
        return os.str();
    }
    if (xi->dim() != g.dim_t()) throw DimensionMismatch("direction dimension differs from dim_t");
    for (int v = 0; v < g.num_vertices(); ++v) detail::check_generic_at(g, *xi, v);

    os << "digraph gkm {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    for (const auto& v : g.vertices()) os << "  \"" << v.id << "\";\n";
    // group vertices of equal Morse value, lowest rank first
    std::map<Rational, std::vector<int>> levels;
    for (int v = 0; v < g.num_vertices(); ++v) levels[g.vertex(v).phi.pairing(*xi)].push_back(v);
    for (const auto& [psi, vs] : levels) {
        os << "  { rank=same;";
        for (int v : vs) os << " \"" << g.vertex(v).id << "\";";
        os << " }\n";
    }
    for (const auto& e : g.geometric_edges()) {
        bool up = g.weight(e.from, e.to).pairing(*xi) > 0;
        int a = up ? e.from : e.to;
        int b = up ? e.to : e.from;
        os << "  \"" << g.vertex(a).id << "\" -> \"" << g.vertex(b).id << "\" [label=\""
           << label(g.weight(a, b)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace gkm
