#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gkm/class_table.hpp"
#include "gkm/errors.hpp"
#include "gkm/graph.hpp"

namespace gkm {

using Json = nlohmann::ordered_json;

// Thetas of the one-step restrictions, keyed by directed edge (from, to).
using ThetaTable = std::map<std::pair<int, int>, long long>;

namespace detail {

inline Rational rational_from_json(const Json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
    throw SchemaError(where + " must be an integer or a rational string");
}

inline int vertex_index_or_throw(const GkmGraph& g, const std::string& id, const std::string& where) {
    if (!g.has_vertex(id)) throw SchemaError(where + " names unknown vertex '" + id + "'");
    return g.vertex_index(id);
}

} // namespace detail

inline Json graph_to_json(const GkmGraph& g) {
    Json j;
    j["dim_t"] = g.dim_t();
    j["vertices"] = Json::array();
    for (const auto& v : g.vertices()) {
        Json jv;
        jv["id"] = v.id;
        Json phi = Json::array();
        for (int i = 0; i < g.dim_t(); ++i) phi.push_back(to_string(v.phi[i]));
        jv["phi"] = std::move(phi);
        j["vertices"].push_back(std::move(jv));
    }
    j["edges"] = Json::array();
    for (const auto& e : g.geometric_edges()) {
        Json je;
        je["from"] = g.vertex(e.from).id;
        je["to"] = g.vertex(e.to).id;
        Json w = Json::array();
        const Weight& wt = g.weight(e.from, e.to);
        for (int i = 0; i < g.dim_t(); ++i) w.push_back(wt[i]);
        je["weight"] = std::move(w);
        j["edges"].push_back(std::move(je));
    }
    return j;
}

inline GkmGraph graph_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("graph document must be a JSON object");
    if (!j.contains("dim_t") || !j["dim_t"].is_number_integer())
        throw SchemaError("graph document needs an integer 'dim_t'");
    const int dim = j["dim_t"].get<int>();
    if (dim < 1) throw SchemaError("'dim_t' must be at least 1");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw SchemaError("graph document needs a 'vertices' array");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw SchemaError("graph document needs an 'edges' array");

    GkmGraph g(dim);
    try {
        for (const auto& jv : j["vertices"]) {
            if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_string())
                throw SchemaError("each vertex needs a string 'id'");
            const std::string id = jv["id"].get<std::string>();
            if (!jv.contains("phi") || !jv["phi"].is_array() ||
                jv["phi"].size() != static_cast<size_t>(dim))
                throw SchemaError("vertex '" + id + "' needs a 'phi' array of length " +
                                  std::to_string(dim));
            std::vector<Rational> phi;
            phi.reserve(static_cast<size_t>(dim));
            for (const auto& c : jv["phi"])
                phi.push_back(detail::rational_from_json(c, "phi entry of vertex '" + id + "'"));
            g.add_vertex(id, LinearForm(std::move(phi)));
        }
        for (const auto& je : j["edges"]) {
            if (!je.is_object() || !je.contains("from") || !je.contains("to") ||
                !je["from"].is_string() || !je["to"].is_string())
                throw SchemaError("each edge needs string 'from' and 'to' fields");
            const std::string fid = je["from"].get<std::string>();
            const std::string tid = je["to"].get<std::string>();
            const int from = detail::vertex_index_or_throw(g, fid, "edge 'from'");
            const int to = detail::vertex_index_or_throw(g, tid, "edge 'to'");
            if (!je.contains("weight") || !je["weight"].is_array() ||
                je["weight"].size() != static_cast<size_t>(dim))
                throw SchemaError("edge (" + fid + ", " + tid + ") needs a 'weight' array of length " +
                                  std::to_string(dim));
            std::vector<int64_t> w;
            w.reserve(static_cast<size_t>(dim));
            for (const auto& c : je["weight"]) {
                if (!c.is_number_integer() && !c.is_number_unsigned())
                    throw SchemaError("weight entries of edge (" + fid + ", " + tid +
                                      ") must be integers");
                w.push_back(c.get<int64_t>());
            }
            const Weight wt(std::move(w));
            if (g.has_edge(from, to)) {
                // A document may spell out both orientations; they must agree.
                if (!(g.weight(from, to) == wt))
                    throw SchemaError("edge (" + fid + ", " + tid +
                                      ") listed twice with inconsistent weights");
                continue;
            }
            g.add_edge(from, to, wt);
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(std::string("invalid graph data: ") + e.what());
    }
    return g;
}

inline Json class_values_to_json(const GkmGraph& g, const ClassValues& values) {
    if (values.size() != static_cast<size_t>(g.num_vertices()))
        throw DimensionMismatch("class values do not cover every vertex");
    Json vals;
    for (int v = 0; v < g.num_vertices(); ++v)
        vals[g.vertex(v).id] = values[static_cast<size_t>(v)].to_string();
    return vals;
}

inline Json class_table_to_json(const GkmGraph& g, const ClassTable& t) {
    Json j;
    j["owner"] = g.vertex(t.owner).id;
    j["degree"] = t.degree;
    j["values"] = class_values_to_json(g, t.values);
    return j;
}

inline ClassValues class_values_from_json(const GkmGraph& g, const Json& j) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
        throw SchemaError("class document needs a 'values' object");
    ClassValues out(static_cast<size_t>(g.num_vertices()),
                    Polynomial::constant(g.dim_t(), Rational(0)));
    for (const auto& [id, text] : j["values"].items()) {
        const int v = detail::vertex_index_or_throw(g, id, "class value key");
        if (!text.is_string()) throw SchemaError("class value at '" + id + "' must be a string");
        out[static_cast<size_t>(v)] = Polynomial::parse(g.dim_t(), text.get<std::string>());
    }
    return out;
}

// 'owner' and 'degree' are optional on input; absent fields come back as -1.
inline ClassTable class_table_from_json(const GkmGraph& g, const Json& j) {
    ClassTable t;
    t.owner = -1;
    t.degree = -1;
    if (j.is_object() && j.contains("owner")) {
        if (!j["owner"].is_string()) throw SchemaError("'owner' must be a vertex id string");
        t.owner = detail::vertex_index_or_throw(g, j["owner"].get<std::string>(), "'owner'");
    }
    if (j.is_object() && j.contains("degree")) {
        if (!j["degree"].is_number_integer() || j["degree"].get<int>() < 0)
            throw SchemaError("'degree' must be a nonnegative integer");
        t.degree = j["degree"].get<int>();
    }
    t.values = class_values_from_json(g, j);
    return t;
}

inline Json theta_table_to_json(const GkmGraph& g, const ThetaTable& thetas) {
    Json j;
    j["edges"] = Json::array();
    for (const auto& [edge, theta] : thetas) {
        Json je;
        je["from"] = g.vertex(edge.first).id;
        je["to"] = g.vertex(edge.second).id;
        je["theta"] = theta;
        j["edges"].push_back(std::move(je));
    }
    return j;
}

inline ThetaTable theta_table_from_json(const GkmGraph& g, const Json& j) {
    if (!j.is_object() || !j.contains("edges") || !j["edges"].is_array())
        throw SchemaError("theta document needs an 'edges' array");
    ThetaTable out;
    for (const auto& je : j["edges"]) {
        if (!je.is_object() || !je.contains("from") || !je.contains("to") ||
            !je.contains("theta") || !je["theta"].is_number_integer())
            throw SchemaError("each theta entry needs 'from', 'to' and an integer 'theta'");
        const int from = detail::vertex_index_or_throw(g, je["from"].get<std::string>(), "theta 'from'");
        const int to = detail::vertex_index_or_throw(g, je["to"].get<std::string>(), "theta 'to'");
        if (!out.emplace(std::make_pair(from, to), je["theta"].get<long long>()).second)
            throw SchemaError("duplicate theta entry for edge (" + je["from"].get<std::string>() +
                              ", " + je["to"].get<std::string>() + ")");
    }
    return out;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open file '" + path + "' for writing");
    out << text;
    if (!out) throw SchemaError("failed writing '" + path + "'");
}

} // namespace gkm
