// gkm — command-line front end for the canonical-class library.
//
// Subcommands: validate, morse, theta, canonical, duals, structconsts,
// solve, billey, robust, dot. The graph comes from a built-in space
// (--space kind[:n]) or a JSON document (--file); math subcommands take the
// Morse direction via --xi. Exit codes: 0 success (including a determinate
// "infeasible" answer from solve), 1 bad input or I/O, 2 mathematical
// refusal (graph axioms, genericity, or the index-increasing hypothesis
// fail). Reports go to stdout (or --output); errors go to stderr, as JSON
// when --format json. Output is deterministic for identical inputs. The
// GKM_THREADS environment variable caps internal parallelism.

#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <gkm/canonical.hpp>
#include <gkm/io.hpp>
#include <gkm/morse.hpp>
#include <gkm/oracle.hpp>
#include <gkm/permutation.hpp>
#include <gkm/spaces.hpp>

namespace {

using gkm::Json;

struct CommonOpts {
    std::string space;
    std::string file;
    std::string xi;
    std::string format = "json";
    std::string output;
};

void add_graph_options(CLI::App* cmd, CommonOpts& o, bool needs_xi) {
    auto* space = cmd->add_option(
        "--space", o.space, "built-in space: cpn:N, flag:N, cp1xcp1_twisted, blowup_cp2");
    auto* file = cmd->add_option("--file", o.file, "path of a JSON graph document");
    space->excludes(file);
    file->excludes(space);
    if (needs_xi)
        cmd->add_option("--xi", o.xi, "Morse direction: comma-separated rationals, e.g. 0,-1,-2")
            ->required();
    cmd->add_option("--output", o.output, "write the report to this file instead of stdout");
}

void add_format_option(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "report format: json or text (default json)")
        ->check(CLI::IsMember({"json", "text"}));
}

gkm::GkmGraph load_graph(const CommonOpts& o) {
    if (o.space.empty() == o.file.empty())
        throw gkm::SchemaError("exactly one of --space or --file is required");
    if (!o.space.empty()) return gkm::make_space(o.space).graph;
    return gkm::graph_from_json(gkm::read_json_file(o.file));
}

gkm::DirectionVector parse_xi(const std::string& text) {
    std::vector<gkm::Rational> c;
    size_t start = 0;
    while (true) {
        const size_t comma = text.find(',', start);
        c.push_back(gkm::parse_rational(
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return gkm::DirectionVector(std::move(c));
}

int vertex_id_or_throw(const gkm::GkmGraph& g, const std::string& id, const char* flag) {
    if (!g.has_vertex(id))
        throw gkm::SchemaError(std::string(flag) + " names unknown vertex '" + id + "'");
    return g.vertex_index(id);
}

// One-line permutations: a digit string like "213", or comma-separated values
// like "2,1,3" when n has more than one digit.
gkm::Permutation parse_permutation(const std::string& text, const char* flag) {
    gkm::Permutation p;
    if (text.find(',') != std::string::npos) {
        size_t start = 0;
        while (true) {
            const size_t comma = text.find(',', start);
            const std::string piece =
                text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            try {
                p.push_back(std::stoi(piece));
            } catch (const std::exception&) {
                throw gkm::SchemaError(std::string(flag) + ": bad entry '" + piece + "'");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else {
        for (char ch : text) {
            if (ch < '1' || ch > '9')
                throw gkm::SchemaError(std::string(flag) + ": bad one-line permutation '" + text +
                                       "' (digits 1-9 or a comma-separated list)");
            p.push_back(ch - '0');
        }
    }
    if (!gkm::perm_valid(p))
        throw gkm::SchemaError(std::string(flag) + ": '" + text + "' is not a permutation");
    return p;
}

// Graph axioms are checked before any math runs; a violation is a
// mathematical refusal, not a schema problem.
void require_valid(const gkm::GkmGraph& g) {
    const gkm::ValidationReport report = gkm::validate(g);
    if (report.ok) return;
    std::string msg = "the graph fails the fixed-point graph axioms:";
    for (const auto& item : report.items) msg += " [" + item.kind + "] " + item.detail + ";";
    msg.pop_back();
    throw gkm::GraphInvalid(msg);
}

void emit(const CommonOpts& o, const std::string& body) {
    if (o.output.empty())
        std::cout << body;
    else
        gkm::write_text_file(o.output, body);
}

void emit_report(const CommonOpts& o, const Json& j, const std::string& text) {
    emit(o, o.format == "json" ? j.dump(2) + "\n" : text);
}

int report_error(const std::string& format, const std::string& kind, const std::string& message,
                 int code, const Json& extra = Json::object()) {
    if (format == "json") {
        Json j;
        j["error"]["kind"] = kind;
        j["error"]["message"] = message;
        for (const auto& [k, v] : extra.items()) j["error"][k] = v;
        std::cerr << j.dump(2) << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
    return code;
}

// Translates library exceptions into the documented exit codes.
int guarded(const std::string& format, const std::function<int()>& body) {
    try {
        return body();
    } catch (const gkm::SchemaError& e) {
        return report_error(format, "schema", e.what(), 1);
    } catch (const gkm::DimensionMismatch& e) {
        return report_error(format, "dimension-mismatch", e.what(), 1);
    } catch (const gkm::IndexNotIncreasing& e) {
        Json extra;
        extra["edges"] = Json::array();
        std::string msg = "index-increasing hypothesis fails:";
        for (const auto& [a, b] : e.violations) {
            extra["edges"].push_back(Json{{"from", a}, {"to", b}});
            msg += " (" + a + ", " + b + ")";
        }
        return report_error(format, "index-not-increasing", msg, 2, extra);
    } catch (const gkm::NonGenericDirection& e) {
        Json extra;
        extra["edge"] = e.witness_edge;
        return report_error(format, "non-generic-direction", e.what(), 2, extra);
    } catch (const gkm::NonIntegerTheta& e) {
        Json extra;
        extra["edge"] = e.edge;
        return report_error(format, "non-integer-theta", e.what(), 2, extra);
    } catch (const gkm::UniquenessViolation& e) {
        Json extra;
        extra["free_parameters"] = e.free_parameters;
        return report_error(format, "uniqueness-violation", e.what(), 2, extra);
    } catch (const gkm::GraphInvalid& e) {
        return report_error(format, "invalid-graph", e.what(), 2);
    } catch (const gkm::Error& e) {
        return report_error(format, "internal", e.what(), 1);
    } catch (const std::exception& e) {
        return report_error(format, "internal", e.what(), 1);
    }
}

// ----- report rendering --------------------------------------------------------

std::string class_table_text(const gkm::GkmGraph& g, const gkm::ClassTable& t, const char* label) {
    std::string out = std::string(label) + " " + g.vertex(t.owner).id + " (degree " +
                      std::to_string(t.degree) + ")\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        out += "  " + g.vertex(v).id + ": " + t.values[static_cast<size_t>(v)].to_string() + "\n";
    return out;
}

int run_validate(const CommonOpts& o) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::ValidationReport report = gkm::validate(g);
    Json j;
    j["ok"] = report.ok;
    j["violations"] = Json::array();
    std::string text = report.ok ? "valid\n" : "invalid\n";
    for (const auto& item : report.items) {
        j["violations"].push_back(Json{{"kind", item.kind}, {"detail", item.detail}});
        text += item.kind + ": " + item.detail + "\n";
    }
    emit_report(o, j, text);
    return 0;
}

int run_morse(const CommonOpts& o) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::DirectionVector xi = parse_xi(o.xi);
    require_valid(g);
    const gkm::MorseData m = gkm::morse_data(g, xi);
    const gkm::IndexCheck idx = gkm::is_index_increasing(g, m);

    Json j;
    j["xi"] = Json::array();
    for (const auto& c : xi.coords()) j["xi"].push_back(gkm::to_string(c));
    j["index_increasing"] = idx.ok;
    j["violations"] = Json::array();
    for (const auto& v : idx.violations)
        j["violations"].push_back(
            Json{{"from", g.vertex(v.edge.from).id}, {"to", g.vertex(v.edge.to).id}});
    j["vertices"] = Json::array();

    std::string text = "index increasing: " + std::string(idx.ok ? "yes" : "no") + "\n";
    for (const auto& v : idx.violations)
        text += "  violation: " + g.edge_name(v.edge.from, v.edge.to) + "\n";
    for (int v = 0; v < g.num_vertices(); ++v) {
        const gkm::VertexMorse& vm = m[v];
        Json jv;
        jv["id"] = g.vertex(v).id;
        jv["psi"] = gkm::to_string(vm.psi);
        jv["lambda"] = vm.lambda;
        jv["lambda_minus"] = vm.lambda_minus.to_string();
        jv["lambda_plus"] = vm.lambda_plus.to_string();
        j["vertices"].push_back(std::move(jv));
        text += g.vertex(v).id + ": psi = " + gkm::to_string(vm.psi) +
                ", lambda = " + std::to_string(vm.lambda) + "\n";
        text += "  lambda- = " + vm.lambda_minus.to_string() + "\n";
        text += "  lambda+ = " + vm.lambda_plus.to_string() + "\n";
    }
    emit_report(o, j, text);
    return 0;
}

int run_theta(const CommonOpts& o, const std::string& method) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::DirectionVector xi = parse_xi(o.xi);
    require_valid(g);
    const gkm::MorseData m = gkm::morse_data(g, xi);
    const gkm::ThetaMethod tm = method == "projection" ? gkm::ThetaMethod::projection
                                : method == "modular"  ? gkm::ThetaMethod::modular
                                                       : gkm::ThetaMethod::cross_checked;
    const gkm::ThetaTable thetas = gkm::compute_thetas(g, m, tm);
    std::string text;
    for (const auto& [edge, theta] : thetas)
        text += g.edge_name(edge.first, edge.second) + ": " + std::to_string(theta) + "\n";
    emit_report(o, gkm::theta_table_to_json(g, thetas), text);
    return 0;
}

int run_canonical(const CommonOpts& o, const std::string& vertex) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::DirectionVector xi = parse_xi(o.xi);
    require_valid(g);
    const gkm::MorseData m = gkm::morse_data(g, xi);
    const gkm::CanonicalGraph cg = gkm::one_step_restrictions(g, m);
    if (!vertex.empty()) {
        const int p = vertex_id_or_throw(g, vertex, "--vertex");
        const gkm::ClassTable t = gkm::canonical_table(g, m, cg, p);
        emit_report(o, gkm::class_table_to_json(g, t), class_table_text(g, t, "class"));
        return 0;
    }
    Json j = Json::array();
    std::string text;
    for (const gkm::ClassTable& t : gkm::canonical_tables(g, m, cg)) {
        j.push_back(gkm::class_table_to_json(g, t));
        text += class_table_text(g, t, "class");
    }
    emit_report(o, j, text);
    return 0;
}

int run_duals(const CommonOpts& o, const std::string& vertex) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::DirectionVector xi = parse_xi(o.xi);
    require_valid(g);
    const gkm::MorseData m = gkm::morse_data(g, xi);
    const gkm::CanonicalGraph cg = gkm::one_step_restrictions(g, m);
    if (!vertex.empty()) {
        const int q = vertex_id_or_throw(g, vertex, "--vertex");
        const gkm::ClassTable t = gkm::dual_table(g, m, cg, q);
        emit_report(o, gkm::class_table_to_json(g, t), class_table_text(g, t, "dual class"));
        return 0;
    }
    Json j = Json::array();
    std::string text;
    for (const gkm::ClassTable& t : gkm::dual_tables(g, m, cg)) {
        j.push_back(gkm::class_table_to_json(g, t));
        text += class_table_text(g, t, "dual class");
    }
    emit_report(o, j, text);
    return 0;
}

int run_structconsts(const CommonOpts& o, const std::string& pid, const std::string& qid) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::DirectionVector xi = parse_xi(o.xi);
    require_valid(g);
    const gkm::MorseData m = gkm::morse_data(g, xi);
    const int p = vertex_id_or_throw(g, pid, "--p");
    const int q = vertex_id_or_throw(g, qid, "--q");
    const gkm::CanonicalGraph cg = gkm::one_step_restrictions(g, m);
    const auto alphas = gkm::canonical_tables(g, m, cg);
    const auto betas = gkm::dual_tables(g, m, cg);
    const std::vector<gkm::Polynomial> c = gkm::structure_constants(g, m, alphas, betas, p, q);

    Json j;
    j["p"] = g.vertex(p).id;
    j["q"] = g.vertex(q).id;
    j["constants"] = Json::object();
    std::string text;
    for (int r = 0; r < g.num_vertices(); ++r) {
        j["constants"][g.vertex(r).id] = c[static_cast<size_t>(r)].to_string();
        text += "c[" + g.vertex(p).id + "," + g.vertex(q).id + ";" + g.vertex(r).id +
                "] = " + c[static_cast<size_t>(r)].to_string() + "\n";
    }
    emit_report(o, j, text);
    return 0;
}

int run_solve(const CommonOpts& o, const std::string& vertex) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::DirectionVector xi = parse_xi(o.xi);
    const int p = vertex_id_or_throw(g, vertex, "--vertex");
    try {
        const gkm::ClassTable t = gkm::solve_canonical_linear(g, xi, p);
        Json j;
        j["status"] = "solved";
        j["class"] = gkm::class_table_to_json(g, t);
        emit_report(o, j, "solved\n" + class_table_text(g, t, "class"));
    } catch (const gkm::Infeasible& e) {
        Json j;
        j["status"] = "infeasible";
        j["message"] = e.what();
        j["certificate"] = Json::array();
        for (const auto& c : e.certificate) j["certificate"].push_back(gkm::to_string(c));
        j["conflict_rows"] = e.conflict_rows;
        std::string text = "infeasible\n" + std::string(e.what()) + "\n";
        for (const auto& row : e.conflict_rows) text += "  conflicts: " + row + "\n";
        emit_report(o, j, text);
    }
    return 0;
}

int run_billey(const CommonOpts& o, int n, const std::string& sigma_text,
               const std::string& mu_text) {
    const gkm::Permutation sigma = parse_permutation(sigma_text, "--sigma");
    const gkm::Permutation mu = parse_permutation(mu_text, "--mu");
    const gkm::Polynomial value = gkm::billey_restrict(n, sigma, mu);
    Json j;
    j["n"] = n;
    j["sigma"] = gkm::perm_id(sigma);
    j["mu"] = gkm::perm_id(mu);
    j["value"] = value.to_string();
    emit_report(o, j, value.to_string() + "\n");
    return 0;
}

int run_robust(const CommonOpts& o, const std::string& class_file) {
    const gkm::GkmGraph g = load_graph(o);
    const gkm::DirectionVector xi = parse_xi(o.xi);
    require_valid(g);
    const gkm::MorseData m = gkm::morse_data(g, xi);
    const gkm::ClassValues values =
        gkm::class_values_from_json(g, gkm::read_json_file(class_file));
    const gkm::RobustReport report = gkm::robust_divisibility_report(g, m, values);

    Json j;
    j["ok"] = report.ok;
    j["vertices"] = Json::array();
    std::string text = std::string(report.ok ? "ok" : "fail") + "\n";
    for (const gkm::RobustEntry& entry : report.at) {
        Json je;
        je["id"] = g.vertex(entry.vertex).id;
        je["ok"] = entry.ok;
        je["factors"] = Json::array();
        std::string factors;
        for (int s : entry.factor_sources) {
            je["factors"].push_back(g.vertex(s).id);
            factors += (factors.empty() ? "" : ", ") + g.vertex(s).id;
        }
        text += g.vertex(entry.vertex).id + ": factors = [" + factors + "]";
        if (entry.ok) {
            je["quotient"] = entry.quotient.to_string();
            text += ", quotient = " + entry.quotient.to_string() + "\n";
        } else {
            je["note"] = entry.note;
            text += ", FAIL: " + entry.note + "\n";
        }
        j["vertices"].push_back(std::move(je));
    }
    emit_report(o, j, text);
    return 0;
}

int run_dot(const CommonOpts& o) {
    const gkm::GkmGraph g = load_graph(o);
    std::optional<gkm::DirectionVector> xi;
    if (!o.xi.empty()) xi = parse_xi(o.xi);
    emit(o, gkm::export_dot(g, xi));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical equivariant cohomology classes on GKM fixed-point graphs"};
    app.require_subcommand(1);

    CommonOpts vo;
    auto* validate_cmd = app.add_subcommand("validate", "check the fixed-point graph axioms");
    add_graph_options(validate_cmd, vo, false);
    add_format_option(validate_cmd, vo);

    CommonOpts mo;
    auto* morse_cmd =
        app.add_subcommand("morse", "Morse values, indices and weight products along a direction");
    add_graph_options(morse_cmd, mo, true);
    add_format_option(morse_cmd, mo);

    CommonOpts to;
    std::string theta_method = "both";
    auto* theta_cmd = app.add_subcommand(
        "theta", "interpolation constants of the ascending index-step-one edges");
    add_graph_options(theta_cmd, to, true);
    add_format_option(theta_cmd, to);
    theta_cmd->add_option("--method", theta_method, "projection, modular, or both (cross-checked)")
        ->check(CLI::IsMember({"projection", "modular", "both"}));

    CommonOpts co;
    std::string canonical_vertex;
    auto* canonical_cmd =
        app.add_subcommand("canonical", "canonical class tables via the ascending-path formula");
    add_graph_options(canonical_cmd, co, true);
    add_format_option(canonical_cmd, co);
    canonical_cmd->add_option("--vertex", canonical_vertex, "only the class of this vertex id");

    CommonOpts duo;
    std::string dual_vertex;
    auto* duals_cmd = app.add_subcommand("duals", "dual class tables (evaluation classes)");
    add_graph_options(duals_cmd, duo, true);
    add_format_option(duals_cmd, duo);
    duals_cmd->add_option("--vertex", dual_vertex, "only the dual class of this vertex id");

    CommonOpts so;
    std::string sc_p, sc_q;
    auto* structconsts_cmd = app.add_subcommand(
        "structconsts", "expansion of a product of two canonical classes in the canonical basis");
    add_graph_options(structconsts_cmd, so, true);
    add_format_option(structconsts_cmd, so);
    structconsts_cmd->add_option("--p", sc_p, "first factor's vertex id")->required();
    structconsts_cmd->add_option("--q", sc_q, "second factor's vertex id")->required();

    CommonOpts lo;
    std::string solve_vertex;
    auto* solve_cmd = app.add_subcommand(
        "solve", "canonical class by exact linear algebra, or an infeasibility certificate");
    add_graph_options(solve_cmd, lo, true);
    add_format_option(solve_cmd, lo);
    solve_cmd->add_option("--vertex", solve_vertex, "vertex id whose class to solve for")
        ->required();

    CommonOpts bo;
    int billey_n = 0;
    std::string billey_sigma, billey_mu;
    auto* billey_cmd = app.add_subcommand(
        "billey", "restriction of a Schubert class to a fixed point via subword counting");
    billey_cmd->add_option("--n", billey_n, "number of strands")->required();
    billey_cmd->add_option("--sigma", billey_sigma, "class permutation, one-line, e.g. 213")
        ->required();
    billey_cmd->add_option("--mu", billey_mu, "evaluation permutation, one-line, e.g. 321")
        ->required();
    billey_cmd->add_option("--output", bo.output, "write the report to this file instead of stdout");
    add_format_option(billey_cmd, bo);

    CommonOpts ro;
    std::string robust_class;
    auto* robust_cmd = app.add_subcommand(
        "robust", "per-vertex divisibility report for a class supplied as a values document");
    add_graph_options(robust_cmd, ro, true);
    add_format_option(robust_cmd, ro);
    robust_cmd->add_option("--class", robust_class, "JSON file with {\"values\": {id: polynomial}}")
        ->required();

    CommonOpts doto;
    auto* dot_cmd = app.add_subcommand("dot", "Graphviz export of the graph");
    add_graph_options(dot_cmd, doto, false);
    dot_cmd->add_option("--xi", doto.xi, "orient edges ascending along this direction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (*validate_cmd) return guarded(vo.format, [&] { return run_validate(vo); });
    if (*morse_cmd) return guarded(mo.format, [&] { return run_morse(mo); });
    if (*theta_cmd) return guarded(to.format, [&] { return run_theta(to, theta_method); });
    if (*canonical_cmd)
        return guarded(co.format, [&] { return run_canonical(co, canonical_vertex); });
    if (*duals_cmd) return guarded(duo.format, [&] { return run_duals(duo, dual_vertex); });
    if (*structconsts_cmd)
        return guarded(so.format, [&] { return run_structconsts(so, sc_p, sc_q); });
    if (*solve_cmd) return guarded(lo.format, [&] { return run_solve(lo, solve_vertex); });
    if (*billey_cmd)
        return guarded(bo.format, [&] { return run_billey(bo, billey_n, billey_sigma, billey_mu); });
    if (*robust_cmd) return guarded(ro.format, [&] { return run_robust(ro, robust_class); });
    if (*dot_cmd) return guarded("text", [&] { return run_dot(doto); });
    return 1;
}
