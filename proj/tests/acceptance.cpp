// Acceptance harness: runs the library's top-level guarantees end to end and
// prints one PASS/FAIL line per criterion, with wall-clock time against a
// fixed budget. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gkm/canonical.hpp"
#include "gkm/oracle.hpp"
#include "gkm/spaces.hpp"
#include "support/random_spaces.hpp"

namespace {

using namespace gkm;

void require(bool cond, const std::string& detail) {
    if (!cond) throw std::runtime_error(detail);
}

// The bounded builtin families exercised below.
std::vector<BuiltinSpace> builtin_spaces_all() {
    std::vector<BuiltinSpace> out;
    for (int n = 1; n <= 4; ++n) out.push_back(gen_cpn(n));
    for (int n = 2; n <= 4; ++n) out.push_back(gen_flag(n));
    out.push_back(gen_cp1xcp1_twisted());
    out.push_back(gen_blowup_cp2());
    return out;
}

// The builtins whose ascending edges raise the index by exactly one — the
// standing hypothesis for canonical classes (the blow-up is the counterexample).
std::vector<BuiltinSpace> builtin_spaces_index_increasing() {
    auto out = builtin_spaces_all();
    out.pop_back();
    return out;
}

int psi_minimum(const GkmGraph& g, const MorseData& m) {
    int best = 0;
    for (int v = 1; v < g.num_vertices(); ++v)
        if (m[v].psi < m[best].psi) best = v;
    return best;
}

// ---- criterion bodies -------------------------------------------------------

// 1. Projective spaces: every restriction equals the closed-form product
//    prod_{l<i} (x_l - x_j) when i <= j and vanishes otherwise.
void criterion_cpn_closed_form() {
    for (int n = 1; n <= 6; ++n) {
        const BuiltinSpace sp = gen_cpn(n);
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m);
        const std::vector<ClassTable> tables = canonical_tables(sp.graph, m, cg);
        const int nv = n + 1;
        for (int i = 1; i <= nv; ++i) {
            const int p = sp.graph.vertex_index("p" + std::to_string(i));
            for (int j = 1; j <= nv; ++j) {
                const int q = sp.graph.vertex_index("p" + std::to_string(j));
                Polynomial expected(nv);
                if (i <= j) {
                    expected = Polynomial::one(nv);
                    for (int l = 1; l < i; ++l)
                        expected *= Polynomial::variable(nv, l - 1) - Polynomial::variable(nv, j - 1);
                }
                require(tables[static_cast<size_t>(p)].values[static_cast<size_t>(q)] == expected,
                        "cpn(" + std::to_string(n) + "): value of p" + std::to_string(i) + " at p" +
                            std::to_string(j) + " differs from the closed form");
            }
        }
    }
}

// 2. Flag spaces: every edge constant is 1, the path-formula tables agree with
//    billey_restrict on every pair, and every one-step value is positive.
void criterion_flag_tables() {
    for (int n = 2; n <= 4; ++n) {
        const BuiltinSpace sp = gen_flag(n);
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const ThetaTable thetas = compute_thetas(sp.graph, m);
        for (const auto& [edge, theta] : thetas)
            require(theta == 1, "flag(" + std::to_string(n) + "): edge constant " +
                                    std::to_string(theta) + " on " +
                                    sp.graph.edge_name(edge.first, edge.second));
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m, thetas);
        const std::vector<ClassTable> tables = canonical_tables(sp.graph, m, cg);
        const std::vector<Permutation> perms = all_permutations(n);
        for (const Permutation& sigma : perms) {
            const int p = sp.graph.vertex_index(perm_id(sigma));
            for (const Permutation& mu : perms) {
                const int q = sp.graph.vertex_index(perm_id(mu));
                require(tables[static_cast<size_t>(p)].values[static_cast<size_t>(q)] ==
                            billey_restrict(n, sigma, mu),
                        "flag(" + std::to_string(n) + "): table and billey_restrict differ at (" +
                            perm_id(sigma) + ", " + perm_id(mu) + ")");
            }
        }
        require(positivity_report(cg).all_positive,
                "flag(" + std::to_string(n) + "): a one-step value is not positive");
    }
}

// 3. Blow-up surface: the ascending edge (p2, p3) does not raise the index,
//    and the degree-1 linear system at p2 has no solution.
void criterion_blowup_nonexistence() {
    const BuiltinSpace sp = gen_blowup_cp2();
    const MorseData m = morse_data(sp.graph, sp.default_xi);
    const IndexCheck check = is_index_increasing(sp.graph, m);
    require(!check.ok, "blow-up: index check unexpectedly passed");
    bool listed = false;
    for (const auto& v : check.violations)
        listed = listed || (sp.graph.vertex(v.edge.from).id == "p2" &&
                            sp.graph.vertex(v.edge.to).id == "p3");
    require(listed, "blow-up: violating edge (p2, p3) not listed");
    bool infeasible = false;
    try {
        solve_canonical_linear(sp.graph, sp.default_xi, sp.graph.vertex_index("p2"));
    } catch (const Infeasible& e) {
        infeasible = true;
        require(!e.conflict_rows.empty(), "blow-up: infeasibility carries no conflict rows");
    }
    require(infeasible, "blow-up: linear system at p2 unexpectedly solvable");
}

// 4. Both interpolation methods agree, with nonzero integer values, on every
//    ascending index-step-one edge of every builtin and 50 random graphs.
void criterion_theta_cross_check() {
    std::vector<BuiltinSpace> spaces = builtin_spaces_all();
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
        spaces.push_back(gkm::testing::random_space(seed));
    for (const BuiltinSpace& sp : spaces) {
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const ThetaTable proj = compute_thetas(sp.graph, m, ThetaMethod::projection);
        const ThetaTable mod = compute_thetas(sp.graph, m, ThetaMethod::modular);
        require(proj == mod, sp.name + ": interpolation methods disagree");
        require(!proj.empty(), sp.name + ": no ascending index-step-one edges found");
        for (const auto& [edge, theta] : proj)
            require(theta != 0, sp.name + ": zero value on " +
                                    sp.graph.edge_name(edge.first, edge.second));
    }
}

// 5. The linear-system solver reproduces the path-formula tables vertex by
//    vertex on the projective and flag families.
void criterion_solver_matches_path_formula() {
    std::vector<BuiltinSpace> spaces;
    for (int n = 1; n <= 4; ++n) spaces.push_back(gen_cpn(n));
    for (int n = 2; n <= 3; ++n) spaces.push_back(gen_flag(n));
    for (const BuiltinSpace& sp : spaces) {
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m);
        const std::vector<ClassTable> tables = canonical_tables(sp.graph, m, cg);
        for (int p = 0; p < sp.graph.num_vertices(); ++p) {
            const ClassTable solved = solve_canonical_linear(sp.graph, sp.default_xi, p);
            require(solved == tables[static_cast<size_t>(p)],
                    sp.name + ": solver and path formula differ at " + sp.graph.vertex(p).id);
        }
    }
}

// 6. Canonical and dual classes integrate to the Kronecker delta.
void criterion_dual_orthogonality() {
    for (const BuiltinSpace& sp : {gen_cpn(3), gen_flag(3)}) {
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m);
        const std::vector<ClassTable> alphas = canonical_tables(sp.graph, m, cg);
        const std::vector<ClassTable> betas = dual_tables(sp.graph, m, cg);
        const int nv = sp.graph.num_vertices();
        for (int p = 0; p < nv; ++p)
            for (int q = 0; q < nv; ++q) {
                const Polynomial integral = abbv_integrate(
                    sp.graph, m,
                    pointwise_product(alphas[static_cast<size_t>(p)].values,
                                      betas[static_cast<size_t>(q)].values));
                const Polynomial expected =
                    p == q ? Polynomial::one(sp.graph.dim_t()) : Polynomial(sp.graph.dim_t());
                require(integral == expected,
                        sp.name + ": pairing of " + sp.graph.vertex(p).id + " and " +
                            sp.graph.vertex(q).id + " integrates to " + integral.to_string());
            }
    }
}

// 7. For k distinct linear forms v_1..v_k, the sum over l of
//    prod_{i != l} 1/(v_i - v_l) collapses to zero exactly.
void criterion_partial_fraction_vanishing() {
    std::mt19937_64 rng(20260819u);
    auto small = [&rng]() {
        std::uniform_int_distribution<int> num(-3, 3);
        std::uniform_int_distribution<int> den(1, 2);
        return Rational(num(rng), den(rng));
    };
    for (int instance = 0; instance < 200; ++instance) {
        const int k = 2 + instance % 5;
        const int dim = 2 + instance % 3;
        std::vector<LinearForm> v;
        while (static_cast<int>(v.size()) < k) {
            std::vector<Rational> c(static_cast<size_t>(dim));
            for (auto& x : c) x = small();
            LinearForm f(std::move(c));
            bool fresh = true;
            for (const auto& seen : v) fresh = fresh && !(seen - f).is_zero();
            if (fresh) v.push_back(std::move(f));
        }
        RationalFunction sum = RationalFunction::zero(dim);
        for (int l = 0; l < k; ++l) {
            std::vector<LinearForm> den;
            for (int i = 0; i < k; ++i)
                if (i != l) den.push_back(v[static_cast<size_t>(i)] - v[static_cast<size_t>(l)]);
            sum = sum + RationalFunction(Polynomial::one(dim), den);
        }
        require(sum.is_zero(),
                "instance " + std::to_string(instance) + " (k = " + std::to_string(k) +
                    "): sum is " + sum.to_string());
    }
}

// 8. The class of the lowest vertex restricts to exactly 1 everywhere; the
//    path sums cancel all denominators.
void criterion_minimum_class_is_one() {
    for (const BuiltinSpace& sp : builtin_spaces_index_increasing()) {
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m);
        const ClassTable t = canonical_table(sp.graph, m, cg, psi_minimum(sp.graph, m));
        for (int q = 0; q < sp.graph.num_vertices(); ++q)
            require(t.values[static_cast<size_t>(q)] == Polynomial::one(sp.graph.dim_t()),
                    sp.name + ": minimum class is " +
                        t.values[static_cast<size_t>(q)].to_string() + " at " +
                        sp.graph.vertex(q).id);
    }
}

// 9. Structure constants: frozen values on cpn(2); on flag(3) the expansion
//    they define reproduces the pointwise product at every vertex.
void criterion_structure_constants() {
    {
        const BuiltinSpace sp = gen_cpn(2);
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m);
        const std::vector<ClassTable> alphas = canonical_tables(sp.graph, m, cg);
        const std::vector<ClassTable> betas = dual_tables(sp.graph, m, cg);
        const int p2 = sp.graph.vertex_index("p2");
        const std::vector<Polynomial> c =
            structure_constants(sp.graph, m, alphas, betas, p2, p2);
        const int nv = sp.graph.dim_t();
        require(c[static_cast<size_t>(sp.graph.vertex_index("p1"))] == Polynomial(nv),
                "cpn(2): constant at p1 is nonzero");
        require(c[static_cast<size_t>(p2)] ==
                    Polynomial::variable(nv, 0) - Polynomial::variable(nv, 1),
                "cpn(2): constant at p2 differs from x1 - x2");
        require(c[static_cast<size_t>(sp.graph.vertex_index("p3"))] == Polynomial::one(nv),
                "cpn(2): constant at p3 differs from 1");
    }
    {
        const BuiltinSpace sp = gen_flag(3);
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m);
        const std::vector<ClassTable> alphas = canonical_tables(sp.graph, m, cg);
        const std::vector<ClassTable> betas = dual_tables(sp.graph, m, cg);
        const int nv = sp.graph.num_vertices();
        for (int p = 0; p < nv; ++p)
            for (int q = 0; q < nv; ++q) {
                const std::vector<Polynomial> c =
                    structure_constants(sp.graph, m, alphas, betas, p, q);
                for (int s = 0; s < nv; ++s) {
                    Polynomial lhs(sp.graph.dim_t());
                    for (int r = 0; r < nv; ++r)
                        lhs += c[static_cast<size_t>(r)] *
                               alphas[static_cast<size_t>(r)].values[static_cast<size_t>(s)];
                    const Polynomial rhs =
                        alphas[static_cast<size_t>(p)].values[static_cast<size_t>(s)] *
                        alphas[static_cast<size_t>(q)].values[static_cast<size_t>(s)];
                    require(lhs == rhs, "flag(3): expansion of (" + sp.graph.vertex(p).id + ", " +
                                            sp.graph.vertex(q).id + ") differs at " +
                                            sp.graph.vertex(s).id);
                }
            }
    }
}

// 10. Robust divisibility: the shipped integral class on the twisted product
//     passes, and so does every canonical class on every builtin, vertex by
//     vertex.
void criterion_robust_divisibility() {
    {
        const BuiltinSpace sp = gen_cp1xcp1_twisted();
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const RobustReport r = robust_divisibility_report(sp.graph, m, twisted_integral_class());
        require(r.ok, "twisted product: shipped integral class fails the divisibility report");
    }
    for (const BuiltinSpace& sp : builtin_spaces_index_increasing()) {
        const MorseData m = morse_data(sp.graph, sp.default_xi);
        const CanonicalGraph cg = one_step_restrictions(sp.graph, m);
        for (const ClassTable& t : canonical_tables(sp.graph, m, cg)) {
            const RobustReport r = robust_divisibility_report(sp.graph, m, t.values);
            require(r.ok, sp.name + ": canonical class of " +
                              sp.graph.vertex(t.owner).id + " fails the divisibility report");
        }
    }
}

// 11. Invariant sweep: degree identities of the Morse data and ascent
//     monotonicity everywhere; every structural invariant of every canonical
//     class wherever the index hypothesis holds.
void criterion_invariant_suite() {
    std::vector<BuiltinSpace> spaces = builtin_spaces_all();
    for (std::uint64_t seed = 51; seed <= 100; ++seed)
        spaces.push_back(gkm::testing::random_space(seed));
    for (const BuiltinSpace& sp : spaces) {
        const GkmGraph& g = sp.graph;
        require(validate(g).ok, sp.name + ": graph fails validation");
        const MorseData m = morse_data(g, sp.default_xi);
        for (int v = 0; v < g.num_vertices(); ++v) {
            const VertexMorse& vm = m[v];
            require(vm.lambda_minus.total_degree() == vm.lambda,
                    sp.name + ": descending product degree mismatch at " + g.vertex(v).id);
            require(vm.lambda_plus.total_degree() == g.valence(v) - vm.lambda,
                    sp.name + ": ascending product degree mismatch at " + g.vertex(v).id);
            require(vm.lambda_minus * vm.lambda_plus == vm.lambda_full,
                    sp.name + ": product of half Euler classes differs at " + g.vertex(v).id);
        }
        const CanonicalGraph cg = one_step_restrictions(g, m);
        for (const auto& kv : cg.edges()) {
            const CanonicalEdge& e = kv.second;
            require(m[e.to].lambda == m[e.from].lambda + 1,
                    sp.name + ": edge " + g.edge_name(e.from, e.to) + " is not an index step");
            require(m[e.from].psi < m[e.to].psi,
                    sp.name + ": edge " + g.edge_name(e.from, e.to) + " does not ascend");
        }
        if (!is_index_increasing(g, m).ok) continue; // the blow-up carries no canonical classes
        for (const ClassTable& t : canonical_tables(g, m, cg)) {
            const CanonicalCheck check = verify_canonical(g, m, t);
            std::string detail;
            for (const auto& item : check.items)
                if (!item.ok) detail += " [" + item.check + "] " + item.detail;
            require(check.ok && check.items.empty(),
                    sp.name + ": class of " + g.vertex(t.owner).id + " fails:" + detail);
        }
    }
}

// ---- harness ----------------------------------------------------------------

struct Criterion {
    int number;
    std::string label;
    double budget_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "projective-space tables match the closed-form products (n = 1..6)", 5.0,
         criterion_cpn_closed_form},
        {2, "flag spaces: unit edge constants, billey_restrict agreement, positivity (n = 2..4)",
         60.0, criterion_flag_tables},
        {3, "blow-up surface: index hypothesis fails at (p2, p3); no class exists at p2", 1.0,
         criterion_blowup_nonexistence},
        {4, "interpolation methods agree with nonzero integers on builtins + 50 random graphs",
         10.0, criterion_theta_cross_check},
        {5, "linear-system solver reproduces path-formula tables (cpn <= 4, flag <= 3)", 30.0,
         criterion_solver_matches_path_formula},
        {6, "canonical/dual pairing integrates to the Kronecker delta (cpn(3), flag(3))", 10.0,
         criterion_dual_orthogonality},
        {7, "partial-fraction sums vanish exactly on 200 random instances (k = 2..6)", 2.0,
         criterion_partial_fraction_vanishing},
        {8, "minimum-vertex class restricts to exactly 1 everywhere", 10.0,
         criterion_minimum_class_is_one},
        {9, "structure constants: frozen values on cpn(2), expansion identity on flag(3)", 30.0,
         criterion_structure_constants},
        {10, "robust divisibility holds for the shipped fixture and every canonical class", 10.0,
         criterion_robust_divisibility},
        {11, "invariant sweep over builtins + 50 random graphs", 60.0,
         criterion_invariant_suite},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            c.run();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && elapsed > c.budget_seconds)
            failure = "over budget: " + std::to_string(elapsed) + " s > " +
                      std::to_string(c.budget_seconds) + " s";
        if (failure.empty()) {
            std::printf("[%2d] PASS  %6.2fs  %s\n", c.number, elapsed, c.label.c_str());
        } else {
            ++failures;
            std::printf("[%2d] FAIL  %6.2fs  %s\n        %s\n", c.number, elapsed, c.label.c_str(),
                        failure.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
