#pragma once

#include <atomic>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gkm/class_table.hpp"
#include "gkm/graph.hpp"
#include "gkm/io.hpp"
#include "gkm/morse.hpp"
#include "gkm/rational_function.hpp"

namespace gkm {

// ----- interpolation constants (theta) ---------------------------------------
//
// Each ascending edge (r, r') that raises the index by exactly one carries an
// integer theta with  alpha_r(r') = theta * lambda_minus(r') / eta.  Two
// independent algorithms compute it; they share no machinery beyond the Morse
// data, so agreement is a strong consistency check.

enum class ThetaMethod { projection, modular, cross_checked };

namespace detail {

// Projection along eta annihilating the pairing with xi. An algebra map on
// linear forms; extends rho_projection on polynomials factor by factor.
inline LinearForm rho_form(const LinearForm& w, const LinearForm& eta, const DirectionVector& xi) {
    const Rational pe = eta.pairing(xi);
    if (pe == 0) throw NonGenericDirection("projection direction pairs to zero with eta", "");
    return w - eta * (w.pairing(xi) / pe);
}

inline void require_theta_edge(const GkmGraph& g, const MorseData& m, int from, int to) {
    if (!g.has_edge(from, to)) throw Error("no edge " + g.edge_name(from, to));
    if (!(g.weight(from, to).pairing(m.xi) > 0))
        throw Error("edge " + g.edge_name(from, to) + " is not ascending");
    if (m[to].lambda != m[from].lambda + 1)
        throw Error("edge " + g.edge_name(from, to) + " does not raise the index by one");
}

inline long long to_int64_checked(const Rational& c, const std::string& edge) {
    if (!is_integer(c)) throw NonIntegerTheta("value " + to_string(c) + " on edge " + edge, edge);
    const Integer n = boost::multiprecision::numerator(c);
    if (n > (std::numeric_limits<long long>::max)() || n < (std::numeric_limits<long long>::min)())
        throw Error("interpolation constant overflows 64 bits on edge " + edge);
    return n.convert_to<long long>();
}

} // namespace detail

// Theta by projecting both weight products into the hyperplane transverse to
// the flow and cancelling the resulting rational function.
inline long long theta_projection(const GkmGraph& g, const MorseData& m, int from, int to) {
    detail::require_theta_edge(g, m, from, to);
    const std::string edge = g.edge_name(from, to);
    const LinearForm eta = g.weight(from, to).to_linear_form();
    const int n = g.dim_t();

    Polynomial num = Polynomial::one(n);
    for (const auto& w : m[from].minus_weights) {
        const LinearForm img = detail::rho_form(w.to_linear_form(), eta, m.xi);
        if (img.pivot() < 0)
            throw NonIntegerTheta("projection collapses a weight below " + edge, edge);
        num *= Polynomial::from_linear_form(img);
    }

    std::vector<LinearForm> den;
    bool dropped = false; // exactly one copy of eta is left out of the target product
    for (const auto& w : m[to].minus_weights) {
        const LinearForm f = w.to_linear_form();
        if (!dropped && f == eta) {
            dropped = true;
            continue;
        }
        const LinearForm img = detail::rho_form(f, eta, m.xi);
        if (img.pivot() < 0)
            throw NonIntegerTheta("projection collapses a weight below " + edge, edge);
        den.push_back(img);
    }
    if (!dropped) throw Error("edge weight missing from the ascending weights at " + g.vertex(to).id);

    const RationalFunction ratio(std::move(num), den);
    if (!ratio.is_polynomial())
        throw NonIntegerTheta("projected ratio " + ratio.to_string() + " on edge " + edge, edge);
    const Polynomial p = ratio.to_polynomial();
    if (!p.is_constant())
        throw NonIntegerTheta("projected ratio is not constant on edge " + edge, edge);
    const Rational c = p.constant_value();
    if (c == 0) throw NonIntegerTheta("interpolation constant vanishes on edge " + edge, edge);
    return detail::to_int64_checked(c, edge);
}

// Theta by reducing both weight products modulo eta: the variable of the last
// nonzero eta coefficient is eliminated, after which the two products must be
// exactly proportional.
inline long long theta_modular(const GkmGraph& g, const MorseData& m, int from, int to) {
    detail::require_theta_edge(g, m, from, to);
    const std::string edge = g.edge_name(from, to);
    const LinearForm eta = g.weight(from, to).to_linear_form();
    const int n = g.dim_t();

    const int k = eta.last_nonzero();
    std::vector<LinearForm> images;
    images.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) images.push_back(LinearForm::unit(n, i));
    {
        std::vector<Rational> s(static_cast<size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i)
            if (i != k) s[static_cast<size_t>(i)] = -eta[i] / eta[k];
        images[static_cast<size_t>(k)] = LinearForm(std::move(s));
    }

    const Polynomial a = exact_divide_linear(m[to].lambda_minus, eta).substitute(images);
    const Polynomial b = m[from].lambda_minus.substitute(images);
    if (a.is_zero())
        throw NonIntegerTheta("reduced target product vanishes on edge " + edge, edge);
    if (b.is_zero())
        throw NonIntegerTheta("reduced source product vanishes on edge " + edge, edge);
    if (a.leading_exponents() != b.leading_exponents())
        throw NonIntegerTheta("reduced products are not proportional on edge " + edge, edge);
    const Rational c = b.leading_coeff() / a.leading_coeff();
    if (!(b == a * c))
        throw NonIntegerTheta("reduced products are not proportional on edge " + edge, edge);
    if (c == 0) throw NonIntegerTheta("interpolation constant vanishes on edge " + edge, edge);
    return detail::to_int64_checked(c, edge);
}

// Thetas of every ascending index-step-one edge, keyed by (from, to) in
// document order.
inline ThetaTable compute_thetas(const GkmGraph& g, const MorseData& m,
                                 ThetaMethod method = ThetaMethod::cross_checked) {
    ThetaTable out;
    for (const auto& e : g.directed_edges()) {
        if (!(g.weight(e.from, e.to).pairing(m.xi) > 0)) continue;
        if (m[e.to].lambda != m[e.from].lambda + 1) continue;
        long long theta = 0;
        switch (method) {
        case ThetaMethod::projection: theta = theta_projection(g, m, e.from, e.to); break;
        case ThetaMethod::modular: theta = theta_modular(g, m, e.from, e.to); break;
        case ThetaMethod::cross_checked: {
            theta = theta_projection(g, m, e.from, e.to);
            const long long other = theta_modular(g, m, e.from, e.to);
            if (theta != other)
                throw Error("interpolation algorithms disagree on edge " +
                            g.edge_name(e.from, e.to) + ": " + std::to_string(theta) + " vs " +
                            std::to_string(other));
            break;
        }
        }
        out.emplace(std::make_pair(e.from, e.to), theta);
    }
    return out;
}

// ----- the canonical graph ---------------------------------------------------
//
// Vertices of the original graph, one directed edge per ascending
// index-step-one pair, labelled with theta and the one-step restriction value.

struct CanonicalEdge {
    int from = -1;
    int to = -1;
    long long theta = 0;
    Polynomial value; // restriction of the class of `from` at `to`
};

class CanonicalGraph {
  public:
    explicit CanonicalGraph(const GkmGraph& g)
        : succ_(static_cast<size_t>(g.num_vertices())), pred_(static_cast<size_t>(g.num_vertices())) {
        ids_.reserve(static_cast<size_t>(g.num_vertices()));
        for (const auto& v : g.vertices()) ids_.push_back(v.id);
    }

    int num_vertices() const { return static_cast<int>(ids_.size()); }

    void add(int from, int to, long long theta, Polynomial value) {
        if (from < 0 || to < 0 || from >= num_vertices() || to >= num_vertices())
            throw Error("canonical edge endpoint out of range");
        if (!edges_.emplace(std::make_pair(from, to), CanonicalEdge{from, to, theta, std::move(value)})
                 .second)
            throw Error("duplicate canonical edge (" + ids_[static_cast<size_t>(from)] + ", " +
                        ids_[static_cast<size_t>(to)] + ")");
        insert_sorted(succ_[static_cast<size_t>(from)], to);
        insert_sorted(pred_[static_cast<size_t>(to)], from);
    }

    bool has(int from, int to) const { return edges_.count({from, to}) > 0; }

    const CanonicalEdge& at(int from, int to) const {
        auto it = edges_.find({from, to});
        if (it == edges_.end())
            throw Error("no canonical edge (" + ids_[static_cast<size_t>(from)] + ", " +
                        ids_[static_cast<size_t>(to)] + ")");
        return it->second;
    }

    // Successors sorted by vertex id, so path enumeration is lexicographic.
    const std::vector<int>& successors(int v) const { return succ_[static_cast<size_t>(v)]; }
    const std::vector<int>& predecessors(int v) const { return pred_[static_cast<size_t>(v)]; }

    const std::map<std::pair<int, int>, CanonicalEdge>& edges() const { return edges_; }

  private:
    void insert_sorted(std::vector<int>& list, int v) {
        auto cmp = [&](int a, int b) { return ids_[static_cast<size_t>(a)] < ids_[static_cast<size_t>(b)]; };
        list.insert(std::lower_bound(list.begin(), list.end(), v, cmp), v);
    }

    std::vector<std::string> ids_;
    std::map<std::pair<int, int>, CanonicalEdge> edges_;
    std::vector<std::vector<int>> succ_, pred_;
};

// Builds the canonical graph from a theta table: the one-step value on
// (r, r') is theta * lambda_minus(r') / eta.
inline CanonicalGraph one_step_restrictions(const GkmGraph& g, const MorseData& m,
                                            const ThetaTable& thetas) {
    CanonicalGraph cg(g);
    for (const auto& [key, theta] : thetas) {
        const auto [from, to] = key;
        detail::require_theta_edge(g, m, from, to);
        const LinearForm eta = g.weight(from, to).to_linear_form();
        Polynomial value = exact_divide_linear(m[to].lambda_minus, eta) * Rational(theta);
        cg.add(from, to, theta, std::move(value));
    }
    return cg;
}

inline CanonicalGraph one_step_restrictions(const GkmGraph& g, const MorseData& m,
                                            ThetaMethod method = ThetaMethod::cross_checked) {
    return one_step_restrictions(g, m, compute_thetas(g, m, method));
}

// Throws when some ascending edge fails to raise the index, carrying the
// offending edges by vertex id.
inline void require_index_increasing(const GkmGraph& g, const MorseData& m) {
    const auto check = is_index_increasing(g, m);
    if (check.ok) return;
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(check.violations.size());
    std::string msg = "ascending edges that fail to raise the index:";
    for (const auto& v : check.violations) {
        pairs.emplace_back(g.vertex(v.edge.from).id, g.vertex(v.edge.to).id);
        msg += " " + g.edge_name(v.edge.from, v.edge.to);
    }
    throw IndexNotIncreasing(msg, std::move(pairs));
}

// ----- path sums --------------------------------------------------------------

namespace detail {

// Vertices from which `target` is reachable in the canonical graph
// (target included).
inline std::vector<char> reaches(const CanonicalGraph& cg, int target) {
    std::vector<char> seen(static_cast<size_t>(cg.num_vertices()), 0);
    seen[static_cast<size_t>(target)] = 1;
    std::vector<int> frontier{target};
    while (!frontier.empty()) {
        const int v = frontier.back();
        frontier.pop_back();
        for (int u : cg.predecessors(v))
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                frontier.push_back(u);
            }
    }
    return seen;
}

// One step of a path sum: the factor contributed by traversing (v, w) while
// aiming at `anchor` with sign convention den_at_source ? phi(anchor)-phi(v)
// : phi(anchor)-phi(w) in the denominator.
struct PathAccumulator {
    const GkmGraph& g;
    const MorseData& m;
    const CanonicalGraph& cg;
    const std::vector<char>& reach;
    int target;
    int anchor;         // the vertex whose moment image anchors the denominators
    bool den_at_source; // which end of each step the anchor denominator uses
    RationalFunction sum;

    PathAccumulator(const GkmGraph& g_, const MorseData& m_, const CanonicalGraph& cg_,
                    const std::vector<char>& reach_, int target_, int anchor_, bool den_at_source_)
        : g(g_), m(m_), cg(cg_), reach(reach_), target(target_), anchor(anchor_),
          den_at_source(den_at_source_), sum(RationalFunction::zero(g_.dim_t())) {}

    void walk(int v, const RationalFunction& partial) {
        for (int w : cg.successors(v)) {
            if (!reach[static_cast<size_t>(w)]) continue;
            const CanonicalEdge& e = cg.at(v, w);
            const LinearForm step_diff = g.vertex(w).phi - g.vertex(v).phi;
            const LinearForm anchor_diff =
                g.vertex(anchor).phi - (den_at_source ? g.vertex(v).phi : g.vertex(w).phi);
            if (anchor_diff.pivot() < 0)
                throw Error("path denominator vanishes between '" + g.vertex(anchor).id +
                            "' and a path vertex");
            std::vector<LinearForm> den;
            den.reserve(m[w].minus_weights.size() + 1);
            den.push_back(anchor_diff);
            for (const auto& mw : m[w].minus_weights) den.push_back(mw.to_linear_form());
            RationalFunction next =
                partial * RationalFunction(Polynomial::from_linear_form(step_diff) * e.value, den);
            if (w == target) {
                sum = sum + next;
                continue; // paths end at the target; nothing returns to it
            }
            walk(w, next);
        }
    }
};

} // namespace detail

// Restriction of the canonical class of p at q: lambda_minus(q) times the sum
// over ascending paths p -> q of the per-step factors.
inline Polynomial restriction(const GkmGraph& g, const MorseData& m, const CanonicalGraph& cg,
                              int p, int q) {
    if (p == q) return m[p].lambda_minus;
    const int n = g.dim_t();
    if (m[q].lambda <= m[p].lambda || !(m[p].psi < m[q].psi)) return Polynomial(n);
    const auto reach = detail::reaches(cg, q);
    if (!reach[static_cast<size_t>(p)]) return Polynomial(n);

    detail::PathAccumulator acc(g, m, cg, reach, q, q, /*den_at_source=*/true);
    acc.walk(p, RationalFunction::one(n));
    if (acc.sum.is_zero()) return Polynomial(n);
    return (acc.sum * m[q].lambda_minus).to_polynomial();
}

// Restriction of the dual class of q at p: lambda_plus(p) times a path sum
// over the same paths with the anchor at p and the denominator taken at the
// entered vertex of each step.
inline Polynomial dual_restriction(const GkmGraph& g, const MorseData& m, const CanonicalGraph& cg,
                                   int q, int p) {
    if (p == q) return m[p].lambda_plus;
    const int n = g.dim_t();
    if (m[q].lambda <= m[p].lambda || !(m[p].psi < m[q].psi)) return Polynomial(n);
    const auto reach = detail::reaches(cg, q);
    if (!reach[static_cast<size_t>(p)]) return Polynomial(n);

    detail::PathAccumulator acc(g, m, cg, reach, q, p, /*den_at_source=*/false);
    acc.walk(p, RationalFunction::one(n));
    if (acc.sum.is_zero()) return Polynomial(n);
    return (acc.sum * m[p].lambda_plus).to_polynomial();
}

namespace detail {

inline int thread_count() {
    const char* env = std::getenv("GKM_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    if (v < 1) return 1;
    return v > 64 ? 64 : v;
}

// Runs job(k) for k in [0, count) on the configured number of threads.
// Each k must write only its own slots, so results are deterministic.
template <class Job> inline void parallel_for(size_t count, Job job) {
    const int threads = thread_count();
    if (threads <= 1 || count <= 1) {
        for (size_t k = 0; k < count; ++k) job(k);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= count) return;
            try {
                job(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), count);
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail

// The canonical class of p as a full table of restrictions.
inline ClassTable canonical_table(const GkmGraph& g, const MorseData& m, const CanonicalGraph& cg,
                                  int p) {
    require_index_increasing(g, m);
    ClassTable t;
    t.owner = p;
    t.degree = m[p].lambda;
    t.values.assign(static_cast<size_t>(g.num_vertices()), Polynomial(g.dim_t()));
    for (int q = 0; q < g.num_vertices(); ++q)
        t.values[static_cast<size_t>(q)] = restriction(g, m, cg, p, q);
    return t;
}

// All canonical classes. Honors GKM_THREADS for the pairwise work.
inline std::vector<ClassTable> canonical_tables(const GkmGraph& g, const MorseData& m,
                                                const CanonicalGraph& cg) {
    require_index_increasing(g, m);
    const int nv = g.num_vertices();
    std::vector<ClassTable> out(static_cast<size_t>(nv));
    for (int p = 0; p < nv; ++p) {
        out[static_cast<size_t>(p)].owner = p;
        out[static_cast<size_t>(p)].degree = m[p].lambda;
        out[static_cast<size_t>(p)].values.assign(static_cast<size_t>(nv), Polynomial(g.dim_t()));
    }
    std::vector<std::pair<int, int>> tasks;
    for (int p = 0; p < nv; ++p)
        for (int q = 0; q < nv; ++q)
            if (q == p || m[q].lambda > m[p].lambda) tasks.emplace_back(p, q);
    detail::parallel_for(tasks.size(), [&](size_t k) {
        const auto [p, q] = tasks[k];
        out[static_cast<size_t>(p)].values[static_cast<size_t>(q)] = restriction(g, m, cg, p, q);
    });
    return out;
}

// The dual class of q as a full table of restrictions.
inline ClassTable dual_table(const GkmGraph& g, const MorseData& m, const CanonicalGraph& cg,
                             int q) {
    require_index_increasing(g, m);
    ClassTable t;
    t.owner = q;
    t.degree = g.valence(q) - m[q].lambda;
    t.values.assign(static_cast<size_t>(g.num_vertices()), Polynomial(g.dim_t()));
    for (int p = 0; p < g.num_vertices(); ++p)
        t.values[static_cast<size_t>(p)] = dual_restriction(g, m, cg, q, p);
    return t;
}

inline std::vector<ClassTable> dual_tables(const GkmGraph& g, const MorseData& m,
                                           const CanonicalGraph& cg) {
    require_index_increasing(g, m);
    const int nv = g.num_vertices();
    std::vector<ClassTable> out(static_cast<size_t>(nv));
    for (int q = 0; q < nv; ++q) {
        out[static_cast<size_t>(q)].owner = q;
        out[static_cast<size_t>(q)].degree = g.valence(q) - m[q].lambda;
        out[static_cast<size_t>(q)].values.assign(static_cast<size_t>(nv), Polynomial(g.dim_t()));
    }
    std::vector<std::pair<int, int>> tasks;
    for (int q = 0; q < nv; ++q)
        for (int p = 0; p < nv; ++p)
            if (p == q || m[q].lambda > m[p].lambda) tasks.emplace_back(q, p);
    detail::parallel_for(tasks.size(), [&](size_t k) {
        const auto [q, p] = tasks[k];
        out[static_cast<size_t>(q)].values[static_cast<size_t>(p)] = dual_restriction(g, m, cg, q, p);
    });
    return out;
}

// ----- integration and products ----------------------------------------------

// Integration by summing values[v] / (product of all weights into v) over the
// vertices; the sum is a polynomial for every genuine class.
inline Polynomial abbv_integrate(const GkmGraph& g, const MorseData& m, const ClassValues& values) {
    if (values.size() != static_cast<size_t>(g.num_vertices()))
        throw DimensionMismatch("class values do not cover every vertex");
    const int n = g.dim_t();
    RationalFunction total = RationalFunction::zero(n);
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (values[static_cast<size_t>(v)].is_zero()) continue;
        std::vector<LinearForm> den;
        den.reserve(static_cast<size_t>(g.valence(v)));
        for (const auto& w : m[v].minus_weights) den.push_back(w.to_linear_form());
        for (const auto& w : m[v].plus_weights) den.push_back(w.to_linear_form());
        total = total + RationalFunction(values[static_cast<size_t>(v)], den);
    }
    return total.to_polynomial();
}

inline ClassValues pointwise_product(const ClassValues& a, const ClassValues& b) {
    if (a.size() != b.size()) throw DimensionMismatch("class value lists differ in length");
    ClassValues out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
    return out;
}

// Coefficients of the product of the canonical classes of p and q expanded in
// the canonical basis: out[r] is the integral of alpha_p * alpha_q * beta_r.
inline std::vector<Polynomial> structure_constants(const GkmGraph& g, const MorseData& m,
                                                   const std::vector<ClassTable>& alphas,
                                                   const std::vector<ClassTable>& betas, int p,
                                                   int q) {
    const int nv = g.num_vertices();
    std::vector<Polynomial> out(static_cast<size_t>(nv), Polynomial(g.dim_t()));
    const ClassValues prod = pointwise_product(alphas[static_cast<size_t>(p)].values,
                                               alphas[static_cast<size_t>(q)].values);
    for (int r = 0; r < nv; ++r)
        out[static_cast<size_t>(r)] =
            abbv_integrate(g, m, pointwise_product(prod, betas[static_cast<size_t>(r)].values));
    return out;
}

// ----- the localization recursion ----------------------------------------------
//
// An alternative evaluation of both families: the one-step values seed the
// gap-one pairs, and every wider pair is recovered from integrals of products
// of narrower ones. Shares no path enumeration with restriction(), which
// makes it a useful cross-check.

inline std::pair<std::vector<ClassTable>, std::vector<ClassTable>>
tables_via_localization(const GkmGraph& g, const MorseData& m, const CanonicalGraph& cg) {
    require_index_increasing(g, m);
    const int nv = g.num_vertices();
    const int n = g.dim_t();
    std::vector<std::vector<Polynomial>> alpha(static_cast<size_t>(nv)), beta(static_cast<size_t>(nv));
    for (int i = 0; i < nv; ++i) {
        alpha[static_cast<size_t>(i)].assign(static_cast<size_t>(nv), Polynomial(n));
        beta[static_cast<size_t>(i)].assign(static_cast<size_t>(nv), Polynomial(n));
        alpha[static_cast<size_t>(i)][static_cast<size_t>(i)] = m[i].lambda_minus;
        beta[static_cast<size_t>(i)][static_cast<size_t>(i)] = m[i].lambda_plus;
    }

    int max_lambda = 0;
    for (int v = 0; v < nv; ++v) max_lambda = std::max(max_lambda, m[v].lambda);

    for (int gap = 1; gap <= max_lambda; ++gap)
        for (int p = 0; p < nv; ++p)
            for (int q = 0; q < nv; ++q) {
                if (m[q].lambda - m[p].lambda != gap || p == q) continue;
                if (gap == 1) {
                    if (!cg.has(p, q)) continue;
                    const auto& e = cg.at(p, q);
                    alpha[static_cast<size_t>(p)][static_cast<size_t>(q)] = e.value;
                    // beta_q(p) = -lambda_plus(p) * value / lambda_minus(q)
                    std::vector<LinearForm> den;
                    for (const auto& w : m[q].minus_weights) den.push_back(w.to_linear_form());
                    beta[static_cast<size_t>(q)][static_cast<size_t>(p)] =
                        (RationalFunction(e.value * m[p].lambda_plus, den) * Rational(-1))
                            .to_polynomial();
                    continue;
                }
                const LinearForm qp = g.vertex(q).phi - g.vertex(p).phi;
                if (qp.pivot() < 0) continue; // equal moment images: both restrictions vanish
                RationalFunction sum_a = RationalFunction::zero(n);
                RationalFunction sum_b = RationalFunction::zero(n);
                for (int r = 0; r < nv; ++r) {
                    if (r == p || r == q) continue;
                    if (m[r].lambda <= m[p].lambda || m[r].lambda >= m[q].lambda) continue;
                    const Polynomial& ar = alpha[static_cast<size_t>(p)][static_cast<size_t>(r)];
                    const Polynomial& br = beta[static_cast<size_t>(q)][static_cast<size_t>(r)];
                    if (ar.is_zero() || br.is_zero()) continue;
                    std::vector<LinearForm> den;
                    den.reserve(static_cast<size_t>(g.valence(r)));
                    for (const auto& w : m[r].minus_weights) den.push_back(w.to_linear_form());
                    for (const auto& w : m[r].plus_weights) den.push_back(w.to_linear_form());
                    const Polynomial arbr = ar * br;
                    const LinearForm rp = g.vertex(r).phi - g.vertex(p).phi;
                    const LinearForm rq = g.vertex(r).phi - g.vertex(q).phi;
                    if (rp.pivot() >= 0)
                        sum_a = sum_a + RationalFunction(arbr * Polynomial::from_linear_form(rp), den);
                    if (rq.pivot() >= 0)
                        sum_b = sum_b + RationalFunction(arbr * Polynomial::from_linear_form(rq), den);
                }
                if (!sum_a.is_zero())
                    alpha[static_cast<size_t>(p)][static_cast<size_t>(q)] =
                        ((sum_a * m[q].lambda_minus) * Rational(-1)).div_linear(qp).to_polynomial();
                if (!sum_b.is_zero())
                    beta[static_cast<size_t>(q)][static_cast<size_t>(p)] =
                        ((sum_b * m[p].lambda_plus) * Rational(-1))
                            .div_linear(-qp)
                            .to_polynomial();
            }

    std::vector<ClassTable> alphas(static_cast<size_t>(nv)), betas(static_cast<size_t>(nv));
    for (int i = 0; i < nv; ++i) {
        alphas[static_cast<size_t>(i)] = {i, m[i].lambda, std::move(alpha[static_cast<size_t>(i)])};
        betas[static_cast<size_t>(i)] = {i, g.valence(i) - m[i].lambda,
                                         std::move(beta[static_cast<size_t>(i)])};
    }
    return {std::move(alphas), std::move(betas)};
}

// ----- verification -------------------------------------------------------------

struct CheckItem {
    std::string check; // "diagonal" | "vanishing-index" | "vanishing-morse" |
                       // "edge-divisibility" | "homogeneity" | "integrality"
    bool ok = true;
    std::string detail;
};

struct CanonicalCheck {
    bool ok = true;
    std::vector<CheckItem> items;

    void fail(std::string check, std::string detail) {
        ok = false;
        items.push_back({std::move(check), false, std::move(detail)});
    }
};

// Structural conditions every canonical class satisfies: the diagonal value,
// vanishing below the owner in index and in Morse order, divisibility along
// every edge, homogeneity, and integer coefficients.
inline CanonicalCheck verify_canonical(const GkmGraph& g, const MorseData& m, const ClassTable& t) {
    CanonicalCheck r;
    const int nv = g.num_vertices();
    if (t.values.size() != static_cast<size_t>(nv))
        throw DimensionMismatch("class values do not cover every vertex");
    if (t.owner < 0 || t.owner >= nv) throw Error("class owner out of range");
    const int p = t.owner;

    if (!(t.values[static_cast<size_t>(p)] == m[p].lambda_minus))
        r.fail("diagonal", "value at the owner '" + g.vertex(p).id +
                               "' differs from the product of ascending weights");
    if (t.degree >= 0 && t.degree != m[p].lambda)
        r.fail("homogeneity", "declared degree " + std::to_string(t.degree) +
                                  " differs from the owner's index " + std::to_string(m[p].lambda));

    for (int v = 0; v < nv; ++v) {
        if (v == p) continue;
        const auto& val = t.values[static_cast<size_t>(v)];
        if (m[v].lambda <= m[p].lambda && !val.is_zero())
            r.fail("vanishing-index", "nonzero value at '" + g.vertex(v).id + "' although its index " +
                                          std::to_string(m[v].lambda) + " does not exceed " +
                                          std::to_string(m[p].lambda));
        if (m[v].psi <= m[p].psi && !val.is_zero())
            r.fail("vanishing-morse", "nonzero value at '" + g.vertex(v).id +
                                          "' although its Morse value does not exceed the owner's");
    }
    for (const auto& e : g.geometric_edges()) {
        const Polynomial diff =
            t.values[static_cast<size_t>(e.to)] - t.values[static_cast<size_t>(e.from)];
        if (!try_divide_linear(diff, g.weight(e.from, e.to).to_linear_form()))
            r.fail("edge-divisibility", "difference along " + g.edge_name(e.from, e.to) +
                                            " is not divisible by the edge weight");
    }
    for (int v = 0; v < nv; ++v) {
        const auto& val = t.values[static_cast<size_t>(v)];
        if (!val.is_homogeneous_of_degree(m[p].lambda))
            r.fail("homogeneity", "value at '" + g.vertex(v).id + "' is not homogeneous of degree " +
                                      std::to_string(m[p].lambda));
        if (!val.is_integral())
            r.fail("integrality", "value at '" + g.vertex(v).id + "' has a non-integer coefficient");
    }
    return r;
}

// ----- divisibility at a vertex ---------------------------------------------------

struct RobustEntry {
    int vertex = -1;
    std::vector<int> factor_sources; // neighbors r of v whose descending closure
                                     // the class vanishes on
    bool ok = true;
    Polynomial quotient;
    std::string note;
};

struct RobustReport {
    bool ok = true;
    std::vector<RobustEntry> at;
};

// At every vertex v, the value of a class is divisible by the product of the
// weights of those edges (r, v) whose source's descending closure the class
// vanishes on, with an integer-coefficient quotient.
inline RobustReport robust_divisibility_report(const GkmGraph& g, const MorseData& m,
                                               const ClassValues& values) {
    if (values.size() != static_cast<size_t>(g.num_vertices()))
        throw DimensionMismatch("class values do not cover every vertex");
    RobustReport report;
    std::map<int, bool> vanishes_below; // source -> class is zero on its descending closure
    auto zero_below = [&](int s) {
        auto it = vanishes_below.find(s);
        if (it != vanishes_below.end()) return it->second;
        bool all = true;
        for (int u : unstable_set(g, m.xi, s)) all = all && values[static_cast<size_t>(u)].is_zero();
        vanishes_below.emplace(s, all);
        return all;
    };
    for (int v = 0; v < g.num_vertices(); ++v) {
        RobustEntry entry;
        entry.vertex = v;
        Polynomial rest = values[static_cast<size_t>(v)];
        for (int s : g.neighbors(v)) {
            if (!zero_below(s)) continue;
            entry.factor_sources.push_back(s);
            if (!entry.ok) continue;
            if (auto d = try_divide_linear(rest, g.weight(s, v).to_linear_form())) {
                rest = std::move(*d);
            } else {
                entry.ok = false;
                entry.note = "value at '" + g.vertex(v).id +
                             "' is not divisible by the predicted weight product";
            }
        }
        if (entry.ok) {
            entry.quotient = rest;
            if (!rest.is_integral()) {
                entry.ok = false;
                entry.note = "quotient at '" + g.vertex(v).id + "' has a non-integer coefficient";
            }
        }
        report.ok = report.ok && entry.ok;
        report.at.push_back(std::move(entry));
    }
    return report;
}

// ----- positivity ------------------------------------------------------------------

struct EdgeSign {
    int from = -1;
    int to = -1;
    long long theta = 0;
    bool positive = false;
};

struct PositivityReport {
    bool all_positive = true;
    std::vector<EdgeSign> edges;
};

// A one-step value is a positive combination of ascending weights exactly
// when its theta is positive.
inline PositivityReport positivity_report(const CanonicalGraph& cg) {
    PositivityReport r;
    for (const auto& kv : cg.edges()) {
        const CanonicalEdge& e = kv.second;
        const bool pos = e.theta > 0;
        r.all_positive = r.all_positive && pos;
        r.edges.push_back({e.from, e.to, e.theta, pos});
    }
    return r;
}

} // namespace gkm
