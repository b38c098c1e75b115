#pragma once

// Independent verification paths for the canonical-class pipeline:
//
//  * a direct linear solver that builds the candidate space of compatible
//    restriction tuples from the defining conditions and solves it exactly,
//    with a machine-checkable certificate when no solution exists, and
//  * the Billey restriction formula for flag manifolds, computed from a
//    reduced word with no reference to the path-sum machinery.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gkm/class_table.hpp"
#include "gkm/graph.hpp"
#include "gkm/morse.hpp"
#include "gkm/permutation.hpp"
#include "gkm/polynomial.hpp"

namespace gkm {

// No compatible tuple exists. `certificate` gives one rational weight per
// equation row of the originating LinearSystem: the weighted sum of the
// equations has no unknowns left but a nonzero constant.
struct Infeasible : Error {
    std::vector<Rational> certificate;
    std::vector<std::string> conflict_rows; // labels of the rows with nonzero weight

    Infeasible(const std::string& what, std::vector<Rational> cert, std::vector<std::string> rows)
        : Error("infeasible: " + what), certificate(std::move(cert)), conflict_rows(std::move(rows)) {}
};

// The solution space has positive dimension. The defining conditions pin the
// class down uniquely on every actual example, so this signals a modeling bug
// rather than interesting geometry.
struct UniquenessViolation : Error {
    int free_parameters;

    explicit UniquenessViolation(int free)
        : Error("solution space has " + std::to_string(free) + " free parameter(s)"),
          free_parameters(free) {}
};

// The divisibility conditions of a candidate class, linearized: one unknown
// homogeneous polynomial per vertex above the owner's index, the owner fixed
// to its ascending product, zeros at and below the owner's index, and one
// linear equation per (edge, monomial) pair after eliminating a variable
// along the edge weight.
struct LinearSystem {
    int nvars = 0;
    int degree = 0;
    std::vector<Exponents> monomials;            // degree-`degree` basis, shared by all blocks
    std::vector<Polynomial> monomial_polys;      // the same basis as polynomials
    std::vector<int> unknown_vertices;           // column-block order
    std::vector<std::optional<Polynomial>> known; // fixed values, one slot per vertex
    std::vector<std::vector<Rational>> rows;     // coefficient matrix, row-major
    std::vector<Rational> rhs;
    std::vector<std::string> row_labels;         // "(u, v) : monomial"

    int columns() const { return static_cast<int>(unknown_vertices.size() * monomials.size()); }

    int column(int block, int monomial) const {
        return block * static_cast<int>(monomials.size()) + monomial;
    }
};

namespace detail {

inline void enumerate_monomials(int nvars, int degree, int var, Exponents& current,
                                std::vector<Exponents>& out) {
    if (var == nvars - 1) {
        current[static_cast<size_t>(var)] = static_cast<unsigned>(degree);
        out.push_back(current);
        return;
    }
    for (int d = degree; d >= 0; --d) {
        current[static_cast<size_t>(var)] = static_cast<unsigned>(d);
        enumerate_monomials(nvars, degree - d, var + 1, current, out);
    }
}

// Substitution images that eliminate the variable of the last nonzero
// coefficient of eta; reducing modulo eta becomes evaluation.
inline std::vector<LinearForm> elimination_images(const LinearForm& eta, int nvars) {
    const int k = eta.last_nonzero();
    std::vector<LinearForm> images;
    images.reserve(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i) images.push_back(LinearForm::unit(nvars, i));
    std::vector<Rational> s(static_cast<size_t>(nvars), Rational(0));
    for (int i = 0; i < nvars; ++i)
        if (i != k) s[static_cast<size_t>(i)] = -eta[i] / eta[k];
    images[static_cast<size_t>(k)] = LinearForm(std::move(s));
    return images;
}

} // namespace detail

// All monomials of the given total degree, most weight on early variables first.
inline std::vector<Exponents> homogeneous_monomials(int nvars, int degree) {
    std::vector<Exponents> out;
    Exponents current(static_cast<size_t>(nvars), 0u);
    detail::enumerate_monomials(nvars, degree, 0, current, out);
    return out;
}

inline LinearSystem build_linear_system(const GkmGraph& g, const MorseData& m, int p) {
    const int n = g.dim_t();
    const int nv = g.num_vertices();
    if (p < 0 || p >= nv) throw Error("owner vertex out of range");

    LinearSystem sys;
    sys.nvars = n;
    sys.degree = m[p].lambda;
    sys.monomials = homogeneous_monomials(n, sys.degree);
    for (const auto& e : sys.monomials) {
        Polynomial mono = Polynomial::one(n);
        for (int i = 0; i < n; ++i)
            for (unsigned r = 0; r < e[static_cast<size_t>(i)]; ++r)
                mono *= Polynomial::variable(n, i);
        sys.monomial_polys.push_back(std::move(mono));
    }

    sys.known.assign(static_cast<size_t>(nv), std::nullopt);
    std::vector<int> block(static_cast<size_t>(nv), -1);
    for (int q = 0; q < nv; ++q) {
        if (q == p)
            sys.known[static_cast<size_t>(q)] = m[p].lambda_minus;
        else if (m[q].lambda <= m[p].lambda)
            sys.known[static_cast<size_t>(q)] = Polynomial(n);
        else {
            block[static_cast<size_t>(q)] = static_cast<int>(sys.unknown_vertices.size());
            sys.unknown_vertices.push_back(q);
        }
    }

    const int cols = sys.columns();
    for (const auto& e : g.geometric_edges()) {
        const LinearForm eta = g.weight(e.from, e.to).to_linear_form();
        const auto images = detail::elimination_images(eta, n);

        // Substituted basis monomials, computed once per edge.
        std::vector<Polynomial> reduced;
        reduced.reserve(sys.monomials.size());
        for (const auto& mono : sys.monomial_polys) reduced.push_back(mono.substitute(images));

        // Rows of this edge, keyed by the surviving monomial.
        std::map<Exponents, size_t, GrlexGreater> row_of;
        auto row_for = [&](const Exponents& key) {
            auto it = row_of.find(key);
            if (it != row_of.end()) return it->second;
            const size_t idx = sys.rows.size();
            row_of.emplace(key, idx);
            sys.rows.emplace_back(static_cast<size_t>(cols), Rational(0));
            sys.rhs.emplace_back(0);
            Polynomial mono = Polynomial::one(n);
            for (int i = 0; i < n; ++i)
                for (unsigned r = 0; r < key[static_cast<size_t>(i)]; ++r)
                    mono *= Polynomial::variable(n, i);
            sys.row_labels.push_back(g.edge_name(e.from, e.to) + " : " + mono.to_string());
            return idx;
        };

        // The reduced difference value(to) - value(from) must vanish identically.
        for (const auto& [v, sign] : {std::pair<int, int>{e.to, 1}, std::pair<int, int>{e.from, -1}}) {
            if (const auto& fixed = sys.known[static_cast<size_t>(v)]) {
                const Polynomial img = fixed->substitute(images);
                for (const auto& [key, c] : img.terms())
                    sys.rhs[row_for(key)] -= Rational(sign) * c;
            } else {
                const int blk = block[static_cast<size_t>(v)];
                for (size_t mi = 0; mi < reduced.size(); ++mi)
                    for (const auto& [key, c] : reduced[mi].terms())
                        sys.rows[row_for(key)][static_cast<size_t>(
                            sys.column(blk, static_cast<int>(mi)))] += Rational(sign) * c;
            }
        }
    }
    return sys;
}

namespace detail {

// Exact row echelon pass over the integerized system, fraction-free in the
// coefficient part, with a rational transform matrix tracking how each working
// row combines the original rows.
struct EchelonResult {
    std::vector<int> pivot_columns;
    int rank = 0;
    std::vector<std::vector<Integer>> mat; // working rows, rhs appended as last column
    std::vector<std::vector<Rational>> transform;
};

inline EchelonResult fraction_free_echelon(const LinearSystem& sys) {
    const size_t nrows = sys.rows.size();
    const int cols = sys.columns();
    EchelonResult res;
    res.mat.assign(nrows, {});
    res.transform.assign(nrows, {});
    for (size_t i = 0; i < nrows; ++i) {
        Integer scale = 1;
        for (const auto& c : sys.rows[i]) scale = lcm(scale, denominator(c));
        scale = lcm(scale, denominator(sys.rhs[i]));
        auto& row = res.mat[i];
        row.reserve(static_cast<size_t>(cols) + 1);
        for (const auto& c : sys.rows[i]) row.push_back(numerator(c) * (scale / denominator(c)));
        row.push_back(numerator(sys.rhs[i]) * (scale / denominator(sys.rhs[i])));
        res.transform[i].assign(nrows, Rational(0));
        res.transform[i][i] = Rational(scale);
    }

    Integer prev = 1;
    size_t r = 0;
    for (int col = 0; col < cols && r < nrows; ++col) {
        size_t pivot = r;
        while (pivot < nrows && res.mat[pivot][static_cast<size_t>(col)] == 0) ++pivot;
        if (pivot == nrows) continue; // free column
        std::swap(res.mat[r], res.mat[pivot]);
        std::swap(res.transform[r], res.transform[pivot]);
        const Integer piv = res.mat[r][static_cast<size_t>(col)];
        for (size_t j = r + 1; j < nrows; ++j) {
            const Integer f = res.mat[j][static_cast<size_t>(col)];
            for (size_t c = 0; c <= static_cast<size_t>(cols); ++c) {
                Integer num = piv * res.mat[j][c] - f * res.mat[r][c];
                Integer q, rem;
                divide_qr(num, prev, q, rem);
                if (rem != 0) throw Error("internal: fraction-free elimination left a remainder");
                res.mat[j][c] = std::move(q);
            }
            for (size_t c = 0; c < nrows; ++c)
                res.transform[j][c] =
                    (Rational(piv) * res.transform[j][c] - Rational(f) * res.transform[r][c]) /
                    Rational(prev);
        }
        res.pivot_columns.push_back(col);
        prev = piv;
        ++r;
    }
    res.rank = static_cast<int>(r);
    return res;
}

} // namespace detail

// Solves the divisibility conditions for the class of p directly. Exactly one
// of three things happens: the unique table is returned; Infeasible is thrown
// with a reusable certificate; or UniquenessViolation reports free parameters.
inline ClassTable solve_canonical_linear(const GkmGraph& g, const DirectionVector& xi, int p) {
    {
        auto report = validate(g);
        if (!report.ok) throw GraphInvalid("graph fails validation: " + report.items.front().detail);
    }
    const MorseData m = morse_data(g, xi);
    const LinearSystem sys = build_linear_system(g, m, p);
    const int cols = sys.columns();
    auto ech = detail::fraction_free_echelon(sys);

    // Any exhausted row with a surviving constant is a contradiction.
    for (size_t i = static_cast<size_t>(ech.rank); i < ech.mat.size(); ++i) {
        if (ech.mat[i].back() == 0) continue;
        std::vector<Rational> cert = ech.transform[i];
        std::vector<std::string> rows;
        for (size_t k = 0; k < cert.size(); ++k)
            if (cert[k] != 0) rows.push_back(sys.row_labels[k]);
        // assembled before the throw: argument evaluation may move `rows` first
        const std::string message =
            "no compatible values of degree " + std::to_string(sys.degree) + " for the class of '" +
            g.vertex(p).id + "'; " + std::to_string(rows.size()) + " condition(s) combine to 0 = " +
            to_string(Rational(ech.mat[i].back()));
        throw Infeasible(message, std::move(cert), std::move(rows));
    }
    if (ech.rank < cols) throw UniquenessViolation(cols - ech.rank);

    // Back substitution in exact arithmetic.
    std::vector<Rational> x(static_cast<size_t>(cols), Rational(0));
    for (int r = ech.rank - 1; r >= 0; --r) {
        const int pc = ech.pivot_columns[static_cast<size_t>(r)];
        Rational acc(ech.mat[static_cast<size_t>(r)].back());
        for (int c = pc + 1; c < cols; ++c)
            acc -= Rational(ech.mat[static_cast<size_t>(r)][static_cast<size_t>(c)]) *
                   x[static_cast<size_t>(c)];
        x[static_cast<size_t>(pc)] = acc / Rational(ech.mat[static_cast<size_t>(r)][static_cast<size_t>(pc)]);
    }

    ClassTable out;
    out.owner = p;
    out.degree = sys.degree;
    out.values.assign(static_cast<size_t>(g.num_vertices()), Polynomial(g.dim_t()));
    for (int q = 0; q < g.num_vertices(); ++q)
        if (const auto& fixed = sys.known[static_cast<size_t>(q)]) out.values[static_cast<size_t>(q)] = *fixed;
    for (size_t b = 0; b < sys.unknown_vertices.size(); ++b) {
        Polynomial val(g.dim_t());
        for (size_t mi = 0; mi < sys.monomials.size(); ++mi) {
            const Rational& c = x[static_cast<size_t>(sys.column(static_cast<int>(b), static_cast<int>(mi)))];
            if (c != 0) val += sys.monomial_polys[mi] * c;
        }
        out.values[static_cast<size_t>(sys.unknown_vertices[b])] = std::move(val);
    }
    return out;
}

// Re-evaluates an infeasibility certificate against a freshly built system:
// the weighted rows must cancel every unknown and leave a nonzero constant.
inline bool certificate_holds(const LinearSystem& sys, const std::vector<Rational>& y) {
    if (y.size() != sys.rows.size()) return false;
    for (int c = 0; c < sys.columns(); ++c) {
        Rational acc(0);
        for (size_t i = 0; i < y.size(); ++i) acc += y[i] * sys.rows[i][static_cast<size_t>(c)];
        if (acc != 0) return false;
    }
    Rational rhs(0);
    for (size_t i = 0; i < y.size(); ++i) rhs += y[i] * sys.rhs[i];
    return rhs != 0;
}

// ----- the Billey restriction formula ------------------------------------------
//
// Fix a reduced word for mu. Sum, over the subwords that are reduced words
// for sigma, the products of the partially applied simple roots: the j-th
// letter contributes the image of its simple root under the product of all
// earlier letters (chosen or not).

inline Polynomial billey_restrict(int n, const Permutation& sigma, const Permutation& mu) {
    if (n < 1) throw SchemaError("billey_restrict needs at least one strand");
    if (static_cast<int>(sigma.size()) != n || !perm_valid(sigma))
        throw SchemaError("sigma is not a permutation of 1.." + std::to_string(n));
    if (static_cast<int>(mu.size()) != n || !perm_valid(mu))
        throw SchemaError("mu is not a permutation of 1.." + std::to_string(n));

    const std::vector<int> word = reduced_word(mu);
    const int target = perm_length(sigma);

    // Per position: the partially applied root, a linear form in x1..xn.
    std::vector<Polynomial> root_at;
    root_at.reserve(word.size());
    Permutation w = perm_identity(n);
    for (int a : word) {
        const LinearForm alpha = LinearForm::unit(n, a - 1) - LinearForm::unit(n, a);
        root_at.push_back(Polynomial::from_linear_form(perm_act(w, alpha)));
        w = perm_swap_positions(w, a);
    }

    Polynomial sum(n);
    const Permutation id = perm_identity(n);
    // Depth-first over subwords; a letter may be taken only when it lengthens
    // the partial product, so every completed subword is reduced.
    std::function<void(size_t, const Permutation&, int, const Polynomial&)> walk =
        [&](size_t pos, const Permutation& partial, int chosen, const Polynomial& product) {
            if (chosen == target) {
                if (partial == sigma) sum += product;
                return;
            }
            if (static_cast<int>(word.size() - pos) < target - chosen) return;
            // skip this letter
            walk(pos + 1, partial, chosen, product);
            // take it, if it ascends
            const int a = word[pos];
            if (partial[static_cast<size_t>(a - 1)] < partial[static_cast<size_t>(a)])
                walk(pos + 1, perm_swap_positions(partial, a), chosen + 1, product * root_at[pos]);
        };
    walk(0, id, 0, Polynomial::one(n));
    return sum;
}

} // namespace gkm
