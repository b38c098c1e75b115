#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/linear_form.hpp"
#include "gkm/rational.hpp"

namespace gkm {

// Exponent vector of a monomial; always has one entry per variable.
using Exponents = std::vector<unsigned>;

inline unsigned exponents_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

// Graded lexicographic order, descending, so that a map's begin() is the
// leading term and iteration matches the printed term order.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = exponents_degree(a), db = exponents_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

// Sparse multivariate polynomial over the rationals in variables x1..xn.
// No zero coefficients are ever stored, so representation is canonical and
// operator== is mathematical equality.
class Polynomial {
  public:
    using TermMap = std::map<Exponents, Rational, GrlexGreater>;

    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add_term(Exponents(static_cast<size_t>(nvars), 0u), c);
        return p;
    }
    static Polynomial one(int nvars) { return constant(nvars, 1); }

    // i is zero-based; the printed name of variable i is x{i+1}.
    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Exponents e(static_cast<size_t>(nvars), 0u);
        e[static_cast<size_t>(i)] = 1;
        p.add_term(e, 1);
        return p;
    }

    static Polynomial from_linear_form(const LinearForm& f) {
        Polynomial p(f.dim());
        for (int i = 0; i < f.dim(); ++i) {
            if (f[i] == 0) continue;
            Exponents e(static_cast<size_t>(f.dim()), 0u);
            e[static_cast<size_t>(i)] = 1;
            p.add_term(e, f[i]);
        }
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const Exponents& leading_exponents() const {
        require_nonzero("leading_exponents");
        return terms_.begin()->first;
    }
    const Rational& leading_coeff() const {
        require_nonzero("leading_coeff");
        return terms_.begin()->second;
    }

    // Accumulates c * x^e, erasing the term if the sum cancels.
    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        if (static_cast<int>(e.size()) != nvars_)
            throw DimensionMismatch("term has " + std::to_string(e.size()) + " exponents, polynomial has " +
                                    std::to_string(nvars_) + " variables");
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_same_vars(o, "+");
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_same_vars(o, "-");
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial operator+(const Polynomial& o) const {
        Polynomial r(*this);
        r += o;
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r(*this);
        r -= o;
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        require_same_vars(o, "*");
        Polynomial r(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exponents e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial operator*(const Rational& s) const {
        if (s == 0) return Polynomial(nvars_);
        Polynomial r(*this);
        for (auto& [e, c] : r.terms_) c *= s;
        return r;
    }
    Polynomial& operator*=(const Rational& s) { return *this = *this * s; }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    int total_degree() const {
        require_nonzero("total_degree");
        return static_cast<int>(exponents_degree(terms_.begin()->first));
    }

    // Degree when every term agrees; empty for mixed-degree polynomials.
    // Precondition: not the zero polynomial (which is homogeneous of every
    // degree; see is_homogeneous_of_degree).
    std::optional<int> homogeneous_degree() const {
        require_nonzero("homogeneous_degree");
        unsigned d = exponents_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (exponents_degree(e) != d) return std::nullopt;
        return static_cast<int>(d);
    }

    bool is_homogeneous_of_degree(int d) const {
        if (is_zero()) return true;
        auto h = homogeneous_degree();
        return h.has_value() && *h == d;
    }

    bool is_constant() const {
        return is_zero() || (terms_.size() == 1 && exponents_degree(terms_.begin()->first) == 0);
    }
    Rational constant_value() const {
        if (is_zero()) return 0;
        if (!is_constant()) throw Error("constant_value on non-constant polynomial");
        return terms_.begin()->second;
    }

    bool is_integral() const {
        for (const auto& [e, c] : terms_)
            if (!is_integer(c)) return false;
        return true;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw DimensionMismatch("evaluate point has wrong dimension");
        Rational total = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
            total += t;
        }
        return total;
    }

    // Simultaneous substitution x_i -> images[i]: the algebra endomorphism
    // determined by the given degree-one images.
    Polynomial substitute(const std::vector<LinearForm>& images) const {
        if (static_cast<int>(images.size()) != nvars_)
            throw DimensionMismatch("substitute needs one image per variable");
        // powers[i][k] = images[i]^k, built on demand
        std::vector<std::vector<Polynomial>> powers(static_cast<size_t>(nvars_));
        auto power = [&](size_t i, unsigned k) -> const Polynomial& {
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(one(nvars_));
            while (pw.size() <= k) pw.push_back(pw.back() * from_linear_form(images[i]));
            return pw[k];
        };
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(nvars_, c);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t *= power(i, e[i]);
            r += t;
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational mag = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            bool has_vars = exponents_degree(e) > 0;
            if (!has_vars) {
                os << to_string_impl(mag);
                continue;
            }
            bool star = false;
            if (mag != 1) {
                os << to_string_impl(mag);
                star = true;
            }
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (star) os << "*";
                os << "x" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
                star = true;
            }
        }
        return os.str();
    }

    // Parses the textual form emitted by to_string: a signed sum of terms,
    // each a '*'-joined product of an optional rational coefficient and
    // var^power factors.
    static Polynomial parse(int nvars, std::string_view text);

  private:
    void require_same_vars(const Polynomial& o, const char* op) const {
        if (nvars_ != o.nvars_)
            throw DimensionMismatch(std::string("Polynomial ") + op + ": " + std::to_string(nvars_) +
                                    " vs " + std::to_string(o.nvars_) + " variables");
    }
    void require_nonzero(const char* what) const {
        if (terms_.empty()) throw Error(std::string(what) + " on the zero polynomial");
    }
    static std::string to_string_impl(const Rational& r) { return gkm::to_string(r); }

    int nvars_;
    TermMap terms_;
};

inline Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

namespace detail {

inline void parse_term_into(Polynomial& acc, int nvars, std::string_view term, bool negative) {
    // term: '*'-separated factors, each either a rational literal or x<idx>[^<exp>]
    Rational coeff = negative ? -1 : 1;
    Exponents e(static_cast<size_t>(nvars), 0u);
    size_t pos = 0;
    bool saw_factor = false;
    while (pos <= term.size()) {
        size_t star = term.find('*', pos);
        std::string_view f = term.substr(pos, star == std::string_view::npos ? star : star - pos);
        // trim
        size_t b = f.find_first_not_of(" \t");
        if (b == std::string_view::npos)
            throw SchemaError("empty factor in term '" + std::string(term) + "'");
        size_t en = f.find_last_not_of(" \t");
        f = f.substr(b, en - b + 1);
        if (f[0] == 'x') {
            size_t caret = f.find('^');
            std::string_view idx = f.substr(1, caret == std::string_view::npos ? caret : caret - 1);
            int var = 0;
            for (char c : idx) {
                if (c < '0' || c > '9') throw SchemaError("bad variable '" + std::string(f) + "'");
                var = var * 10 + (c - '0');
            }
            if (idx.empty() || var < 1 || var > nvars)
                throw SchemaError("variable '" + std::string(f) + "' out of range for " +
                                  std::to_string(nvars) + " variables");
            unsigned exp = 1;
            if (caret != std::string_view::npos) {
                std::string_view pw = f.substr(caret + 1);
                if (pw.empty()) throw SchemaError("missing exponent in '" + std::string(f) + "'");
                exp = 0;
                for (char c : pw) {
                    if (c < '0' || c > '9') throw SchemaError("bad exponent in '" + std::string(f) + "'");
                    exp = exp * 10 + static_cast<unsigned>(c - '0');
                }
            }
            e[static_cast<size_t>(var - 1)] += exp;
        } else {
            coeff *= parse_rational(f);
        }
        saw_factor = true;
        if (star == std::string_view::npos) break;
        pos = star + 1;
    }
    if (!saw_factor) throw SchemaError("empty term");
    acc.add_term(e, coeff);
}

} // namespace detail

inline Polynomial Polynomial::parse(int nvars, std::string_view text) {
    Polynomial acc(nvars);
    size_t pos = 0;
    // skip leading whitespace
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos == text.size()) throw SchemaError("empty polynomial text");
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    size_t start = pos;
    auto flush = [&](size_t end, bool next_negative) {
        std::string_view term = text.substr(start, end - start);
        if (term.find_first_not_of(" \t") == std::string_view::npos)
            throw SchemaError("missing term in polynomial text");
        detail::parse_term_into(acc, nvars, term, negative);
        negative = next_negative;
    };
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '+' || c == '-') {
            // signs inside a factor (e.g. "2/-3") are not produced and not accepted
            flush(pos, c == '-');
            start = pos + 1;
        } else if (c == '(' || c == ')') {
            throw SchemaError("parentheses are not part of the polynomial text form");
        }
    }
    flush(text.size(), false);
    return acc;
}

// Exact division of p by a nonzero linear form. Writes p = q*f + r with r
// free of f's pivot variable obstruction; returns q when r == 0 and throws
// NotDivisible otherwise. Synthetic division along the pivot variable of f:
// with f = c*x_k + g, matching coefficients of x_k^d in p = q*f gives
// q_{d} = (p_{d+1} - g*q_{d+1}) / c from the top degree down.
inline Polynomial exact_divide_linear(const Polynomial& p, const LinearForm& f) {
    if (p.nvars() != f.dim())
        throw DimensionMismatch("exact_divide_linear: polynomial/form dimensions differ");
    if (f.is_zero()) throw Error("exact_divide_linear by the zero form");
    if (p.is_zero()) return Polynomial(p.nvars());

    const int n = p.nvars();
    const size_t k = static_cast<size_t>(f.pivot());
    const Rational c = f[static_cast<int>(k)];
    LinearForm g = f;
    g[static_cast<int>(k)] = 0;
    Polynomial gp = Polynomial::from_linear_form(g);

    // split p into slices by the exponent of x_k
    unsigned dmax = 0;
    for (const auto& [e, coefficient] : p.terms()) dmax = std::max(dmax, e[k]);
    std::vector<Polynomial> slice(dmax + 1, Polynomial(n));
    for (const auto& [e, coefficient] : p.terms()) {
        Exponents stripped = e;
        unsigned d = stripped[k];
        stripped[k] = 0;
        slice[d].add_term(stripped, coefficient);
    }

    auto not_divisible = [&](const Polynomial& rem) -> NotDivisible {
        Polynomial lead(rem.nvars());
        lead.add_term(rem.leading_exponents(), rem.leading_coeff());
        return NotDivisible("remainder is nonzero", lead.to_string());
    };

    if (dmax == 0) throw not_divisible(p);

    std::vector<Polynomial> q(dmax, Polynomial(n));
    for (int d = static_cast<int>(dmax); d >= 1; --d) {
        Polynomial rhs = slice[static_cast<size_t>(d)];
        if (static_cast<unsigned>(d) < dmax) rhs -= gp * q[static_cast<size_t>(d)];
        q[static_cast<size_t>(d - 1)] = rhs * (Rational(1) / c);
    }
    Polynomial rem = slice[0] - gp * q[0];
    if (!rem.is_zero()) throw not_divisible(rem);

    Polynomial quotient(n);
    for (size_t d = 0; d < q.size(); ++d)
        for (const auto& [e, coefficient] : q[d].terms()) {
            Exponents lifted = e;
            lifted[k] += static_cast<unsigned>(d);
            quotient.add_term(lifted, coefficient);
        }
    return quotient;
}

inline std::optional<Polynomial> try_divide_linear(const Polynomial& p, const LinearForm& f) {
    try {
        return exact_divide_linear(p, f);
    } catch (const NotDivisible&) {
        return std::nullopt;
    }
}

// The projection along eta determined by xi, extended from degree one as an
// algebra endomorphism: on a linear X it is X - (<X,xi>/<eta,xi>) * eta, so
// eta itself maps to zero and <xi>-pairing is preserved on the image.
inline Polynomial rho_projection(const Polynomial& p, const Weight& eta, const DirectionVector& xi) {
    if (p.nvars() != eta.dim() || p.nvars() != xi.dim())
        throw DimensionMismatch("rho_projection operand dimensions differ");
    LinearForm ef = eta.to_linear_form();
    Rational d = ef.pairing(xi);
    if (d == 0)
        throw NonGenericDirection("projection weight pairs to zero with the direction",
                                  Polynomial::from_linear_form(ef).to_string());
    std::vector<LinearForm> images;
    images.reserve(static_cast<size_t>(p.nvars()));
    for (int i = 0; i < p.nvars(); ++i) {
        // <x_i, xi> = xi_i
        LinearForm img = LinearForm::unit(p.nvars(), i) - ef * (xi[i] / d);
        images.push_back(std::move(img));
    }
    return p.substitute(images);
}

} // namespace gkm
