#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/rational.hpp"

namespace gkm {

// Element of the Lie algebra of the torus: the direction a Morse function
// is taken along. Coordinates are rational.
class DirectionVector {
  public:
    DirectionVector() = default;
    explicit DirectionVector(std::vector<Rational> c) : c_(std::move(c)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& coords() const { return c_; }

    bool operator==(const DirectionVector& o) const { return c_ == o.c_; }

  private:
    std::vector<Rational> c_;
};

// Degree-one element of Sym(t*) with rational coefficients.
class LinearForm {
  public:
    LinearForm() = default;
    explicit LinearForm(std::vector<Rational> c) : c_(std::move(c)) {}
    static LinearForm zero(int dim) { return LinearForm(std::vector<Rational>(static_cast<size_t>(dim))); }
    static LinearForm unit(int dim, int i) {
        LinearForm f = zero(dim);
        f.c_[static_cast<size_t>(i)] = 1;
        return f;
    }

    int dim() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    Rational& operator[](int i) { return c_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
    }

    // Index of the first nonzero coefficient, or -1 for the zero form.
    int pivot() const {
        for (int i = 0; i < dim(); ++i)
            if (c_[static_cast<size_t>(i)] != 0) return i;
        return -1;
    }

    // Index of the last nonzero coefficient, or -1 for the zero form.
    int last_nonzero() const {
        for (int i = dim() - 1; i >= 0; --i)
            if (c_[static_cast<size_t>(i)] != 0) return i;
        return -1;
    }

    Rational pairing(const DirectionVector& xi) const {
        require_dim(xi.dim(), "pairing");
        Rational s = 0;
        for (int i = 0; i < dim(); ++i) s += c_[static_cast<size_t>(i)] * xi[i];
        return s;
    }

    LinearForm operator+(const LinearForm& o) const {
        require_dim(o.dim(), "+");
        LinearForm r = *this;
        for (int i = 0; i < dim(); ++i) r.c_[static_cast<size_t>(i)] += o[i];
        return r;
    }
    LinearForm operator-(const LinearForm& o) const {
        require_dim(o.dim(), "-");
        LinearForm r = *this;
        for (int i = 0; i < dim(); ++i) r.c_[static_cast<size_t>(i)] -= o[i];
        return r;
    }
    LinearForm operator-() const {
        LinearForm r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    LinearForm operator*(const Rational& s) const {
        LinearForm r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    // Scale making the first nonzero coefficient exactly 1; returns the monic
    // form together with the factor s such that *this == s * monic.
    std::pair<LinearForm, Rational> normalized() const {
        int p = pivot();
        if (p < 0) throw Error("cannot normalize the zero form");
        Rational s = c_[static_cast<size_t>(p)];
        return {*this * (Rational(1) / s), s};
    }

    // Proportionality: returns c with *this == c * o, if it exists.
    // o must be nonzero.
    std::optional<Rational> ratio_to(const LinearForm& o) const {
        require_dim(o.dim(), "ratio_to");
        int p = o.pivot();
        if (p < 0) throw Error("ratio_to zero form");
        Rational c = c_[static_cast<size_t>(p)] / o[p];
        for (int i = 0; i < dim(); ++i)
            if (c_[static_cast<size_t>(i)] != c * o[i]) return std::nullopt;
        return c;
    }

    bool operator==(const LinearForm& o) const { return c_ == o.c_; }
    bool operator<(const LinearForm& o) const {
        if (dim() != o.dim()) return dim() < o.dim();
        return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
    }

  private:
    void require_dim(int d, const char* op) const {
        if (d != dim())
            throw DimensionMismatch(std::string("LinearForm ") + op + ": " +
                                    std::to_string(dim()) + " vs " + std::to_string(d));
    }
    std::vector<Rational> c_;
};

// Integer weight labelling a graph edge. Never zero for a well-formed edge.
class Weight {
  public:
    Weight() = default;
    explicit Weight(std::vector<std::int64_t> c) : c_(std::move(c)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    std::int64_t operator[](int i) const { return c_[static_cast<size_t>(i)]; }
    const std::vector<std::int64_t>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
    }

    Weight operator-() const {
        Weight w = *this;
        for (auto& x : w.c_) x = -x;
        return w;
    }

    LinearForm to_linear_form() const {
        std::vector<Rational> c(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
        return LinearForm(std::move(c));
    }

    Rational pairing(const DirectionVector& xi) const { return to_linear_form().pairing(xi); }

    bool operator==(const Weight& o) const { return c_ == o.c_; }

    // True when the two weights span the same line.
    bool parallel_to(const Weight& o) const {
        return to_linear_form().ratio_to(o.to_linear_form()).has_value();
    }

  private:
    std::vector<std::int64_t> c_;
};

} // namespace gkm
