#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/polynomial.hpp"

namespace gkm {

// Quotient of a polynomial by a product of linear forms, kept in a normal
// form strong enough that structural equality is mathematical equality:
//  - every denominator factor is monic (first nonzero coefficient 1), the
//    scalars being absorbed into the numerator;
//  - the numerator is divisible by none of the denominator factors;
//  - the zero function has an empty denominator.
// Linear forms are primes in Q[x1..xn], so this normal form is unique.
class RationalFunction {
  public:
    using DenMap = std::map<LinearForm, int>;

    explicit RationalFunction(Polynomial num) : num_(std::move(num)) {}

    RationalFunction(Polynomial num, const std::vector<LinearForm>& den_factors)
        : num_(std::move(num)) {
        for (const auto& f : den_factors) push_factor(f);
        normalize();
    }

    static RationalFunction zero(int nvars) { return RationalFunction(Polynomial(nvars)); }
    static RationalFunction one(int nvars) { return RationalFunction(Polynomial::one(nvars)); }

    int nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    const Polynomial& num() const { return num_; }
    const DenMap& den() const { return den_; }

    bool is_polynomial() const { return den_.empty(); }

    const Polynomial& to_polynomial() const {
        if (!den_.empty()) throw NotPolynomial(to_string());
        return num_;
    }

    Polynomial den_product() const {
        Polynomial d = Polynomial::one(nvars());
        for (const auto& [f, m] : den_)
            for (int i = 0; i < m; ++i) d *= Polynomial::from_linear_form(f);
        return d;
    }

    RationalFunction operator-() const {
        RationalFunction r(*this);
        r.num_ = -r.num_;
        return r;
    }

    RationalFunction operator+(const RationalFunction& o) const {
        require_same_vars(o, "+");
        // least common denominator: factorwise max multiplicity
        DenMap lcm = den_;
        for (const auto& [f, m] : o.den_) {
            auto it = lcm.find(f);
            if (it == lcm.end())
                lcm.emplace(f, m);
            else
                it->second = std::max(it->second, m);
        }
        Polynomial a = num_;
        Polynomial b = o.num_;
        for (const auto& [f, m] : lcm) {
            int ma = multiplicity(den_, f), mb = multiplicity(o.den_, f);
            for (int i = ma; i < m; ++i) a *= Polynomial::from_linear_form(f);
            for (int i = mb; i < m; ++i) b *= Polynomial::from_linear_form(f);
        }
        RationalFunction r(a + b);
        r.den_ = std::move(lcm);
        r.normalize();
        return r;
    }
    RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }

    RationalFunction operator*(const RationalFunction& o) const {
        require_same_vars(o, "*");
        RationalFunction r(num_ * o.num_);
        r.den_ = den_;
        for (const auto& [f, m] : o.den_) r.den_[f] += m;
        r.normalize();
        return r;
    }

    RationalFunction operator*(const Polynomial& p) const {
        RationalFunction r(num_ * p);
        r.den_ = den_;
        r.normalize();
        return r;
    }

    RationalFunction operator*(const Rational& s) const {
        RationalFunction r(*this);
        r.num_ *= s;
        if (s == 0) r.den_.clear();
        return r;
    }

    // Multiplies by 1/f.
    RationalFunction div_linear(const LinearForm& f) const {
        if (f.is_zero()) throw Error("division by the zero linear form");
        RationalFunction r(*this);
        if (r.is_zero()) return r;
        r.push_factor(f);
        r.normalize();
        return r;
    }

    // Multiplies by f (a degree shift up by one).
    RationalFunction mul_linear(const LinearForm& f) const {
        RationalFunction r(*this);
        r.num_ *= Polynomial::from_linear_form(f);
        r.normalize();
        return r;
    }

    bool operator==(const RationalFunction& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    // Equality by cross multiplication, independent of the normal form.
    bool equals_cross_mult(const RationalFunction& o) const {
        require_same_vars(o, "equals_cross_mult");
        return num_ * o.den_product() == o.num_ * den_product();
    }

    std::string to_string() const {
        if (den_.empty()) return num_.to_string();
        std::ostringstream os;
        os << "(" << num_.to_string() << ") / ";
        bool first = true;
        for (const auto& [f, m] : den_) {
            if (!first) os << "*";
            first = false;
            os << "(" << Polynomial::from_linear_form(f).to_string() << ")";
            if (m > 1) os << "^" << m;
        }
        return os.str();
    }

  private:
    static int multiplicity(const DenMap& d, const LinearForm& f) {
        auto it = d.find(f);
        return it == d.end() ? 0 : it->second;
    }

    void require_same_vars(const RationalFunction& o, const char* op) const {
        if (nvars() != o.nvars())
            throw DimensionMismatch(std::string("RationalFunction ") + op);
    }

    // Adds one denominator factor, monic-normalizing and absorbing the scale
    // into the numerator.
    void push_factor(const LinearForm& f) {
        auto [monic, scale] = f.normalized();
        num_ *= Rational(1) / scale;
        den_[monic] += 1;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0) {
                auto q = try_divide_linear(num_, it->first);
                if (!q) break;
                num_ = std::move(*q);
                --it->second;
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
    }

    Polynomial num_;
    DenMap den_;
};

inline RationalFunction operator*(const Polynomial& p, const RationalFunction& r) { return r * p; }

} // namespace gkm
