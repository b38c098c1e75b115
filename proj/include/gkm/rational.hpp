#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "gkm/errors.hpp"

namespace gkm {

// Exact rational scalar. cpp_rational keeps the canonical form we rely on
// everywhere: numerator and denominator coprime, denominator positive.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Prints "a/b", or just "a" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

// Accepts an optionally signed integer or "a/b" with nonzero b.
// Whitespace at either end is tolerated.
inline Rational parse_rational(std::string_view text) {
    size_t b = text.find_first_not_of(" \t");
    size_t e = text.find_last_not_of(" \t");
    if (b == std::string_view::npos)
        throw SchemaError("empty rational literal");
    std::string s(text.substr(b, e - b + 1));

    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view v(s);
    if (!v.empty() && (v[0] == '+' || v[0] == '-')) v.remove_prefix(1);
    size_t slash = v.find('/');
    bool ok = slash == std::string_view::npos
                  ? digits(v)
                  : digits(v.substr(0, slash)) && digits(v.substr(slash + 1));
    if (!ok)
        throw SchemaError("malformed rational literal '" + s + "'");
    if (slash != std::string_view::npos && Integer(std::string(v.substr(slash + 1))) == 0)
        throw SchemaError("zero denominator in '" + s + "'");
    Rational r{std::string(v)};
    return s[0] == '-' ? Rational(-r) : r;
}

} // namespace gkm
