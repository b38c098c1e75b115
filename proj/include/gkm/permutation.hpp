#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "gkm/errors.hpp"
#include "gkm/linear_form.hpp"

namespace gkm {

// One-line notation with 1-based values: perm[i] is the image of i+1.
using Permutation = std::vector<int>;

inline Permutation perm_identity(int n) {
    Permutation p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    return p;
}

inline bool perm_valid(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<size_t>(v - 1)]) return false;
        seen[static_cast<size_t>(v - 1)] = true;
    }
    return true;
}

inline int perm_apply(const Permutation& p, int i) { return p[static_cast<size_t>(i - 1)]; }

// Function composition: (a*b)(i) = a(b(i)).
inline Permutation perm_compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw DimensionMismatch("composing permutations of different sizes");
    Permutation r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<size_t>(b[i] - 1)];
    return r;
}

inline Permutation perm_inverse(const Permutation& p) {
    Permutation r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[static_cast<size_t>(p[i] - 1)] = static_cast<int>(i + 1);
    return r;
}

// Number of inversions.
inline int perm_length(const Permutation& p) {
    int l = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++l;
    return l;
}

// Left multiplication by the transposition of the values a and b.
inline Permutation perm_swap_values(const Permutation& p, int a, int b) {
    Permutation r = p;
    for (auto& v : r) {
        if (v == a)
            v = b;
        else if (v == b)
            v = a;
    }
    return r;
}

// Right multiplication by the adjacent transposition s_i (1-based position).
inline Permutation perm_swap_positions(const Permutation& p, int i) {
    Permutation r = p;
    std::swap(r[static_cast<size_t>(i - 1)], r[static_cast<size_t>(i)]);
    return r;
}

// A deterministic reduced word: indices a_1..a_m of adjacent transpositions
// with p == s_{a_1} ∘ ... ∘ s_{a_m} and m == perm_length(p). Built by
// repeatedly undoing the first descent, which removes exactly one inversion
// per step.
inline std::vector<int> reduced_word(const Permutation& p) {
    std::vector<int> word;
    Permutation w = p;
    for (;;) {
        int descent = 0;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] > w[i + 1]) {
                descent = static_cast<int>(i + 1);
                break;
            }
        if (descent == 0) break;
        w = perm_swap_positions(w, descent);
        word.push_back(descent);
    }
    std::reverse(word.begin(), word.end());
    return word;
}

// All permutations of {1..n} in lexicographic one-line order.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<Permutation> out;
    Permutation p = perm_identity(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::string perm_id(const Permutation& p) {
    std::string s;
    for (int v : p) s += std::to_string(v);
    return s;
}

// The linear form x_{p(1)} ... obtained by permuting variables of f:
// coefficient of x_{p(i)} in the image equals the coefficient of x_i in f.
inline LinearForm perm_act(const Permutation& p, const LinearForm& f) {
    if (static_cast<int>(p.size()) != f.dim())
        throw DimensionMismatch("permutation size differs from form dimension");
    std::vector<Rational> c(p.size());
    for (size_t i = 0; i < p.size(); ++i) c[static_cast<size_t>(p[i] - 1)] = f[static_cast<int>(i)];
    return LinearForm(std::move(c));
}

} // namespace gkm
