#pragma once

#include <vector>

#include "fermat/exact/cyclotomic.hpp"
#include "fermat/exact/matrix.hpp"

namespace fermat {

namespace field {

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const CyclotomicRational& x) { return x.is_zero(); }
inline Rational div(const Rational& a, const Rational& b) { return a / b; }
inline CyclotomicRational div(const CyclotomicRational& a, const CyclotomicRational& b) { return a * inverse(b); }
inline int real_sign(const Rational& x) { return sgn(x); }
inline int real_sign(const CyclotomicRational& x) { return fermat::real_sign(x); }

}  // namespace field

/// Square matrix over a field, stored as nested vectors so that scalar types
/// without a default value (cyclotomic numbers carry their conductor) work.
template <class F>
using FieldMatrix = std::vector<std::vector<F>>;

/// Characteristic polynomial det(xI - A), low degree first, via reduction to
/// Hessenberg form followed by the standard three-term recurrence.
template <class F>
std::vector<F> characteristic_polynomial(FieldMatrix<F> h, const F& zero, const F& one) {
    const std::size_t n = h.size();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && field::is_zero(h[i][m - 1])) ++i;
        if (i == n) continue;
        if (i != m) {
            std::swap(h[i], h[m]);
            for (auto& row : h) std::swap(row[i], row[m]);
        }
        const F t = h[m][m - 1];
        for (std::size_t r = m + 1; r < n; ++r) {
            if (field::is_zero(h[r][m - 1])) continue;
            F u = field::div(h[r][m - 1], t);
            for (std::size_t c = 0; c < n; ++c) h[r][c] = h[r][c] - u * h[m][c];
            for (std::size_t c = 0; c < n; ++c) h[c][m] = h[c][m] + u * h[c][r];
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block
    std::vector<std::vector<F>> p(n + 1);
    p[0] = {one};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<F> next(m + 1, zero);
        // (x - h_mm) p_{m-1}
        for (std::size_t k = 0; k < p[m - 1].size(); ++k) {
            next[k + 1] = next[k + 1] + p[m - 1][k];
            next[k] = next[k] - h[m - 1][m - 1] * p[m - 1][k];
        }
        F prod = one;
        for (std::size_t i = m - 1; i >= 1; --i) {
            prod = prod * h[i][i - 1];
            if (field::is_zero(prod)) break;
            F coef = h[i - 1][m - 1] * prod;
            for (std::size_t k = 0; k < p[i - 1].size(); ++k) next[k] = next[k] - coef * p[i - 1][k];
        }
        p[m] = std::move(next);
    }
    return p[n];
}

/// Inertia (positive, negative, zero) of a real-rooted characteristic
/// polynomial by Descartes' rule of signs.
template <class F>
struct Inertia {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

template <class F>
Inertia<F> descartes_inertia(const std::vector<F>& poly) {
    Inertia<F> r;
    std::size_t z = 0;
    while (z < poly.size() && field::is_zero(poly[z])) ++z;
    r.zero = z;
    std::vector<int> s;
    for (std::size_t k = z; k < poly.size(); ++k) s.push_back(field::real_sign(poly[k]));
    auto changes = [](const std::vector<int>& v) {
        std::size_t c = 0;
        int last = 0;
        for (int x : v) {
            if (x == 0) continue;
            if (last != 0 && x != last) ++c;
            last = x;
        }
        return c;
    };
    r.positive = changes(s);
    std::vector<int> neg(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) neg[k] = ((k + z) % 2) ? -s[k] : s[k];
    r.negative = changes(neg);
    return r;
}

}  // namespace fermat
