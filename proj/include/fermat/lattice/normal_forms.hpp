#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <vector>

#include "fermat/exact/matrix.hpp"

namespace fermat {

/// U * M * V = D with D diagonal in divisibility order; vinv = V^{-1}.
struct SmithForm {
    IntMatrix diagonal;
    IntMatrix left;
    IntMatrix right;
    IntMatrix right_inverse;
    std::vector<Integer> divisors;  // min(rows, cols) entries, zeros last
    std::size_t rank = 0;
};

namespace detail {

inline bool find_min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            const Integer& x = d(i, j);
            if (x == 0) continue;
            if (!found || cmpabs(x, best) < 0) {
                best = abs(x);
                pi = i;
                pj = j;
                found = true;
                if (best == 1) return true;
            }
        }
    return found;
}

/// Normalizes a list of nonnegative diagonal entries to Smith order.
inline std::vector<Integer> smith_normalize(std::vector<Integer> diag) {
    const std::size_t n = diag.size();
    for (auto& x : diag) x = abs(x);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (diag[i] == 0 && diag[j] == 0) continue;
            if (diag[i] == 0) {
                std::swap(diag[i], diag[j]);
                continue;
            }
            if (diag[j] == 0) continue;
            Integer g = gcd(diag[i], diag[j]);
            Integer l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

}  // namespace detail

/// Smith normal form with unimodular transforms.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithForm s;
    s.diagonal = m;
    s.left = IntMatrix::identity(rows);
    s.right = IntMatrix::identity(cols);
    s.right_inverse = IntMatrix::identity(cols);
    IntMatrix& d = s.diagonal;
    IntMatrix& u = s.left;
    IntMatrix& v = s.right;
    IntMatrix& vi = s.right_inverse;

    auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        d.add_row(dst, src, f);
        u.add_row(dst, src, f);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        // col_dst += f col_src  <=>  V <- V E, V^{-1} <- E^{-1} V^{-1}: row_src -= f row_dst
        d.add_col(dst, src, f);
        v.add_col(dst, src, f);
        vi.add_row(src, dst, -f);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };

    std::size_t t = 0;
    const std::size_t n = std::min(rows, cols);
    for (; t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!detail::find_min_pivot(d, t, pi, pj)) break;
        row_swap(t, pi);
        col_swap(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                row_add(i, t, -floor_div(d(i, t), d(t, t)));
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                col_add(j, t, -floor_div(d(t, j), d(t, t)));
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) {
                // move the smallest remainder in row/column t onto the pivot
                std::size_t bi = t, bj = t;
                Integer best = abs(d(t, t));
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (d(i, t) != 0 && cmpabs(d(i, t), best) < 0) best = abs(d(i, t)), bi = i, bj = t;
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(t, j) != 0 && cmpabs(d(t, j), best) < 0) best = abs(d(t, j)), bi = t, bj = j;
                row_swap(t, bi);
                col_swap(t, bj);
                continue;
            }
            // divisibility of the remaining block
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    s.rank = t;
    s.divisors.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.divisors[i] = d(i, i);
    return s;
}

namespace detail {

/// Diagonalizes in 64-bit arithmetic; returns nullopt on overflow.
inline std::optional<std::vector<Integer>> diagonal_entries_i64(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::int64_t> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!m(i, j).fits_slong_p()) return std::nullopt;
            a[i * cols + j] = m(i, j).get_si();
        }
    auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return a[i * cols + j]; };
    auto fdiv = [](std::int64_t x, std::int64_t y) {
        std::int64_t q = x / y;
        if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
        return q;
    };
    // row_dst -= q * row_src over columns >= from
    auto row_sub = [&](std::size_t dst, std::size_t src, std::int64_t q, std::size_t from) {
        for (std::size_t j = from; j < cols; ++j) {
            std::int64_t s = at(src, j);
            if (s == 0) continue;
            std::int64_t prod, res;
            if (__builtin_mul_overflow(q, s, &prod) || __builtin_sub_overflow(at(dst, j), prod, &res)) return false;
            at(dst, j) = res;
        }
        return true;
    };
    auto col_sub = [&](std::size_t dst, std::size_t src, std::int64_t q, std::size_t from) {
        for (std::size_t i = from; i < rows; ++i) {
            std::int64_t s = at(i, src);
            if (s == 0) continue;
            std::int64_t prod, res;
            if (__builtin_mul_overflow(q, s, &prod) || __builtin_sub_overflow(at(i, dst), prod, &res)) return false;
            at(i, dst) = res;
        }
        return true;
    };
    auto swap_rows = [&](std::size_t x, std::size_t y) {
        if (x != y)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(x, j), at(y, j));
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x != y)
            for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, x), at(i, y));
    };
    auto absv = [](std::int64_t x) { return x < 0 ? -x : x; };

    const std::size_t n = std::min(rows, cols);
    std::vector<Integer> diag;
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = rows, pj = cols;
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows && best != 1; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                std::int64_t x = absv(at(i, j));
                if (x != 0 && (best == 0 || x < best)) {
                    best = x, pi = i, pj = j;
                    if (best == 1) break;
                }
            }
        if (best == 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (at(i, t) == 0) continue;
                if (!row_sub(i, t, fdiv(at(i, t), at(t, t)), t)) return std::nullopt;
                if (at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (at(t, j) == 0) continue;
                if (!col_sub(j, t, fdiv(at(t, j), at(t, t)), t)) return std::nullopt;
                if (at(t, j) != 0) clean = false;
            }
            if (clean) break;
            std::size_t bi = t, bj = t;
            std::int64_t b = absv(at(t, t));
            for (std::size_t i = t + 1; i < rows; ++i)
                if (at(i, t) != 0 && absv(at(i, t)) < b) b = absv(at(i, t)), bi = i, bj = t;
            for (std::size_t j = t + 1; j < cols; ++j)
                if (at(t, j) != 0 && absv(at(t, j)) < b) b = absv(at(t, j)), bi = t, bj = j;
            swap_rows(t, bi);
            swap_cols(t, bj);
        }
        diag.emplace_back(static_cast<long>(absv(at(t, t))));
    }
    diag.resize(n, Integer(0));
    return diag;
}

inline std::vector<Integer> diagonal_entries_mpz(const IntMatrix& m) {
    IntMatrix d = m;
    const std::size_t rows = d.rows(), cols = d.cols(), n = std::min(rows, cols);
    std::vector<Integer> diag;
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!find_min_pivot(d, t, pi, pj)) break;
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                d.add_row(i, t, -floor_div(d(i, t), d(t, t)));
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                d.add_col(j, t, -floor_div(d(t, j), d(t, t)));
                if (d(t, j) != 0) clean = false;
            }
            if (clean) break;
            std::size_t bi = t, bj = t;
            Integer b = abs(d(t, t));
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d(i, t) != 0 && cmpabs(d(i, t), b) < 0) b = abs(d(i, t)), bi = i, bj = t;
            for (std::size_t j = t + 1; j < cols; ++j)
                if (d(t, j) != 0 && cmpabs(d(t, j), b) < 0) b = abs(d(t, j)), bi = t, bj = j;
            d.swap_rows(t, bi);
            d.swap_cols(t, bj);
        }
        diag.push_back(abs(d(t, t)));
    }
    diag.resize(n, Integer(0));
    return diag;
}

}  // namespace detail

namespace detail {

/// Eliminates unit pivots of a sparse matrix (Markowitz order). A unit pivot
/// contributes a divisor 1 and, once its column is cleared by row operations,
/// its row is cleared by column operations that touch nothing else. Returns the
/// number of unit pivots and the remaining block, or nullopt on 64-bit overflow.
struct UnitElimination {
    std::size_t units = 0;
    IntMatrix rest;
};

inline std::optional<UnitElimination> eliminate_unit_pivots(const IntMatrix& m) {
    using Entry = std::pair<std::size_t, std::int64_t>;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Entry>> a(rows);
    std::vector<std::vector<std::size_t>> col_rows(cols);  // may hold stale rows; checked on use
    std::vector<std::size_t> col_count(cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (m(i, j) == 0) continue;
            if (!m(i, j).fits_slong_p()) return std::nullopt;
            a[i].emplace_back(j, m(i, j).get_si());
            col_rows[j].push_back(i);
            ++col_count[j];
        }
    std::vector<bool> row_alive(rows, true), col_alive(cols, true);
    auto find = [&](std::size_t i, std::size_t j) -> std::int64_t {
        auto it = std::lower_bound(a[i].begin(), a[i].end(), Entry{j, INT64_MIN});
        return (it != a[i].end() && it->first == j) ? it->second : 0;
    };
    UnitElimination out;
    std::vector<Entry> merged;
    for (;;) {
        std::size_t bi = rows, bj = cols, best = SIZE_MAX;
        for (std::size_t i = 0; i < rows; ++i) {
            if (!row_alive[i]) continue;
            const std::size_t rl = a[i].size() - 1;
            for (const auto& [j, v] : a[i]) {
                if (v != 1 && v != -1) continue;
                const std::size_t cost = rl * (col_count[j] - 1);
                if (cost < best) best = cost, bi = i, bj = j;
            }
            if (best == 0) break;
        }
        if (bi == rows) break;
        const std::int64_t pv = find(bi, bj);
        std::vector<std::size_t> targets;
        for (std::size_t r : col_rows[bj])
            if (r != bi && row_alive[r] && find(r, bj) != 0) targets.push_back(r);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        for (std::size_t r : targets) {
            const std::int64_t f = find(r, bj) * pv;  // row_r -= f * row_bi (pv = +-1)
            merged.clear();
            auto x = a[r].begin(), y = a[bi].begin();
            while (x != a[r].end() || y != a[bi].end()) {
                if (y == a[bi].end() || (x != a[r].end() && x->first < y->first)) {
                    merged.push_back(*x++);
                    continue;
                }
                std::int64_t prod, res;
                if (__builtin_mul_overflow(f, y->second, &prod)) return std::nullopt;
                const bool both = x != a[r].end() && x->first == y->first;
                const std::int64_t base = both ? x->second : 0;
                if (__builtin_sub_overflow(base, prod, &res)) return std::nullopt;
                if (!both) {
                    col_rows[y->first].push_back(r);
                    ++col_count[y->first];
                }
                if (res != 0) merged.emplace_back(y->first, res);
                else --col_count[y->first];
                if (both) ++x;
                ++y;
            }
            a[r].swap(merged);
        }
        for (const auto& [j, v] : a[bi]) --col_count[j];
        a[bi].clear();
        row_alive[bi] = false;
        col_alive[bj] = false;
        ++out.units;
    }
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 0; i < rows; ++i)
        if (row_alive[i]) rs.push_back(i);
    std::vector<std::size_t> col_pos(cols, SIZE_MAX);
    for (std::size_t j = 0; j < cols; ++j)
        if (col_alive[j]) col_pos[j] = cs.size(), cs.push_back(j);
    out.rest = IntMatrix(rs.size(), cs.size());
    for (std::size_t k = 0; k < rs.size(); ++k)
        for (const auto& [j, v] : a[rs[k]]) out.rest(k, col_pos[j]) = static_cast<long>(v);
    return out;
}

}  // namespace detail

/// Smith invariants only (no transforms). Unit pivots are removed sparsely,
/// the remaining block is diagonalized in 64-bit arithmetic when it fits.
inline std::vector<Integer> elementary_divisors(const IntMatrix& m) {
    std::size_t units = 0;
    IntMatrix rest;
    if (auto e = detail::eliminate_unit_pivots(m)) {
        units = e->units;
        rest = std::move(e->rest);
    } else {
        rest = m;
    }
    auto diag = detail::diagonal_entries_i64(rest);
    if (!diag) diag = detail::diagonal_entries_mpz(rest);
    std::vector<Integer> all(units, Integer(1));
    all.insert(all.end(), diag->begin(), diag->end());
    all.resize(std::min(m.rows(), m.cols()), Integer(0));
    return detail::smith_normalize(std::move(all));
}

/// Row-style Hermite normal form H = U * M: echelon rows, positive pivots,
/// entries above each pivot reduced into [0, pivot). Zero rows are dropped
/// from `form` but U keeps its full size.
struct HermiteForm {
    IntMatrix form;
    IntMatrix transform;
    std::vector<std::size_t> pivots;
};

inline HermiteForm hermite_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(rows);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd-reduce column c among rows r..end
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (h(i, c) != 0 && (best == rows || cmpabs(h(i, c), h(best, c)) < 0)) best = i;
            if (best == rows) break;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Integer q = floor_div(h(i, c), h(r, c));
                h.add_row(i, r, -q);
                u.add_row(i, r, -q);
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(h(i, c), h(r, c));
            h.add_row(i, r, -q);
            u.add_row(i, r, -q);
        }
        pivots.push_back(c);
        ++r;
    }
    HermiteForm out;
    std::vector<std::size_t> keep(r), all(cols);
    for (std::size_t i = 0; i < r; ++i) keep[i] = i;
    for (std::size_t j = 0; j < cols; ++j) all[j] = j;
    out.form = h.submatrix(keep, all);
    out.transform = std::move(u);
    out.pivots = std::move(pivots);
    return out;
}

/// Saturated Z-basis (as columns) of the integer kernel {x : M x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    std::vector<std::size_t> cs;
    for (std::size_t j = s.rank; j < m.cols(); ++j) cs.push_back(j);
    return s.right.columns(cs);
}

/// True iff the columns of M span a saturated sublattice of Z^rows.
inline bool columns_saturated(const IntMatrix& m) {
    for (const auto& x : elementary_divisors(m))
        if (x != 0 && x != 1) return false;
    return true;
}

}  // namespace fermat
