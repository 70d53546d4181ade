#pragma once

#include <optional>
#include <vector>

#include "fermat/exact/matrix.hpp"

namespace fermat {

/// Either x >= 0 with A x = b, or a Farkas vector y with y^T A >= 0 and y^T b < 0.
struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> x;
    std::vector<Rational> farkas;
};

/// Phase-one simplex over Q with Bland's rule; artificial variables start as
/// the basis, so B^{-1} can be read off their columns at the end.
inline FeasibilityResult solve_feasibility(const RatMatrix& a, std::vector<Rational> b) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m) throw PreconditionError("feasibility: right-hand side has wrong length");
    // tableau columns: x (n), artificials (m), rhs
    RatMatrix t(m, n + m + 1);
    std::vector<int> row_sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) row_sign[i] = -1;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = row_sign[i] * a(i, j);
        t(i, n + i) = 1;
        t(i, n + m) = row_sign[i] * b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
    // reduced costs of phase one: c_j - c_B B^{-1} A_j with c = 1 on artificials
    std::vector<Rational> cost(n + m + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n + m + 1; ++j)
            if (j < n || j == n + m) cost[j] -= t(i, j);

    for (;;) {
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter == n + m) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            Rational r = t(i, n + m) / t(i, enter);
            if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
                leave = i;
                best = r;
            }
        }
        if (leave == m) throw VerificationError("phase-one simplex is unbounded");
        const Rational piv = t(leave, enter);
        for (std::size_t j = 0; j < n + m + 1; ++j) t(leave, j) /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            const Rational f = t(i, enter);
            for (std::size_t j = 0; j < n + m + 1; ++j) t(i, j) -= f * t(leave, j);
        }
        const Rational f = cost[enter];
        for (std::size_t j = 0; j < n + m + 1; ++j) cost[j] -= f * t(leave, j);
        basis[leave] = enter;
    }

    FeasibilityResult res;
    // optimum of phase one is -cost[rhs]
    if (cost[n + m] == 0) {
        res.feasible = true;
        res.x.assign(n, 0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) res.x[basis[i]] = t(i, n + m);
        return res;
    }
    // y^T = c_B B^{-1}; the reduced cost of artificial i is 1 - y_i
    res.farkas.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) res.farkas[i] = -(1 - cost[n + i]) * row_sign[i];
    return res;
}

}  // namespace fermat
