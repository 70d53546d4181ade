#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fermat/git/linear_program.hpp"
#include "fermat/lattice/normal_forms.hpp"

namespace fermat {

/// Degree-d form in m variables; zero coefficients are never stored.
class HomogeneousForm {
public:
    using Monomial = std::vector<int>;

    HomogeneousForm(int m, int degree) : m_(m), degree_(degree) {
        if (m < 1 || degree < 0) throw PreconditionError("form needs m >= 1 and degree >= 0");
    }

    int m() const { return m_; }
    int degree() const { return degree_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * x^e; cancellation removes the entry.
    HomogeneousForm& add_term(const Monomial& e, const Rational& c) {
        if (e.size() != static_cast<std::size_t>(m_)) throw PreconditionError("monomial has wrong number of variables");
        int s = 0;
        for (int x : e) {
            if (x < 0) throw PreconditionError("negative exponent");
            s += x;
        }
        if (s != degree_) throw PreconditionError("monomial degree does not match form degree");
        Rational q = c;
        q.canonicalize();  // callers may pass Rational(4, 6)
        Rational& slot = terms_[e];
        slot += q;
        if (slot == 0) terms_.erase(e);
        return *this;
    }

    static HomogeneousForm fermat(int m, int degree) {
        HomogeneousForm f(m, degree);
        for (int i = 0; i < m; ++i) {
            Monomial e(m, 0);
            e[i] = degree;
            f.add_term(e, 1);
        }
        return f;
    }

    friend bool operator==(const HomogeneousForm&, const HomogeneousForm&) = default;

private:
    int m_;
    int degree_;
    std::map<Monomial, Rational> terms_;
};

inline std::vector<std::vector<int>> exponent_points(const HomogeneousForm& f) {
    if (f.is_zero()) throw EmptyFormError("zero form has no exponent points");
    std::vector<std::vector<int>> out;
    for (const auto& [e, c] : f.terms()) out.push_back(e);
    return out;  // map keys are already sorted and distinct
}

inline std::vector<Rational> barycenter(int m, int degree) {
    Rational b(degree, m);
    b.canonicalize();
    return std::vector<Rational>(m, b);
}

struct SemistabilityCertificate {
    bool semistable = false;
    std::vector<Rational> lambda;     // convex weights on exponent_points, when semistable
    std::vector<Rational> separator;  // w with w.(p - b) > 0 for every point p, otherwise
};

inline SemistabilityCertificate is_semistable_diagonal(const HomogeneousForm& f) {
    const auto pts = exponent_points(f);
    const int m = f.m();
    const auto b = barycenter(m, f.degree());
    RatMatrix a(m + 1, pts.size());
    std::vector<Rational> rhs(m + 1);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        for (int i = 0; i < m; ++i) a(i, j) = pts[j][i];
        a(m, j) = 1;
    }
    for (int i = 0; i < m; ++i) rhs[i] = b[i];
    rhs[m] = 1;
    const auto r = solve_feasibility(a, rhs);
    SemistabilityCertificate c;
    c.semistable = r.feasible;
    if (r.feasible) {
        c.lambda = r.x;
    } else {
        // y = (w, t): w.p + t >= 0 on points and w.b + t < 0
        c.separator.assign(r.farkas.begin(), r.farkas.begin() + m);
    }
    return c;
}

/// Exact re-check of either kind of certificate.
inline bool certificate_holds(const HomogeneousForm& f, const SemistabilityCertificate& c) {
    const auto pts = exponent_points(f);
    const auto b = barycenter(f.m(), f.degree());
    if (c.semistable) {
        if (c.lambda.size() != pts.size()) return false;
        Rational total = 0;
        std::vector<Rational> sum(f.m(), 0);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (c.lambda[j] < 0) return false;
            total += c.lambda[j];
            for (int i = 0; i < f.m(); ++i) sum[i] += c.lambda[j] * pts[j][i];
        }
        return total == 1 && sum == b;
    }
    if (c.separator.size() != static_cast<std::size_t>(f.m())) return false;
    for (const auto& p : pts) {
        Rational s = 0;
        for (int i = 0; i < f.m(); ++i) s += c.separator[i] * (p[i] - b[i]);
        if (s <= 0) return false;
    }
    return true;
}

struct StabilityCertificate {
    bool stable = false;
    bool semistable = false;
    int hull_dimension = 0;               // affine dimension of the exponent points
    std::size_t facets = 0;               // facets checked when full-dimensional
    std::vector<Integer> blocking_facet;  // normal of a facet through or beyond b
};

inline int affine_dimension(const std::vector<std::vector<int>>& pts) {
    if (pts.empty()) return -1;
    IntMatrix diff(pts.size() - 1, pts.front().size());
    for (std::size_t j = 1; j < pts.size(); ++j)
        for (std::size_t i = 0; i < pts[j].size(); ++i) diff(j - 1, i) = pts[j][i] - pts[0][i];
    return static_cast<int>(rank(diff));
}

namespace detail {

// Normal w (modulo the all-ones direction) of the affine hull of pts[idx], or
// empty if those points are affinely dependent.
inline std::vector<Integer> hyperplane_normal(const std::vector<std::vector<int>>& pts,
                                              const std::vector<std::size_t>& idx) {
    const std::size_t m = pts.front().size();
    IntMatrix eq(idx.size(), m);
    for (std::size_t r = 0; r + 1 < idx.size(); ++r)
        for (std::size_t i = 0; i < m; ++i) eq(r, i) = pts[idx[r + 1]][i] - pts[idx[0]][i];
    for (std::size_t i = 0; i < m; ++i) eq(idx.size() - 1, i) = 1;
    IntMatrix k = integer_kernel(eq);
    if (k.cols() != 1) return {};
    std::vector<Integer> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = k(i, 0);
    return w;
}

}  // namespace detail

/// Interior is taken inside the hyperplane sum x = d, so lower-dimensional
/// hulls are never stable. Facets come from brute force over (m-1)-subsets.
inline StabilityCertificate is_stable_diagonal(const HomogeneousForm& f) {
    const auto pts = exponent_points(f);
    const int m = f.m();
    StabilityCertificate c;
    c.semistable = is_semistable_diagonal(f).semistable;
    c.hull_dimension = affine_dimension(pts);
    if (!c.semistable || c.hull_dimension < m - 1) return c;
    if (m == 1) {
        c.stable = true;
        return c;
    }
    const auto b = barycenter(m, f.degree());
    std::set<std::vector<Integer>> seen;
    bool blocked = false;
    detail::for_each_subset(pts.size(), static_cast<std::size_t>(m - 1), [&](const std::vector<std::size_t>& idx) {
        if (blocked) return;
        auto w = detail::hyperplane_normal(pts, idx);
        if (w.empty()) return;
        const auto& p0 = pts[idx[0]];
        int side = 0;
        for (const auto& p : pts) {
            Integer s = 0;
            for (int i = 0; i < m; ++i) s += w[i] * (p[i] - p0[i]);
            const int sg = sgn(s);
            if (sg == 0) continue;
            if (side == 0) side = sg;
            if (sg != side) return;  // points on both sides: not a supporting hyperplane
        }
        if (side < 0)
            for (auto& x : w) x = -x;
        if (!seen.insert(w).second) return;
        ++c.facets;
        Rational at_b = 0;
        for (int i = 0; i < m; ++i) at_b += w[i] * (b[i] - p0[i]);
        if (at_b <= 0) {
            blocked = true;
            c.blocking_facet = w;
        }
    });
    c.stable = !blocked;
    return c;
}

/// F + X_{m+1}^d in m+1 variables.
inline HomogeneousForm cone_extend(const HomogeneousForm& f) {
    HomogeneousForm g(f.m() + 1, f.degree());
    for (const auto& [e, c] : f.terms()) {
        auto e2 = e;
        e2.push_back(0);
        g.add_term(e2, c);
    }
    HomogeneousForm::Monomial top(f.m() + 1, 0);
    top.back() = f.degree();
    g.add_term(top, 1);
    return g;
}

}  // namespace fermat
