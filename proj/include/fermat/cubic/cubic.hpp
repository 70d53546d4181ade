#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fermat/cubic/box_search.hpp"
#include "fermat/hermitian/hermitian.hpp"

namespace fermat {

/// Lambda_o = primitive H_4 of the Fermat cubic fourfold, and its unimodular
/// overlattice Lambda = Lambda_o + Z eta + Z (glue).
struct CubicFourfoldLattice {
    PrimitiveFermatLattice primitive;
    IntegerLattice lambda_o;
    IntegerLattice lambda;
    std::vector<Rational> glue_vector;  // (w, 1/3) in Lambda_o + Z eta coordinates
    RatMatrix glue_basis;               // rows: Lambda basis in Lambda_o + Z eta coordinates
    RatMatrix glue_basis_inverse;
    IntVector eta;                  // in Lambda coordinates
    IntMatrix embedding;            // 23 x 22: Lambda_o coordinates -> Lambda coordinates
    std::vector<IntMatrix> action;  // u_0..u_5 on Lambda, fixing eta
    // 22 monomial images forming a Z-basis of Lambda_o; box searches run here
    std::vector<Exponent> monomial_basis_exponents;
    IntMatrix monomial_basis;  // columns, canonical coordinates
    IntegerLattice lambda_o_monomial;
    // Lambda_o = A2 + A2^perp with 2 alpha + beta special; the complement is
    // unimodular, so 3 Lambda_o^* is supported on the first two coordinates
    IntVector special_seed;
    IntMatrix split_basis;  // columns alpha, beta, complement
    IntegerLattice lambda_o_split;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw VerificationError("cubic lattice invariant failed: " + what);
}

inline std::optional<IntVector> integral(const std::vector<Rational>& x) {
    IntVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].get_den() != 1) return std::nullopt;
        out[i] = x[i].get_num();
    }
    return out;
}

// row vector times matrix
inline std::vector<Rational> row_times(const std::vector<Rational>& x, const RatMatrix& m) {
    std::vector<Rational> y(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
    }
    return y;
}

inline std::pair<std::vector<Exponent>, IntMatrix> monomial_basis(const PrimitiveFermatLattice& p) {
    const std::size_t r = p.lattice.rank();
    std::vector<Exponent> picked;
    std::vector<IntVector> cols;
    for (const auto& [e, img] : p.monomial_images) {
        IntMatrix trial(r, cols.size() + 1);
        for (std::size_t j = 0; j < cols.size(); ++j) trial.set_col(j, cols[j]);
        trial.set_col(cols.size(), img);
        if (rank(trial) == cols.size() + 1) {
            picked.push_back(e);
            cols.push_back(img);
            if (cols.size() == r) break;
        }
    }
    IntMatrix m(r, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return {picked, m};
}

// First v = t + 3y of norm 6, t the centered generator of 3 Lambda_o^* mod 3,
// y of minimal support with entries +-1 (lexicographic).
inline IntVector special_seed(const IntegerLattice& l) {
    const std::size_t n = l.rank();
    auto ker = nullspace_mod(l.gram(), 3);
    require(ker.size() == 1, "3 Lambda_o^* / 3 Lambda_o is one-dimensional");
    IntVector t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = ker[0][i] == 2 ? -1 : ker[0][i];
    for (std::size_t support = 0; support <= 4; ++support) {
        std::optional<IntVector> found;
        for_each_subset(n, support, [&](const std::vector<std::size_t>& idx) {
            if (found) return;
            for (std::size_t mask = 0; mask < (std::size_t{1} << support) && !found; ++mask) {
                IntVector v = t;
                for (std::size_t k = 0; k < support; ++k) v[idx[k]] += (mask >> k & 1) ? 3 : -3;
                if (l.norm(v) == 6) found = v;
            }
        });
        if (found) return *found;
    }
    throw VerificationError("no special vector of the form t + 3y with |supp y| <= 4");
}

// alpha nodal with alpha . v = 3 among monomial images, beta = v - 2 alpha.
inline IntMatrix a2_split_basis(const PrimitiveFermatLattice& p, const IntVector& v) {
    const IntegerLattice& l = p.lattice;
    const std::size_t n = l.rank();
    std::optional<IntVector> alpha;
    for (const auto& k : all_exponents(3, 5)) {
        IntVector a = p.monomial(k);
        if (l.norm(a) != 2) continue;
        const Integer s = l.pair(a, v);
        if (s == 3 || s == -3) {
            if (s < 0)
                for (auto& x : a) x = -x;
            alpha = a;
            break;
        }
    }
    require(alpha.has_value(), "a nodal monomial image pairs to +-3 with the seed");
    IntVector beta = v;
    for (std::size_t i = 0; i < n; ++i) beta[i] -= 2 * (*alpha)[i];
    IntMatrix rows(2, n);
    const IntVector ga = l.gram() * *alpha, gb = l.gram() * beta;
    for (std::size_t i = 0; i < n; ++i) {
        rows(0, i) = ga[i];
        rows(1, i) = gb[i];
    }
    IntMatrix comp = integer_kernel(rows);
    IntMatrix basis(n, n);
    basis.set_col(0, *alpha);
    basis.set_col(1, beta);
    for (std::size_t j = 0; j < comp.cols(); ++j) basis.set_col(j + 2, comp.col(j));
    require(abs(determinant(basis)) == 1, "A2 + complement is all of Lambda_o");
    return basis;
}

}  // namespace detail

inline CubicFourfoldLattice build_cubic_lattices() {
    CubicFourfoldLattice c;
    c.primitive = build_primitive(3, 4);
    c.lambda_o = c.primitive.lattice;
    c.lambda_o.set_label("lambda_o");
    const std::size_t r = c.lambda_o.rank();
    detail::require(r == 22, "rank(lambda_o) = 22");
    detail::require(is_even(c.lambda_o), "lambda_o even");
    detail::require(signature(c.lambda_o) == Signature{20, 2, 0}, "signature(lambda_o) = (20,2)");
    const auto disc = discriminant(c.lambda_o);
    detail::require(disc.is_cyclic() && disc.group_order == 3, "discriminant of lambda_o cyclic of order 3");

    // a dual vector outside Lambda_o generates the discriminant group
    RatMatrix ginv = inverse(RatMatrix::from(c.lambda_o.gram()));
    std::vector<Rational> w;
    for (std::size_t j = 0; j < r && w.empty(); ++j) {
        auto col = ginv.col(j);
        if (!detail::integral(col)) w = col;
    }
    detail::require(!w.empty(), "nontrivial dual vector");

    IntegerLattice eta_line(IntMatrix{{3}}, Symmetry::symmetric, "eta");
    // candidates a w + eta/3, a = 0, 1, 2; a and -a differ by eta -> -eta
    std::vector<int> working;
    for (int a = 0; a < 3; ++a) {
        std::vector<Rational> g(r + 1);
        for (std::size_t i = 0; i < r; ++i) {
            g[i] = a * w[i];
            g[i] -= floor_div(g[i].get_num(), g[i].get_den());  // reduce modulo Lambda_o
        }
        g[r] = Rational(1, 3);
        try {
            GlueResult res = glue({{c.lambda_o, eta_line}, {g}});
            working.push_back(a);
            if (working.size() == 1) {
                c.glue_vector = g;
                c.lambda = res.lattice;
                c.glue_basis = res.basis;
            }
        } catch (const InvalidGlueError&) {
        }
    }
    detail::require(working == std::vector<int>{1, 2}, "exactly one glue class up to sign is integral");
    c.lambda.set_label("lambda");
    c.glue_basis_inverse = inverse(c.glue_basis);
    detail::require(is_unimodular(c.lambda), "lambda unimodular");
    detail::require(!is_even(c.lambda), "lambda odd");
    detail::require(signature(c.lambda) == Signature{21, 2, 0}, "signature(lambda) = (21,2)");

    std::vector<Rational> eta_sum(r + 1, 0);
    eta_sum[r] = 1;
    c.eta = *detail::integral(detail::row_times(eta_sum, c.glue_basis_inverse));
    detail::require(c.lambda.norm(c.eta) == 3, "eta.eta = 3");

    c.embedding = IntMatrix(r + 1, r);
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<Rational> e(r + 1, 0);
        e[j] = 1;
        auto y = detail::integral(detail::row_times(e, c.glue_basis_inverse));
        detail::require(y.has_value(), "lambda_o embeds integrally");
        c.embedding.set_col(j, *y);
    }
    // orthogonal complement of eta is exactly Lambda_o
    IntMatrix eta_row(1, r + 1);
    for (std::size_t i = 0; i <= r; ++i) eta_row(0, i) = (c.lambda.gram() * c.eta)[i];
    IntMatrix perp = integer_kernel(eta_row);
    detail::require(hermite_normal_form(perp.transpose()).form == hermite_normal_form(c.embedding.transpose()).form,
                    "lambda_o = eta^perp");

    // u_i extended by the identity on eta, written in the Lambda basis
    const RatMatrix p = c.glue_basis.transpose(), pinv = c.glue_basis_inverse.transpose();
    for (std::size_t i = 0; i < c.primitive.u.size(); ++i) {
        RatMatrix d(r + 1, r + 1);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) d(a, b) = c.primitive.u[i](a, b);
        d(r, r) = 1;
        RatMatrix m = pinv * d * p;
        IntMatrix mi(r + 1, r + 1);
        for (std::size_t a = 0; a <= r; ++a)
            for (std::size_t b = 0; b <= r; ++b) {
                detail::require(m(a, b).get_den() == 1, "u_" + std::to_string(i) + " preserves lambda");
                mi(a, b) = m(a, b).get_num();
            }
        detail::require(mi.transpose() * c.lambda.gram() * mi == c.lambda.gram(), "u_" + std::to_string(i) + " is an isometry");
        detail::require(mi * c.eta == c.eta, "u_" + std::to_string(i) + " fixes eta");
        c.action.push_back(std::move(mi));
    }
    IntMatrix stacked((r + 1) * c.action.size(), r + 1);
    for (std::size_t i = 0; i < c.action.size(); ++i)
        for (std::size_t a = 0; a <= r; ++a)
            for (std::size_t b = 0; b <= r; ++b) stacked(i * (r + 1) + a, b) = c.action[i](a, b) - (a == b ? 1 : 0);
    IntMatrix fixed = integer_kernel(stacked);
    IntVector minus_eta = c.eta;
    for (auto& x : minus_eta) x = -x;
    detail::require(fixed.cols() == 1 && (fixed.col(0) == c.eta || fixed.col(0) == minus_eta), "fixed sublattice is Z eta");

    auto [exps, mb] = detail::monomial_basis(c.primitive);
    detail::require(mb.cols() == r && abs(determinant(mb)) == 1, "monomial images contain a Z-basis");
    c.monomial_basis_exponents = std::move(exps);
    c.monomial_basis = mb;
    c.lambda_o_monomial = IntegerLattice(mb.transpose() * c.lambda_o.gram() * mb, Symmetry::symmetric, "lambda_o/monomial");

    c.special_seed = detail::special_seed(c.lambda_o);
    c.split_basis = detail::a2_split_basis(c.primitive, c.special_seed);
    c.lambda_o_split = IntegerLattice(c.split_basis.transpose() * c.lambda_o.gram() * c.split_basis, Symmetry::symmetric,
                                      "lambda_o/a2-split");
    return c;
}

inline IntVector to_lambda(const CubicFourfoldLattice& c, const IntVector& v) { return c.embedding * v; }

inline bool is_nodal(const CubicFourfoldLattice& c, const IntVector& v) { return c.lambda_o.norm(v) == 2; }

/// v.x in 3Z for every x in Lambda_o.
inline bool special_by_pairings(const CubicFourfoldLattice& c, const IntVector& v) {
    if (c.lambda_o.norm(v) != 6) return false;
    for (const auto& x : c.lambda_o.gram() * v)
        if (x % 3 != 0) return false;
    return true;
}

/// +1 if (v - eta)/3 lies in Lambda, -1 if (v + eta)/3 does, 0 otherwise.
inline int eta_divisibility_sign(const CubicFourfoldLattice& c, const IntVector& v) {
    const IntVector lv = to_lambda(c, v);
    for (int s : {1, -1}) {
        bool ok = true;
        for (std::size_t i = 0; i < lv.size() && ok; ++i) ok = (lv[i] - s * c.eta[i]) % 3 == 0;
        if (ok) return s;
    }
    return 0;
}

inline bool special_by_eta(const CubicFourfoldLattice& c, const IntVector& v) {
    return c.lambda_o.norm(v) == 6 && eta_divisibility_sign(c, v) != 0;
}

/// Both characterizations; a disagreement is a VerificationError.
inline bool is_special(const CubicFourfoldLattice& c, const IntVector& v) {
    const bool a = special_by_pairings(c, v), b = special_by_eta(c, v);
    if (a != b) throw VerificationError("special-vector characterizations disagree");
    return a;
}

/// e = (eta - s v)/3 in Lambda coordinates, s the divisibility sign.
inline IntVector special_section(const CubicFourfoldLattice& c, const IntVector& v) {
    const int s = eta_divisibility_sign(c, v);
    if (c.lambda_o.norm(v) != 6 || s == 0) throw PreconditionError("vector is not special");
    IntVector lv = to_lambda(c, v), e(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i) e[i] = (c.eta[i] - s * lv[i]) / 3;
    return e;
}

/// Signature of v^perp in Lambda_o (over Q).
inline Signature perp_signature(const IntegerLattice& l, const IntVector& v) {
    IntMatrix row(1, l.rank());
    const IntVector gv = l.gram() * v;
    for (std::size_t i = 0; i < l.rank(); ++i) row(0, i) = gv[i];
    IntMatrix k = integer_kernel(row);
    return signature(IntMatrix(k.transpose() * l.gram() * k));
}

struct SearchReport {
    long bound = 0;
    std::string basis_label;
    std::vector<IntVector> hits;  // canonical Lambda_o coordinates
    bool truncated = false;
    std::uint64_t nodes = 0;
};

inline SearchReport to_report(const IntegerLattice& searched, const IntMatrix& basis, const BoxResult& r) {
    SearchReport s{r.bound, searched.label(), {}, r.truncated, r.nodes};
    for (const auto& h : r.hits) s.hits.push_back(basis * h);
    std::sort(s.hits.begin(), s.hits.end());
    return s;
}

inline SearchReport nodal_vectors(const CubicFourfoldLattice& c, long bound, std::size_t max_hits) {
    BoxOptions o;
    o.bound = bound;
    o.max_hits = max_hits;
    return to_report(c.lambda_o_monomial, c.monomial_basis, bounded_box_vectors(c.lambda_o_monomial, 2, o));
}

/// Norm 6 vectors with all pairings divisible by 3, boxed in the A2-split
/// basis; the congruence makes the search visit only lifts of the residue
/// classes of 3 Lambda_o^*.
inline SearchReport special_vectors(const CubicFourfoldLattice& c, long bound, std::size_t max_hits = 0) {
    BoxOptions o;
    o.bound = bound;
    o.modulus = 3;
    o.max_hits = max_hits;
    SearchReport s = to_report(c.lambda_o_split, c.split_basis, bounded_box_vectors(c.lambda_o_split, 6, o));
    for (const auto& v : s.hits)
        if (!is_special(c, v)) throw VerificationError("box search returned a non-special vector");
    return s;
}

// eigenlattices

struct EigenLattice {
    int k = 0;
    CharacterConvention convention = CharacterConvention::zeta;
    std::vector<std::vector<CyclotomicElement>> basis;  // rows over Z[zeta_3], canonical Lambda_o coordinates
    HermitianLattice lattice;                          // h(x, y) = x . conj(y)
    Signature signature;
};

inline std::vector<int> eigen_generators(int k) {
    if (k < 1 || k > 3) throw PreconditionError("eigenlattice needs k in {1, 2, 3}");
    std::vector<int> g;
    for (int a = 6 - k; a <= 5; ++a) g.push_back(a);
    return g;
}

/// V_k = {x in Lambda_o (x) Z[zeta] : u_a x = zeta x for the last k generators}.
/// Over Z this is the kernel of a + b zeta -> equations in (a, b), which is
/// saturated; Euclidean echelon then gives a Z[zeta]-basis.
inline EigenLattice eigenlattice(const CubicFourfoldLattice& c, int k,
                                 CharacterConvention conv = CharacterConvention::zeta) {
    const auto gens = eigen_generators(k);
    const std::size_t r = c.lambda_o.rank();
    IntMatrix eq(2 * r * gens.size(), 2 * r);
    for (std::size_t t = 0; t < gens.size(); ++t) {
        const IntMatrix& u = c.primitive.u[gens[t]];
        const std::size_t o = 2 * r * t;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                eq(o + i, j) = u(i, j);
                eq(o + r + i, r + j) = u(i, j);
            }
        for (std::size_t i = 0; i < r; ++i) {
            if (conv == CharacterConvention::zeta) {
                // zeta (a + b zeta) = -b + (a - b) zeta
                eq(o + i, r + i) += 1;
                eq(o + r + i, i) -= 1;
                eq(o + r + i, r + i) += 1;
            } else {
                // zeta^2 (a + b zeta) = (b - a) - a zeta
                eq(o + i, i) += 1;
                eq(o + i, r + i) -= 1;
                eq(o + r + i, i) += 1;
            }
        }
    }
    IntMatrix ker = integer_kernel(eq);
    std::vector<std::vector<CyclotomicElement>> rows;
    for (std::size_t col = 0; col < ker.cols(); ++col) {
        std::vector<CyclotomicElement> row(r, CyclotomicElement(3));
        for (std::size_t i = 0; i < r; ++i) row[i] = CyclotomicElement::from_poly(3, {ker(i, col), ker(r + i, col)});
        rows.push_back(std::move(row));
    }
    EigenLattice e;
    e.k = k;
    e.convention = conv;
    e.basis = euclidean_echelon(std::move(rows));
    const std::size_t n = e.basis.size();
    detail::require(2 * n == ker.cols(), "eigenlattice is free of rank Z-rank/2");
    // G conj(x_j) as Z[zeta] vectors
    std::vector<std::vector<CyclotomicElement>> gconj(n, std::vector<CyclotomicElement>(r, CyclotomicElement(3)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
                const Integer& g = c.lambda_o.gram()(a, b);
                if (g != 0) gconj[j][a] += g * e.basis[j][b].conj();
            }
    CycMatrix h(n, std::vector<CyclotomicElement>(n, CyclotomicElement(3)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < r; ++a) h[i][j] += e.basis[i][a] * gconj[j][a];
    e.lattice = HermitianLattice{3, n, std::move(h), FormKind::raw, 1, k == 3, "V_" + std::to_string(k)};
    e.signature = hermitian_signature(e.lattice);
    return e;
}

struct EigenballResult {
    bool meets = false;
    bool contains = false;  // v^perp contains all of V_k
    Signature restricted;
};

/// Does v^perp meet the negative cone of h on V_k? Decided by the inertia of
/// h restricted to {x in V_k : x . v = 0}.
inline EigenballResult hyperplane_meets_eigenball(const CubicFourfoldLattice& c, const EigenLattice& e,
                                                  const IntVector& v) {
    if (!is_special(c, v)) throw PreconditionError("hyperplane test needs a special vector");
    const std::size_t r = c.lambda_o.rank(), n = e.basis.size();
    const IntVector gv = c.lambda_o.gram() * v;
    std::vector<CyclotomicElement> f(n, CyclotomicElement(3));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < r; ++a)
            if (gv[a] != 0) f[i] += gv[a] * e.basis[i][a];
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
        if (!f[i].is_zero()) pivot = i;
    EigenballResult out;
    if (pivot == n) {
        out.contains = true;
        out.meets = true;
        out.restricted = e.signature;
        return out;
    }
    // kernel vectors f_p e_i - f_i e_p, integral over Z[zeta]
    std::vector<std::vector<CyclotomicElement>> kvec;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == pivot) continue;
        std::vector<CyclotomicElement> x(n, CyclotomicElement(3));
        x[i] = f[pivot];
        x[pivot] = -f[i];
        kvec.push_back(std::move(x));
    }
    const auto& h = e.lattice.gram;
    const std::size_t m = kvec.size();
    CycMatrix rg(m, std::vector<CyclotomicElement>(m, CyclotomicElement(3)));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t i = 0; i < n; ++i) {
                if (kvec[a][i].is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!kvec[b][j].is_zero()) rg[a][b] += kvec[a][i] * h[i][j] * kvec[b][j].conj();
            }
    HermitianLattice restricted{3, m, std::move(rg), FormKind::raw, 1, false, "V_k cap v^perp"};
    out.restricted = hermitian_inertia(restricted);
    out.meets = out.restricted.negative > 0;
    return out;
}

// bounded evidence search: special v with u_a v = u_b v and (v, u_b v)
// spanning a positive definite plane

struct CommutingSearchReport {
    long bound = 0;
    std::size_t special_candidates = 0;
    std::vector<IntVector> hits;
    std::pair<int, int> generators{4, 5};
    std::string label = "EVIDENCE (bounded search), not a proof";
};

inline bool commuting_condition(const IntegerLattice& l, const IntMatrix& ua, const IntMatrix& ub, const IntVector& v) {
    const IntVector av = ua * v, bv = ub * v;
    if (av != bv) return false;
    const Integer a = l.norm(v), b = l.pair(v, bv), d = l.norm(bv);
    return a > 0 && a * d - b * b > 0;
}

inline std::vector<IntVector> commuting_filter(const IntegerLattice& l, const IntMatrix& ua, const IntMatrix& ub,
                                            const std::vector<IntVector>& candidates) {
    std::vector<IntVector> out;
    for (const auto& v : candidates)
        if (commuting_condition(l, ua, ub, v)) out.push_back(v);
    return out;
}

inline CommutingSearchReport commuting_generator_search(const CubicFourfoldLattice& c, long bound, std::pair<int, int> gens = {4, 5}) {
    if (gens.first < 0 || gens.second < 0 || gens.first >= static_cast<int>(c.primitive.u.size()) ||
        gens.second >= static_cast<int>(c.primitive.u.size()))
        throw PreconditionError("generator index out of range");
    const SearchReport s = special_vectors(c, bound);
    CommutingSearchReport r;
    r.bound = bound;
    r.generators = gens;
    r.special_candidates = s.hits.size();
    r.hits = commuting_filter(c.lambda_o, c.primitive.u[gens.first], c.primitive.u[gens.second], s.hits);
    return r;
}

}  // namespace fermat
