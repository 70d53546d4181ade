#pragma once

#include <map>
#include <string>
#include <vector>

#include "fermat/homology/milnor.hpp"

namespace fermat {

struct PrimitiveFermatLattice {
    int d = 0;
    int n = 0;
    IntegerLattice lattice;
    IntMatrix projection;  // Milnor basis -> primitive basis (columns)
    IntMatrix lifts;
    std::map<Exponent, IntVector> monomial_images;
    std::vector<IntMatrix> u;               // u_0, ..., u_{n+1}
    std::vector<IntMatrix> transpositions;  // (Z_i Z_{i+1}), i = 1..n

    /// Image of an arbitrary monomial u^K, K in (Z/d)^{n+1} (coordinates 1..n+1).
    IntVector monomial(const Exponent& k) const {
        IntVector v(lattice.rank(), 0);
        for (const auto& [idx, c] : reduce_monomial(k, d))
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * projection(i, idx);
        return v;
    }
};

namespace detail {

inline IntMatrix descend(const IntMatrix& m, const RadicalQuotient& q) { return q.projection * m * q.lifts; }

inline bool has_order_dividing(const IntMatrix& m, int order) {
    IntMatrix p = IntMatrix::identity(m.rows());
    for (int i = 0; i < order; ++i) p = p * m;
    return p == IntMatrix::identity(m.rows());
}

inline bool preserves(const IntMatrix& m, const IntMatrix& gram) { return m.transpose() * gram * m == gram; }

}  // namespace detail

/// Checks the structural invariants of the group action; throws on failure.
inline void verify_actions(const PrimitiveFermatLattice& p) {
    const IntMatrix& g = p.lattice.gram();
    IntMatrix prod = IntMatrix::identity(p.lattice.rank());
    for (std::size_t i = 0; i < p.u.size(); ++i) {
        if (!detail::preserves(p.u[i], g)) throw VerificationError("u_" + std::to_string(i) + " does not preserve the pairing");
        if (!detail::has_order_dividing(p.u[i], p.d)) throw VerificationError("u_" + std::to_string(i) + " has wrong order");
        prod = prod * p.u[i];
    }
    if (prod != IntMatrix::identity(p.lattice.rank())) throw VerificationError("u_0 ... u_{n+1} is not the identity");
    for (std::size_t i = 0; i < p.transpositions.size(); ++i) {
        if (!detail::preserves(p.transpositions[i], g))
            throw VerificationError("transposition " + std::to_string(i + 1) + " does not preserve the pairing");
        if (!detail::has_order_dividing(p.transpositions[i], 2))
            throw VerificationError("transposition " + std::to_string(i + 1) + " is not an involution");
    }
}

inline PrimitiveFermatLattice build_primitive(int d, int n) {
    MilnorModule m = build_milnor(d, n);
    RadicalQuotient q = radical_quotient(m.lattice);
    PrimitiveFermatLattice p;
    p.d = d;
    p.n = n;
    p.lattice = q.lattice;
    p.lattice.set_label("primitive(d=" + std::to_string(d) + ",n=" + std::to_string(n) + ")");
    for (std::size_t j = 0; j < m.basis.size(); ++j) p.monomial_images.emplace(m.basis[j], q.projection.col(j));
    MilnorActions a = milnor_actions(d, n);
    for (const auto& x : a.u) {
        // the radical is preserved, otherwise the descended map is not well defined
        if (!(q.projection * x * q.radical).is_zero()) throw VerificationError("action does not preserve the radical");
        p.u.push_back(detail::descend(x, q));
    }
    for (const auto& x : a.transpositions) {
        if (!(q.projection * x * q.radical).is_zero()) throw VerificationError("action does not preserve the radical");
        p.transpositions.push_back(detail::descend(x, q));
    }
    p.projection = std::move(q.projection);
    p.lifts = std::move(q.lifts);
    verify_actions(p);
    return p;
}

/// Rank, parity and discriminant of the primitive lattice read off the Milnor
/// Gram without forming the quotient basis; usable for the largest cases.
struct PrimitiveInvariants {
    int d = 0;
    int n = 0;
    std::size_t milnor_rank = 0;
    std::size_t rank = 0;
    Symmetry symmetry = Symmetry::symmetric;
    bool even = false;
    DiscriminantData discriminant;
};

inline PrimitiveInvariants primitive_invariants(int d, int n) {
    MilnorModule m = build_milnor(d, n);
    PrimitiveInvariants r;
    r.d = d;
    r.n = n;
    r.milnor_rank = m.lattice.rank();
    r.symmetry = m.lattice.symmetry();
    for (const auto& x : elementary_divisors(m.lattice.gram()))
        if (x != 0) ++r.rank;
    r.discriminant = quotient_discriminant(m.lattice);
    r.even = r.symmetry == Symmetry::symmetric && is_even(m.lattice);
    return r;
}

/// Maps of the complex 0 -> R_1 -> ... -> R_{n+1} -> R'_{n+1} -> 0.
struct ResolutionStage {
    std::string name;
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;
    std::size_t map_rank = 0;
    bool composite_zero = true;  // with the next map
    bool exact_at_target = true;  // rank im = rank ker of the next map (rationally exact)
    Integer image_index = 1;      // [saturation of the image : image]; homology torsion at the target
};

struct ResolutionReport {
    int d = 0;
    int n = 0;
    std::vector<std::size_t> module_ranks;  // R_1, ..., R_{n+1}, R'_{n+1}
    std::vector<ResolutionStage> stages;
    bool exact = true;         // over Q
    bool exact_over_z = true;  // additionally every image is saturated
    std::string failure;
};

/// (1 - v_k) sum_{0 <= j <= l <= d-2} u_{k+1}^j v_k^l in Z[mu_d^{k+1}], v_k = u_1 ... u_k.
inline GroupRingElement connecting_element(int d, int k) {
    const int a = k + 1;
    Exponent vk(a, 0);
    for (int i = 0; i < k; ++i) vk[i] = 1;
    GroupRingElement one = GroupRingElement::one(d, a);
    GroupRingElement sum(d, a);
    for (int l = 0; l <= d - 2; ++l)
        for (int j = 0; j <= l; ++j) {
            Exponent e(a, 0);
            for (int i = 0; i < k; ++i) e[i] = l;
            e[k] = j;
            sum.add_term(std::move(e), 1);
        }
    return (one - GroupRingElement::monomial(d, vk)) * sum;
}

inline ResolutionReport resolution_check(int d, int n) {
    check_parameters(d, n);
    ResolutionReport rep;
    rep.d = d;
    rep.n = n;
    std::vector<IntMatrix> maps;
    for (int k = 1; k <= n; ++k) maps.push_back(multiplication_matrix(connecting_element(d, k), d, k, k + 1));
    PrimitiveFermatLattice p = build_primitive(d, n);
    maps.push_back(p.projection);

    for (int k = 1; k <= n + 1; ++k) rep.module_ranks.push_back(monomial_count(d, k, static_cast<std::size_t>(-1)));
    rep.module_ranks.push_back(p.lattice.rank());

    auto fail = [&](const std::string& why) {
        if (rep.exact) rep.failure = why;
        rep.exact = false;
    };
    for (std::size_t i = 0; i < maps.size(); ++i) {
        ResolutionStage s;
        s.name = i + 1 < maps.size() ? "R_" + std::to_string(i + 1) + " -> R_" + std::to_string(i + 2)
                                     : "R_" + std::to_string(i + 1) + " -> R'_" + std::to_string(i + 1);
        s.source_rank = maps[i].cols();
        s.target_rank = maps[i].rows();
        for (const auto& x : elementary_divisors(maps[i])) {
            if (x == 0) continue;
            ++s.map_rank;
            s.image_index *= x;
        }
        if (s.image_index != 1) rep.exact_over_z = false;
        if (i + 1 < maps.size()) {
            s.composite_zero = (maps[i + 1] * maps[i]).is_zero();
            s.exact_at_target = s.composite_zero && s.map_rank + rank(maps[i + 1]) == s.target_rank;
        } else {
            s.exact_at_target = s.map_rank == s.target_rank;
        }
        if (i == 0 && s.map_rank != s.source_rank) fail(s.name + ": first map is not injective");
        if (!s.composite_zero) fail(s.name + ": composite with the next map is nonzero");
        if (!s.exact_at_target) fail(s.name + ": not exact at the target");
        rep.stages.push_back(std::move(s));
    }
    return rep;
}

}  // namespace fermat
