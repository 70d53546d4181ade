#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "fermat/exact/group_ring.hpp"
#include "fermat/lattice/lattice.hpp"

namespace fermat {

using Exponent = std::vector<int>;

/// Maximal (d-1)^{n+1} accepted by the builders; FERMAT_SIZE_BOUND overrides.
inline std::size_t size_bound() {
    if (const char* env = std::getenv("FERMAT_SIZE_BOUND")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 4096;
}

/// (d-1)^k, or 0 when it exceeds `cap`.
inline std::size_t monomial_count(int d, int k, std::size_t cap) {
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) {
        r *= static_cast<std::size_t>(d - 1);
        if (r > cap) return 0;
    }
    return r;
}

inline void check_parameters(int d, int n) {
    if (d < 3) throw PreconditionError("degree d must be >= 3");
    if (n < 0) throw PreconditionError("dimension n must be >= 0");
    if (n > 64 || monomial_count(d, n + 1, size_bound()) == 0)
        throw ResourceError("(d-1)^(n+1) exceeds the size bound " + std::to_string(size_bound()));
}

/// Z-rank of the primitive middle homology: (d-1)((d-1)^{n+1} + (-1)^n) / d.
inline Integer rank_formula(int d, int n) {
    if (d < 2 || n < 0) throw PreconditionError("rank_formula needs d >= 2, n >= 0");
    Integer num = ipow(Integer(d - 1), static_cast<unsigned long>(n + 1)) + (n % 2 ? -1 : 1);
    num *= d - 1;
    if (num % d != 0) throw VerificationError("rank formula is not integral");
    return num / d;
}

/// (-1)^{n(n+1)/2}
inline int intersection_sign(int n) { return ((n * (n + 1) / 2) % 2) ? -1 : 1; }

/// Shift a class of (Z/d)^{n+2} modulo the diagonal so the first entry is 0.
inline Exponent canonical_class(Exponent k, int d) {
    if (k.empty()) return k;
    const int shift = k[0];
    for (auto& x : k) x = mod(x - shift, d);
    return k;
}

/// Intersection number u^K . u^L in the primitive lattice, K and L classes in
/// (Z/d)^{n+2} modulo the diagonal. Read off as the coefficient of 1 in
/// (-1)^{n(n+1)/2} u^{K-L} prod_{nu=0}^{n+1} (1 - u_nu): a shifted 0/1 vector
/// K - L + 1_I = c(1,...,1) contributes (-1)^{|I|}.
inline Integer monomial_pairing(int d, int n, const Exponent& k, const Exponent& l) {
    const std::size_t len = static_cast<std::size_t>(n + 2);
    if (k.size() != len || l.size() != len) throw PreconditionError("monomial class has wrong length");
    Integer total = 0;
    for (int c = 0; c < d; ++c) {
        // need 1_I = c - (K - L) entrywise mod d, with entries in {0, 1}
        int size = 0;
        bool ok = true;
        for (std::size_t i = 0; i < len && ok; ++i) {
            int e = mod(c - (k[i] - l[i]), d);
            if (e > 1) ok = false;
            size += e;
        }
        if (ok) total += (size % 2) ? -1 : 1;
    }
    return intersection_sign(n) * total;
}

/// All K in {0, ..., d-2}^len, lexicographic.
inline std::vector<Exponent> reduced_exponents(int d, int len) {
    std::vector<Exponent> out;
    Exponent k(len, 0);
    for (;;) {
        out.push_back(k);
        int i = len - 1;
        while (i >= 0 && k[i] == d - 2) k[i--] = 0;
        if (i < 0) break;
        ++k[i];
    }
    return out;
}

/// Index of K in reduced_exponents(d, len).
inline std::size_t exponent_index(const Exponent& k, int d) {
    std::size_t r = 0;
    for (int x : k) r = r * static_cast<std::size_t>(d - 1) + static_cast<std::size_t>(x);
    return r;
}

/// Expresses the group element u^E (arbitrary E) in the monomial basis of
/// Z[mu_d^k] / (1 + u_i + ... + u_i^{d-1}), using u_i^{d-1} = -sum_{j<d-1} u_i^j.
inline std::map<std::size_t, Integer> reduce_monomial(const Exponent& e, int d) {
    std::map<std::size_t, Integer> acc{{0, 1}};
    for (int raw : e) {
        const int x = mod(raw, d);
        std::map<std::size_t, Integer> next;
        for (const auto& [idx, c] : acc) {
            const std::size_t base = idx * static_cast<std::size_t>(d - 1);
            if (x <= d - 2) next[base + static_cast<std::size_t>(x)] += c;
            else
                for (int j = 0; j <= d - 2; ++j) next[base + static_cast<std::size_t>(j)] -= c;
        }
        acc.clear();
        for (auto& [idx, c] : next)
            if (c != 0) acc.emplace(idx, std::move(c));
    }
    return acc;
}

/// Matrix of multiplication by a group-ring element from the module over
/// mu_d^{k_in} (embedded in the first coordinates) to the module over mu_d^{k_out}.
inline IntMatrix multiplication_matrix(const GroupRingElement& f, int d, int k_in, int k_out) {
    if (f.arity() != k_out || k_in > k_out) throw PreconditionError("multiplication_matrix: arity mismatch");
    const auto in = reduced_exponents(d, k_in);
    const std::size_t out_dim = monomial_count(d, k_out, static_cast<std::size_t>(-1));
    IntMatrix m(out_dim, in.size());
    Exponent e(k_out);
    for (std::size_t col = 0; col < in.size(); ++col)
        for (const auto& [g, c] : f.terms()) {
            for (int i = 0; i < k_out; ++i) e[i] = g[i] + (i < k_in ? in[col][i] : 0);
            for (const auto& [row, x] : reduce_monomial(e, d)) m(row, col) += c * x;
        }
    return m;
}

/// Milnor lattice of the affine Fermat variety with its group-ring data.
struct MilnorModule {
    int d = 0;
    int n = 0;
    std::vector<Exponent> basis;
    IntegerLattice lattice;
    GroupRingElement self_pairing{3, 1};

    /// u^K * u^L in the group ring Z[mu_d^{n+1}]
    GroupRingElement star(const Exponent& k, const Exponent& l) const {
        Exponent diff(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) diff[i] = k[i] - l[i];
        return GroupRingElement::monomial(d, diff) * self_pairing;
    }
};

inline MilnorModule build_milnor(int d, int n) {
    check_parameters(d, n);
    MilnorModule m;
    m.d = d;
    m.n = n;
    m.basis = reduced_exponents(d, n + 1);
    m.self_pairing = pham_self_pairing(d, n + 1);
    const std::size_t r = m.basis.size();
    const int s = intersection_sign(n);
    IntMatrix g(r, r);
    Exponent diff(n + 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            for (int t = 0; t <= n; ++t) diff[t] = m.basis[j][t] - m.basis[i][t];
            g(i, j) = s * m.self_pairing.coefficient(diff);
        }
    m.lattice = IntegerLattice(std::move(g), n % 2 ? Symmetry::antisymmetric : Symmetry::symmetric,
                               "milnor(d=" + std::to_string(d) + ",n=" + std::to_string(n) + ")");
    return m;
}

/// Generator actions on the Milnor module: u_0, ..., u_{n+1} followed by the
/// adjacent transpositions (Z_i Z_{i+1}), i = 1..n, acting on exponents with
/// the sign character.
struct MilnorActions {
    std::vector<IntMatrix> u;
    std::vector<IntMatrix> transpositions;
};

inline MilnorActions milnor_actions(int d, int n) {
    const int k = n + 1;
    MilnorActions a;
    IntMatrix all = IntMatrix::identity(monomial_count(d, k, static_cast<std::size_t>(-1)));
    std::vector<IntMatrix> gens;
    for (int i = 0; i < k; ++i) {
        gens.push_back(multiplication_matrix(GroupRingElement::generator(d, k, i), d, k, k));
        all = all * gens.back();
    }
    // u_0 = (u_1 ... u_{n+1})^{-1} = (u_1 ... u_{n+1})^{d-1}
    IntMatrix u0 = IntMatrix::identity(all.rows());
    for (int j = 0; j < d - 1; ++j) u0 = u0 * all;
    a.u.push_back(std::move(u0));
    for (auto& g : gens) a.u.push_back(std::move(g));

    const auto basis = reduced_exponents(d, k);
    for (int i = 0; i + 1 < k; ++i) {
        IntMatrix t(basis.size(), basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
            Exponent e = basis[col];
            std::swap(e[i], e[i + 1]);
            t(exponent_index(e, d), col) = -1;
        }
        a.transpositions.push_back(std::move(t));
    }
    return a;
}

}  // namespace fermat
