#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fermat/lattice/lattice.hpp"

namespace fermat {

struct BoxOptions {
    long bound = 1;                  // |c_i| <= bound
    long modulus = 0;                // if > 1, keep only c with G c = 0 mod modulus
    std::size_t max_hits = 0;        // 0: no cap
    std::uint64_t max_nodes = 4000000000ULL;  // search-tree nodes before ResourceError
};

struct BoxResult {
    long bound = 0;
    std::vector<IntVector> hits;  // coefficient vectors, sorted
    bool truncated = false;        // stopped at max_hits
    std::uint64_t nodes = 0;
    std::size_t head = 0;  // coordinates outside the positive definite tail
};

namespace detail {

// Nullspace of G mod p, p prime; rows of the result span it.
inline std::vector<std::vector<long>> nullspace_mod(const IntMatrix& g, long p) {
    const std::size_t n = g.rows();
    std::vector<std::vector<long>> a(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer r = g(i, j) % p;
            if (r < 0) r += p;
            a[i][j] = r.get_si();
        }
    auto inv = [p](long x) {
        long r = 1, b = x, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<long> pivot_of(n, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t q = r;
        while (q < n && a[q][c] == 0) ++q;
        if (q == n) continue;
        std::swap(a[q], a[r]);
        const long s = inv(a[r][c]);
        for (auto& x : a[r]) x = x * s % p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const long f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
        }
        pivot_of[c] = static_cast<long>(r);
        ++r;
    }
    std::vector<std::vector<long>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_of[f] >= 0) continue;
        std::vector<long> v(n, 0);
        v[f] = 1;
        for (std::size_t c = 0; c < n; ++c)
            if (pivot_of[c] >= 0) v[c] = (p - a[pivot_of[c]][f]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

/// All c with |c_i| <= bound and c^T G c = norm. Coordinates are split into a
/// positive definite tail T (chosen greedily in index order) and a head H.
/// For each head assignment in the box the tail is an ellipsoid problem
/// (c_T + z)^T G_TT (c_T + z) = R, enumerated exactly by Fincke-Pohst with
/// every level clipped to the box. With a modulus, only lifts of the residue
/// classes of {c : G c = 0 mod p} are visited.
inline BoxResult bounded_box_vectors(const IntegerLattice& l, const Integer& norm, const BoxOptions& opt) {
    if (opt.bound < 1) throw PreconditionError("box bound must be >= 1");
    if (l.symmetry() != Symmetry::symmetric) throw WrongSymmetryError("box search needs a symmetric lattice");
    const std::size_t n = l.rank();
    const IntMatrix& g = l.gram();
    const long b = opt.bound;
    BoxResult res;
    res.bound = b;
    Integer reach = 0;  // max |c^T G c| over the box
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) reach += abs(g(i, j));
    reach *= b * b;
    if (abs(norm) > reach) return res;

    // greedy tail from each cyclic starting index; keep the longest
    std::vector<std::size_t> tail, head;
    for (std::size_t start = 0; start < n; ++start) {
        std::vector<std::size_t> t, h;
        for (std::size_t step = 0; step < n; ++step) {
            const std::size_t i = (start + step) % n;
            auto trial = t;
            trial.push_back(i);
            if (detail::positive_ldl(g.submatrix(trial, trial))) t = std::move(trial);
            else h.push_back(i);
        }
        if (start == 0 || t.size() > tail.size()) {
            tail = std::move(t);
            head = std::move(h);
        }
    }
    const std::size_t nt = tail.size(), nh = head.size();
    res.head = nh;
    // tail coordinates are enumerated last-to-first by Fincke-Pohst
    const IntMatrix gtt = g.submatrix(tail, tail), gth = g.submatrix(tail, head), ghh = g.submatrix(head, head);
    const auto ldl = nt ? *detail::positive_ldl(gtt) : detail::RationalLdl{};
    const RatMatrix m = nt ? RatMatrix(inverse(RatMatrix::from(gtt)) * RatMatrix::from(gth)) : RatMatrix(0, nh);

    std::vector<std::vector<long>> classes;
    if (opt.modulus > 1) {
        auto ker = detail::nullspace_mod(g, opt.modulus);
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < ker.size(); ++i) {
            count *= static_cast<std::uint64_t>(opt.modulus);
            if (count > 1000000) throw ResourceError("too many residue classes");
        }
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<long> v(n, 0);
            std::uint64_t c = code;
            for (const auto& k : ker) {
                const long t = static_cast<long>(c % opt.modulus);
                c /= opt.modulus;
                for (std::size_t i = 0; i < n; ++i) v[i] = (v[i] + t * k[i]) % opt.modulus;
            }
            classes.push_back(std::move(v));
        }
    } else {
        classes.emplace_back();
    }

    IntVector c(n, 0);
    std::vector<std::vector<long>> values(n);
    bool stop = false;
    auto tick = [&] {
        if (++res.nodes > opt.max_nodes) throw ResourceError("box search exceeded its node budget");
    };
    auto record = [&] {
        if (bilinear(g, c, c) != norm) return;
        res.hits.push_back(c);
        if (opt.max_hits && res.hits.size() >= opt.max_hits) {
            res.truncated = true;
            stop = true;
        }
    };

    std::vector<Rational> z(nt), remaining(nt + 1), shifted(nt);
    auto tail_rec = [&](auto&& self, std::size_t i) -> void {
        tick();
        Rational center = -z[i];
        for (std::size_t j = i + 1; j < nt; ++j) center -= ldl.mu[i][j] * shifted[j];
        const Rational& rem = remaining[i + 1];
        for (long x : values[tail[i]]) {
            Rational t = x - center;
            Rational used = ldl.diag[i] * t * t;
            if (used > rem) continue;
            c[tail[i]] = x;
            shifted[i] = x + z[i];
            remaining[i] = rem - used;
            if (i == 0) record();
            else self(self, i - 1);
            if (stop) break;
        }
        c[tail[i]] = 0;
    };
    auto solve_tail = [&] {
        IntVector ch(nh);
        for (std::size_t a = 0; a < nh; ++a) ch[a] = c[head[a]];
        Integer qh = bilinear(ghh, ch, ch);
        if (nt == 0) {
            tick();
            record();
            return;
        }
        // z = G_TT^{-1} G_TH c_H, R = norm - q_H + (G_TH c_H) . z
        const IntVector hvec = gth * ch;
        Rational r = Rational(norm - qh);
        for (std::size_t i = 0; i < nt; ++i) {
            z[i] = 0;
            for (std::size_t a = 0; a < nh; ++a) z[i] += m(i, a) * ch[a];
            r += hvec[i] * z[i];
        }
        if (r < 0) return;
        remaining[nt] = r;
        tail_rec(tail_rec, nt - 1);
    };
    auto head_rec = [&](auto&& self, std::size_t a) -> void {
        if (a == nh) {
            solve_tail();
            return;
        }
        tick();
        for (long x : values[head[a]]) {
            c[head[a]] = x;
            self(self, a + 1);
            if (stop) break;
        }
        c[head[a]] = 0;
    };
    for (const auto& cls : classes) {
        for (std::size_t i = 0; i < n; ++i) {
            values[i].clear();
            for (long x = -b; x <= b; ++x)
                if (cls.empty() || ((x - cls[i]) % opt.modulus + opt.modulus) % opt.modulus == 0)
                    values[i].push_back(x);
        }
        head_rec(head_rec, 0);
        if (stop) break;
    }
    std::sort(res.hits.begin(), res.hits.end());
    return res;
}

}  // namespace fermat
