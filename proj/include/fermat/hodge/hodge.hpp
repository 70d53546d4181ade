#pragma once

#include <map>
#include <string>
#include <vector>

#include "fermat/homology/milnor.hpp"

namespace fermat {

struct HodgeCharacter {
    int d = 0;
    int n = 0;
    Exponent k;  // n+2 entries in {1, ..., d-1}, sum divisible by d

    int weight() const {
        int s = 0;
        for (int x : k) s += x;
        return s;
    }
    friend bool operator==(const HodgeCharacter&, const HodgeCharacter&) = default;
};

struct HodgeType {
    int p = 0;
    int q = 0;
    friend bool operator==(const HodgeType&, const HodgeType&) = default;
};

inline void validate(const HodgeCharacter& c) {
    if (c.d < 3 || c.n < 0) throw PreconditionError("character needs d >= 3, n >= 0");
    if (c.k.size() != static_cast<std::size_t>(c.n + 2)) throw PreconditionError("character has wrong length");
    for (int x : c.k)
        if (x < 1 || x >= c.d) throw PreconditionError("character entries must lie in 1..d-1");
    if (c.weight() % c.d != 0) throw PreconditionError("character entries must sum to a multiple of d");
}

/// Tuples in {1..d-1}^{n+2} with sum divisible by d, lexicographic.
inline std::vector<HodgeCharacter> enumerate_characters(int d, int n) {
    check_parameters(d, n);
    const int len = n + 2;
    std::vector<HodgeCharacter> out;
    Exponent k(len, 1);
    int sum = len;
    for (;;) {
        if (sum % d == 0) out.push_back({d, n, k});
        int i = len - 1;
        while (i >= 0 && k[i] == d - 1) {
            sum -= d - 2;
            k[i--] = 1;
        }
        if (i < 0) break;
        ++k[i];
        ++sum;
    }
    return out;
}

/// p = |K|/d - 1: the chi^K eigenline is spanned by the residue form with
/// index L = d - K, and the pole order rule gives q + 1 = |L| / d.
inline HodgeType hodge_type(const HodgeCharacter& c) {
    validate(c);
    const int p = c.weight() / c.d - 1;
    return {p, c.n - p};
}

/// The printed alternative -1 + (n + 2 + |K|) / d, kept for reporting.
inline Rational printed_hodge_p(const HodgeCharacter& c) {
    validate(c);
    Rational r(c.n + 2 + c.weight(), c.d);
    r.canonicalize();
    return r - 1;
}

/// Primitive h^{p, n-p}, indexed by p.
inline std::map<int, std::size_t> hodge_numbers(int d, int n) {
    std::map<int, std::size_t> h;
    for (const auto& c : enumerate_characters(d, n)) ++h[hodge_type(c).p];
    return h;
}

/// Character of the eigenline of maximal p, required to be unique.
inline HodgeCharacter fermat_class_character(int d, int n) {
    const auto cs = enumerate_characters(d, n);
    int best = -1;
    std::vector<const HodgeCharacter*> top;
    for (const auto& c : cs) {
        const int p = hodge_type(c).p;
        if (p > best) {
            best = p;
            top.clear();
        }
        if (p == best) top.push_back(&c);
    }
    if (top.size() != 1)
        throw NonUniqueError("top Hodge type (" + std::to_string(best) + "," + std::to_string(n - best) +
                                ") has multiplicity " + std::to_string(top.size()));
    return *top.front();
}

inline HodgeCharacter conjugate(const HodgeCharacter& c) {
    HodgeCharacter r = c;
    for (auto& x : r.k) x = c.d - x;
    return r;
}

}  // namespace fermat
