#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "fermat/homology/primitive.hpp"

using namespace fermat;

namespace {

// coefficient of 1 in u^{K-L} prod_{nu=0}^{n+1} (1 - u_nu) over Z[mu_d^{n+2}],
// summed over the diagonal coset
Integer pairing_oracle(int d, int n, const Exponent& k, const Exponent& l) {
    const int len = n + 2;
    Exponent diff(len);
    for (int i = 0; i < len; ++i) diff[i] = k[i] - l[i];
    auto x = GroupRingElement::monomial(d, diff) * prod_one_minus_generators(d, len);
    Integer c = 0;
    for (int s = 0; s < d; ++s) c += x.coefficient(Exponent(len, s));
    return intersection_sign(n) * c;
}

}  // namespace

TEST(MonomialPairing, Examples) {
    EXPECT_EQ(monomial_pairing(3, 4, Exponent(6, 0), Exponent(6, 0)), 2);
    Exponent l{0, 2, 0, 0, 0, 0};
    EXPECT_EQ(monomial_pairing(3, 4, Exponent(6, 0), l), -1);
    EXPECT_EQ(pairing_oracle(3, 4, Exponent(6, 0), l), -1);
    EXPECT_EQ(monomial_pairing(3, 3, Exponent(5, 0), Exponent(5, 0)), 0);
}

TEST(MonomialPairing, AgreesWithGroupRingOracle) {
    std::mt19937 rng(1);
    for (int d : {3, 4, 5})
        for (int n = 0; n <= 3; ++n) {
            std::uniform_int_distribution<int> ex(0, d - 1);
            for (int t = 0; t < 40; ++t) {
                Exponent k(n + 2), l(n + 2);
                for (auto& x : k) x = ex(rng);
                for (auto& x : l) x = ex(rng);
                EXPECT_EQ(monomial_pairing(d, n, k, l), pairing_oracle(d, n, k, l));
                EXPECT_EQ(monomial_pairing(d, n, canonical_class(k, d), canonical_class(l, d)),
                          monomial_pairing(d, n, k, l));
            }
        }
}

TEST(MonomialPairing, MatchesMilnorGram) {
    for (auto [d, n] : {std::pair{3, 2}, {3, 3}, {4, 1}, {4, 2}}) {
        auto m = build_milnor(d, n);
        for (std::size_t i = 0; i < m.basis.size(); ++i)
            for (std::size_t j = 0; j < m.basis.size(); ++j) {
                Exponent k{0}, l{0};
                k.insert(k.end(), m.basis[i].begin(), m.basis[i].end());
                l.insert(l.end(), m.basis[j].begin(), m.basis[j].end());
                ASSERT_EQ(m.lattice.gram()(i, j), monomial_pairing(d, n, k, l));
            }
    }
}

TEST(Milnor, RanksAndSymmetry) {
    auto m1 = build_milnor(3, 1);
    EXPECT_EQ(m1.lattice.rank(), 4u);
    EXPECT_EQ(m1.lattice.symmetry(), Symmetry::antisymmetric);
    auto m2 = build_milnor(3, 2);
    EXPECT_EQ(m2.lattice.rank(), 8u);
    EXPECT_EQ(m2.lattice.symmetry(), Symmetry::symmetric);
    EXPECT_EQ(rank(m2.lattice.gram()), 6u);
    EXPECT_EQ(build_milnor(3, 0).lattice.rank(), 2u);
    EXPECT_THROW(build_milnor(3, 99), ResourceError);
    EXPECT_THROW(build_milnor(2, 1), PreconditionError);
}

TEST(Milnor, StarPairingIsHermitianOrAntihermitian) {
    for (int n = 0; n <= 3; ++n) {
        auto m = build_milnor(3, n);
        for (std::size_t i = 0; i < m.basis.size(); i += 3)
            for (std::size_t j = 0; j < m.basis.size(); j += 2)
                EXPECT_EQ(m.star(m.basis[i], m.basis[j]),
                          Integer(n % 2 ? -1 : 1) * m.star(m.basis[j], m.basis[i]).bar());
    }
}

TEST(RankFormula, Values) {
    EXPECT_EQ(rank_formula(3, 4), 22);
    EXPECT_EQ(rank_formula(3, 0), 2);
    EXPECT_EQ(rank_formula(5, 2), 4 * (64 + 1) / 5);
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(rank_formula(3, n) / 2, std::vector<int>({1, 3, 5, 11})[n - 1]);
}

TEST(Primitive, RanksForCubics) {
    std::vector<std::size_t> expected{2, 6, 10, 22};
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(build_primitive(3, n).lattice.rank(), expected[n - 1]);
    auto p = build_primitive(4, 1);
    EXPECT_EQ(p.lattice.rank(), 6u);
    EXPECT_EQ(p.lattice.symmetry(), Symmetry::antisymmetric);
}

TEST(Primitive, CubicSurfaceIsNegativeE6) {
    auto p = build_primitive(3, 2);
    EXPECT_TRUE(is_even(p.lattice));
    EXPECT_EQ(signature(p.lattice), (Signature{0, 6, 0}));
    EXPECT_EQ(determinant(p.lattice.gram()), 3);
    EXPECT_EQ(discriminant(p.lattice).elementary_divisors, (std::vector<Integer>{3}));
    auto roots = short_vectors(p.lattice, -2);
    EXPECT_EQ(roots.size(), 72u);
    // brute force: -G is positive definite with |c_i|^2 <= 2 (G^{-1})_ii
    RatMatrix gi = inverse(RatMatrix::from(-p.lattice.gram()));
    std::vector<int> bound;
    for (std::size_t i = 0; i < 6; ++i) {
        int c = 0;
        while (Rational((c + 1) * (c + 1)) <= 2 * gi(i, i)) ++c;
        bound.push_back(c);
    }
    std::size_t count = 0;
    std::vector<int> cur(6);
    for (std::size_t i = 0; i < 6; ++i) cur[i] = -bound[i];
    IntVector x(6);
    for (;;) {
        for (std::size_t i = 0; i < 6; ++i) x[i] = cur[i];
        if (p.lattice.norm(x) == -2) ++count;
        std::size_t i = 0;
        while (i < 6 && cur[i] == bound[i]) cur[i] = -bound[i], ++i;
        if (i == 6) break;
        ++cur[i];
    }
    EXPECT_EQ(count, 72u);
}

TEST(Primitive, OddDimensionalCubicsAreUnimodular) {
    for (int n : {1, 3}) {
        auto p = build_primitive(3, n);
        EXPECT_EQ(determinant(p.lattice.gram()), 1);
        EXPECT_TRUE(determinant_is_square(p.lattice));
    }
}

TEST(Primitive, ActionsVerify) {
    for (auto [d, n] : {std::pair{3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {5, 1}}) {
        auto p = build_primitive(d, n);
        EXPECT_EQ(p.u.size(), static_cast<std::size_t>(n + 2));
        EXPECT_EQ(p.transpositions.size(), static_cast<std::size_t>(n));
        EXPECT_NO_THROW(verify_actions(p));
        EXPECT_EQ(p.lattice.rank(), rank_formula(d, n).get_ui());
    }
}

TEST(Primitive, MonomialImagesHaveSelfPairing) {
    auto p = build_primitive(3, 4);
    for (const auto& [k, v] : p.monomial_images) EXPECT_EQ(p.lattice.norm(v), 2);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> ex(0, 2);
    for (int t = 0; t < 30; ++t) {
        Exponent k(5), l(5);
        for (auto& x : k) x = ex(rng);
        for (auto& x : l) x = ex(rng);
        Exponent kk{0}, ll{0};
        kk.insert(kk.end(), k.begin(), k.end());
        ll.insert(ll.end(), l.begin(), l.end());
        EXPECT_EQ(p.lattice.pair(p.monomial(k), p.monomial(l)), monomial_pairing(3, 4, kk, ll));
    }
}

TEST(Primitive, DeterministicBasis) {
    EXPECT_EQ(build_primitive(3, 3).lattice.gram(), build_primitive(3, 3).lattice.gram());
}

TEST(Primitive, FastInvariantsAgreeWithQuotient) {
    for (auto [d, n] : {std::pair{3, 2}, {3, 4}, {4, 2}, {5, 2}, {4, 1}}) {
        auto fast = primitive_invariants(d, n);
        auto p = build_primitive(d, n);
        EXPECT_EQ(fast.rank, p.lattice.rank());
        if (n % 2 == 0) {
            EXPECT_EQ(fast.even, is_even(p.lattice));
            EXPECT_EQ(fast.discriminant.elementary_divisors, discriminant(p.lattice).elementary_divisors);
        }
    }
}

TEST(Resolution, CubicSurface) {
    auto r = resolution_check(3, 2);
    EXPECT_TRUE(r.exact) << r.failure;
    EXPECT_EQ(r.module_ranks, (std::vector<std::size_t>{2, 4, 8, 6}));
    long alt = 0;
    for (std::size_t i = 0; i < r.module_ranks.size(); ++i) alt += (i % 2 ? -1L : 1L) * static_cast<long>(r.module_ranks[i]);
    EXPECT_EQ(alt, 0);
}

TEST(Resolution, ExactForSmallCases) {
    for (auto [d, n] : {std::pair{3, 1}, {3, 3}, {3, 4}, {4, 1}, {4, 2}}) {
        auto r = resolution_check(d, n);
        EXPECT_TRUE(r.exact) << "d=" << d << " n=" << n << ": " << r.failure;
    }
    EXPECT_EQ(resolution_check(4, 1).module_ranks, (std::vector<std::size_t>{3, 9, 6}));
}

TEST(Resolution, FirstImageHasIndexDInItsSaturation) {
    // gcd of the 2x2 minors of the R_1 -> R_2 matrix measures the index directly
    for (int d : {3, 4, 5}) {
        IntMatrix f = multiplication_matrix(connecting_element(d, 1), d, 1, 2);
        Integer g = 0;
        const std::size_t c = f.cols();
        // (d-1) columns: the minors of full column size
        std::vector<std::size_t> rows(c);
        std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t start, std::size_t depth) {
            if (depth == c) {
                std::vector<std::size_t> cols(c);
                for (std::size_t j = 0; j < c; ++j) cols[j] = j;
                g = gcd(g, determinant(f.submatrix(rows, cols)));
                return;
            }
            for (std::size_t i = start; i < f.rows(); ++i) {
                rows[depth] = i;
                pick(i + 1, depth + 1);
            }
        };
        pick(0, 0);
        auto r = resolution_check(d, 1);
        EXPECT_EQ(r.stages.front().image_index, g);
        EXPECT_EQ(g, d);
        EXPECT_FALSE(r.exact_over_z);
    }
}
