#include <gtest/gtest.h>

#include <random>

#include "fermat/lattice/lattice.hpp"

using namespace fermat;

namespace {

// Inertia by symmetric Gaussian elimination with 2x2 handling; independent of
// the characteristic-polynomial route used by signature().
Signature ldl_inertia(const IntMatrix& g) {
    RatMatrix a = RatMatrix::from(g);
    std::size_t n = a.rows(), pos = 0, neg = 0, zero = 0;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n;) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // no usable diagonal: find an off-diagonal pair, rotate e_i -> e_i + e_j
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
                        pi = i, pj = j;
                        break;
                    }
            if (pi == n) {
                for (std::size_t i = 0; i < n; ++i)
                    if (!done[i]) ++zero;
                break;
            }
            a.add_row(pi, pj, 1);
            a.add_col(pi, pj, 1);
            continue;
        }
        (a(p, p) > 0 ? pos : neg)++;
        done[p] = true;
        ++step;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, p) == 0) continue;
            Rational f = -a(i, p) / a(p, p);
            a.add_row(i, p, f);
            a.add_col(i, p, f);
        }
    }
    return {pos, neg, zero};
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> f(-2, 2);
    for (int t = 0; t < 4 * static_cast<int>(n); ++t) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i != j) u.add_row(i, j, f(rng));
    }
    return u;
}

IntMatrix random_symmetric(std::mt19937& rng, std::size_t n, int range) {
    std::uniform_int_distribution<int> e(-range, range);
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = e(rng);
    return g;
}

const IntMatrix a2{{2, 1}, {1, 2}};

}  // namespace

TEST(Smith, SmallExamples) {
    auto s = smith_normal_form(a2);
    EXPECT_EQ(s.divisors, (std::vector<Integer>{1, 3}));
    EXPECT_EQ(s.left * a2 * s.right, s.diagonal);
    EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).divisors, (std::vector<Integer>{1, 1, 1}));
    auto z = smith_normal_form(IntMatrix(2, 2));
    EXPECT_EQ(z.divisors, (std::vector<Integer>{0, 0}));
    EXPECT_EQ(z.rank, 0u);
}

TEST(Smith, TransformsAndDivisibilityOnRandomMatrices) {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> e(-6, 6);
    for (int t = 0; t < 40; ++t) {
        IntMatrix m(3 + t % 3, 2 + t % 4);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = e(rng);
        auto s = smith_normal_form(m);
        EXPECT_EQ(s.left * m * s.right, s.diagonal);
        EXPECT_EQ(s.right * s.right_inverse, IntMatrix::identity(m.cols()));
        EXPECT_EQ(elementary_divisors(m), s.divisors);
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
            if (s.divisors[i + 1] != 0) {
                EXPECT_EQ(s.divisors[i + 1] % s.divisors[i], 0);
            }
        EXPECT_EQ(s.rank, rank(m));
    }
}

TEST(Hermite, RowFormIsReducedEchelon) {
    IntMatrix m{{4, 6, 2}, {2, 3, 1}, {0, 5, 7}};
    auto h = hermite_normal_form(m);
    EXPECT_EQ(h.form.rows(), 2u);
    IntMatrix full = h.transform * m;
    for (std::size_t i = 0; i < h.form.rows(); ++i) EXPECT_EQ(full.row(i), h.form.row(i));
    EXPECT_GT(h.form(0, h.pivots[0]), 0);
    EXPECT_GE(h.form(0, h.pivots[1]), 0);
    EXPECT_LT(h.form(0, h.pivots[1]), h.form(1, h.pivots[1]));
}

TEST(RadicalQuotient, ExplicitRadical) {
    IntegerLattice l(IntMatrix{{2, 0}, {0, 0}}, Symmetry::symmetric);
    auto q = radical_quotient(l);
    EXPECT_EQ(q.lattice.gram(), (IntMatrix{{2}}));
    EXPECT_EQ(q.radical.cols(), 1u);
}

TEST(RadicalQuotient, NondegenerateInputIsUnchanged) {
    IntegerLattice l(a2, Symmetry::symmetric);
    auto q = radical_quotient(l);
    EXPECT_EQ(q.lattice.gram(), a2);
    EXPECT_EQ(q.projection, IntMatrix::identity(2));
}

TEST(RadicalQuotient, RandomDegenerateLattices) {
    std::mt19937 rng(7);
    for (int t = 0; t < 25; ++t) {
        const std::size_t r = 2 + t % 3, z = 1 + t % 2;
        IntMatrix m;
        do m = random_symmetric(rng, r, 3);
        while (determinant(m) == 0);
        IntMatrix block(r + z, r + z);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) block(i, j) = m(i, j);
        IntMatrix u = random_unimodular(rng, r + z);
        IntegerLattice l(u.transpose() * block * u, Symmetry::symmetric);
        auto q = radical_quotient(l);
        EXPECT_EQ(q.lattice.rank(), r);
        EXPECT_NE(determinant(q.lattice.gram()), 0);
        EXPECT_EQ(abs(determinant(q.lattice.gram())), abs(determinant(m)));
        EXPECT_EQ(q.projection.transpose() * q.lattice.gram() * q.projection, l.gram());
        EXPECT_EQ(q.projection * q.lifts, IntMatrix::identity(r));
        EXPECT_TRUE((l.gram() * q.radical).is_zero());
        // canonical: another unimodular conjugate of the same lattice gives the same quotient
        EXPECT_EQ(radical_quotient(l).lattice.gram(), q.lattice.gram());
    }
}

TEST(Signature, SmallExamples) {
    EXPECT_EQ(signature(IntMatrix{{1, 0}, {0, -1}}), (Signature{1, 1, 0}));
    EXPECT_EQ(signature(IntMatrix{{2}}), (Signature{1, 0, 0}));
    EXPECT_EQ(signature(IntMatrix{{0, 1}, {1, 0}}), (Signature{1, 1, 0}));
    EXPECT_EQ(signature(IntMatrix{{2, 0}, {0, 0}}), (Signature{1, 0, 1}));
    EXPECT_THROW(signature(IntegerLattice(IntMatrix{{0, 1}, {-1, 0}}, Symmetry::antisymmetric)), PreconditionError);
}

TEST(Signature, AgreesWithEliminationOracle) {
    std::mt19937 rng(99);
    for (int t = 0; t < 60; ++t) {
        IntMatrix g = random_symmetric(rng, 1 + t % 7, 5);
        Signature s = signature(g), o = ldl_inertia(g);
        EXPECT_EQ(s, o) << "case " << t;
        EXPECT_EQ(s.positive + s.negative + s.radical, g.rows());
    }
}

TEST(Discriminant, Examples) {
    EXPECT_EQ(discriminant(IntegerLattice(IntMatrix::identity(3), Symmetry::symmetric)).group_order, 1);
    auto d = discriminant(IntegerLattice(a2, Symmetry::symmetric));
    EXPECT_EQ(d.elementary_divisors, (std::vector<Integer>{3}));
    EXPECT_TRUE(d.is_cyclic());
    EXPECT_THROW(discriminant(IntegerLattice(IntMatrix{{1, 0}, {0, 0}}, Symmetry::symmetric)), PreconditionError);
}

TEST(Discriminant, OrderIsAbsoluteDeterminant) {
    std::mt19937 rng(4);
    for (int t = 0; t < 30; ++t) {
        IntMatrix g = random_symmetric(rng, 2 + t % 4, 4);
        Integer det = determinant(g);
        if (det == 0) continue;
        EXPECT_EQ(discriminant(IntegerLattice(g, Symmetry::symmetric)).group_order, abs(det));
    }
}

TEST(Parity, Examples) {
    EXPECT_TRUE(is_even(IntegerLattice(IntMatrix{{2, 0}, {0, 4}}, Symmetry::symmetric)));
    EXPECT_FALSE(is_even(IntegerLattice(IntMatrix{{1}}, Symmetry::symmetric)));
}

TEST(Glue, EmptyGlueIsOrthogonalSum) {
    GlueSpec spec{{IntegerLattice(a2, Symmetry::symmetric), IntegerLattice(IntMatrix{{4}}, Symmetry::symmetric)}, {}};
    auto g = glue(spec);
    EXPECT_EQ(g.index, 1);
    EXPECT_EQ(g.lattice.gram(), g.sum.gram());
}

TEST(Glue, HyperbolicPairOfA2) {
    // A2 has discriminant form 2/3 mod 2; gluing needs the opposite sign on the second copy
    IntegerLattice plus(a2, Symmetry::symmetric), minus(-a2, Symmetry::symmetric);
    std::vector<Rational> x{Rational(2, 3), Rational(-1, 3), Rational(2, 3), Rational(-1, 3)};
    auto g = glue({{plus, minus}, {x}});
    EXPECT_EQ(g.index, 3);
    EXPECT_EQ(determinant(g.lattice.gram()), 1);
    EXPECT_EQ(determinant(g.sum.gram()), 9);
    EXPECT_THROW(glue({{plus, plus}, {x}}), InvalidGlueError);
}

TEST(Glue, DeterminantIdentityOnRandomSpecs) {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 2 + t % 3;
        IntMatrix g;
        do g = random_symmetric(rng, n, 3);
        while (determinant(g) == 0);
        IntMatrix b(n, n);
        do
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) b(i, j) = e(rng);
        while (determinant(b) == 0);
        // M = B^T G B is a sublattice of (Z^n, G); glue back with the rows of B^{-1}
        IntegerLattice m(b.transpose() * g * b, Symmetry::symmetric);
        RatMatrix binv = inverse(RatMatrix::from(b));
        std::vector<std::vector<Rational>> gv;
        for (std::size_t i = 0; i < n; ++i) gv.push_back(binv.transpose().row(i));
        auto r = glue({{m}, gv});
        Integer idx = abs(determinant(b));
        EXPECT_EQ(r.index, idx);
        EXPECT_EQ(determinant(r.lattice.gram()) * idx * idx, determinant(m.gram()));
        EXPECT_EQ(abs(determinant(r.lattice.gram())), abs(determinant(g)));
    }
}

TEST(ShortVectors, DiagonalAndWrongSign) {
    IntegerLattice l(IntMatrix{{2, 0}, {0, 2}}, Symmetry::symmetric);
    auto v = short_vectors(l, 2);
    EXPECT_EQ(v.size(), 4u);
    EXPECT_TRUE(short_vectors(l, -2).empty());
    EXPECT_THROW(short_vectors(IntegerLattice(IntMatrix{{1, 0}, {0, -1}}, Symmetry::symmetric), 1), IndefiniteLatticeError);
}

TEST(ShortVectors, MatchesBruteForceOnRandomDefiniteForms) {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> e(-2, 2);
    for (int t = 0; t < 15; ++t) {
        const std::size_t n = 2 + t % 3;
        IntMatrix b(n, n);
        do
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) b(i, j) = e(rng);
        while (determinant(b) == 0);
        IntMatrix g = b.transpose() * b;
        IntegerLattice l(g, Symmetry::symmetric);
        for (int norm = 1; norm <= 4; ++norm) {
            auto got = short_vectors(l, norm);
            // brute force: |c_i| bounded by sqrt(norm * (G^{-1})_{ii}) <= norm * max entry of adj
            RatMatrix gi = inverse(RatMatrix::from(g));
            std::vector<int> bound(n);
            for (std::size_t i = 0; i < n; ++i) {
                Rational s = gi(i, i) * norm;
                int c = 0;
                while (Rational((c + 1) * (c + 1)) <= s) ++c;
                bound[i] = c;
            }
            std::vector<IntVector> brute;
            IntVector x(n);
            std::vector<int> cur(n);
            for (std::size_t i = 0; i < n; ++i) cur[i] = -bound[i];
            for (;;) {
                for (std::size_t i = 0; i < n; ++i) x[i] = cur[i];
                if (bilinear(g, x, x) == norm) brute.push_back(x);
                std::size_t i = 0;
                while (i < n && cur[i] == bound[i]) cur[i] = -bound[i], ++i;
                if (i == n) break;
                ++cur[i];
            }
            std::sort(brute.begin(), brute.end());
            EXPECT_EQ(got, brute) << "case " << t << " norm " << norm;
        }
    }
}

TEST(Antisymmetric, DeterminantIsSquare) {
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 * (1 + t % 3);
        IntMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                g(i, j) = e(rng);
                g(j, i) = -g(i, j);
            }
        IntegerLattice l(g, Symmetry::antisymmetric);
        EXPECT_TRUE(determinant_is_square(l));
    }
    EXPECT_THROW(IntegerLattice(IntMatrix{{0, 1}, {1, 0}}, Symmetry::antisymmetric), PreconditionError);
}
