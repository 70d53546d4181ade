#include <gtest/gtest.h>

#include <set>

#include "fermat/hodge/hodge.hpp"
#include "fermat/homology/primitive.hpp"

using namespace fermat;

namespace {

// decode every integer below (d-1)^{n+2} as a digit tuple, keep zero-sum ones
std::vector<Exponent> brute_characters(int d, int n) {
    const int len = n + 2;
    long total = 1;
    for (int i = 0; i < len; ++i) total *= d - 1;
    std::vector<Exponent> out;
    for (long code = 0; code < total; ++code) {
        Exponent k(len);
        long c = code;
        int s = 0;
        for (int i = len - 1; i >= 0; --i) {
            k[i] = 1 + static_cast<int>(c % (d - 1));
            c /= d - 1;
            s += k[i];
        }
        if (s % d == 0) out.push_back(k);
    }
    return out;
}

}  // namespace

TEST(Characters, Counts) {
    EXPECT_EQ(enumerate_characters(3, 0).size(), 2u);
    EXPECT_EQ(enumerate_characters(3, 2).size(), 6u);
    EXPECT_EQ(enumerate_characters(3, 4).size(), 22u);
    auto c0 = enumerate_characters(3, 0);
    EXPECT_EQ(c0[0].k, (Exponent{1, 2}));
    EXPECT_EQ(c0[1].k, (Exponent{2, 1}));
}

TEST(Characters, AgreeWithBruteForceAndRank) {
    for (int d = 3; d <= 5; ++d)
        for (int n = 0; n <= 4; ++n) {
            auto cs = enumerate_characters(d, n);
            auto bf = brute_characters(d, n);
            ASSERT_EQ(cs.size(), bf.size());
            for (std::size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(cs[i].k, bf[i]);
            EXPECT_EQ(Integer(cs.size()), rank_formula(d, n)) << "d=" << d << " n=" << n;
        }
}

TEST(Characters, WeightMultiplicitiesForCubicFourfolds) {
    std::map<int, int> w;
    for (const auto& c : enumerate_characters(3, 4)) ++w[c.weight()];
    EXPECT_EQ(w, (std::map<int, int>{{6, 1}, {9, 20}, {12, 1}}));
    for (const auto& c : enumerate_characters(3, 2)) EXPECT_EQ(c.weight(), 6);
}

TEST(HodgeType, Examples) {
    EXPECT_EQ(hodge_type({3, 4, Exponent(6, 2)}), (HodgeType{3, 1}));
    EXPECT_EQ(hodge_type({3, 4, Exponent(6, 1)}), (HodgeType{1, 3}));
    for (const auto& c : enumerate_characters(3, 2)) EXPECT_EQ(hodge_type(c), (HodgeType{1, 1}));
    EXPECT_THROW(hodge_type({3, 1, Exponent{1, 1, 2}}), PreconditionError);
    EXPECT_THROW(hodge_type({3, 1, Exponent{0, 1, 2}}), PreconditionError);
}

TEST(HodgeType, PrintedFormulaDiffersByConstant) {
    HodgeCharacter c{3, 4, Exponent(6, 2)};
    EXPECT_EQ(printed_hodge_p(c), 5);
    EXPECT_EQ(printed_hodge_p(c) - hodge_type(c).p, Rational(c.n + 2) / c.d);
}

TEST(HodgeType, ConjugationSwapsPAndQ) {
    for (int d = 3; d <= 5; ++d)
        for (int n = 0; n <= 3; ++n) {
            std::set<Exponent> seen;
            for (const auto& c : enumerate_characters(d, n)) {
                auto t = hodge_type(c);
                auto u = hodge_type(conjugate(c));
                EXPECT_EQ(t.p, u.q);
                EXPECT_EQ(t.q, u.p);
                EXPECT_GE(t.p, 0);
                EXPECT_GE(t.q, 0);
                seen.insert(conjugate(c).k);
            }
            EXPECT_EQ(seen.size(), enumerate_characters(d, n).size());
        }
}

TEST(HodgeNumbers, Examples) {
    EXPECT_EQ(hodge_numbers(3, 4), (std::map<int, std::size_t>{{1, 1}, {2, 20}, {3, 1}}));
    EXPECT_EQ(hodge_numbers(3, 3), (std::map<int, std::size_t>{{1, 5}, {2, 5}}));
    EXPECT_EQ(hodge_numbers(3, 1), (std::map<int, std::size_t>{{0, 1}, {1, 1}}));
}

TEST(HodgeNumbers, SymmetricAndSumToRank) {
    for (int d = 3; d <= 5; ++d)
        for (int n = 0; n <= 4; ++n) {
            auto h = hodge_numbers(d, n);
            std::size_t total = 0;
            for (auto [p, c] : h) {
                total += c;
                auto it = h.find(n - p);
                ASSERT_NE(it, h.end());
                EXPECT_EQ(it->second, c);
            }
            EXPECT_EQ(Integer(total), rank_formula(d, n));
        }
}

TEST(HodgeNumbers, NegativeDirectionsOfTheIntersectionForm) {
    auto e6 = build_primitive(3, 2);
    EXPECT_EQ(signature(e6.lattice).negative, hodge_numbers(3, 2).at(1));
    auto p = build_primitive(3, 4);
    auto h = hodge_numbers(3, 4);
    EXPECT_EQ(signature(p.lattice).negative, h.at(3) + h.at(1));
}

TEST(FermatClass, Examples) {
    auto c = fermat_class_character(3, 4);
    EXPECT_EQ(c.k, Exponent(6, 2));
    EXPECT_EQ(hodge_type(c), (HodgeType{3, 1}));
    EXPECT_EQ(fermat_class_character(3, 1).k, (Exponent{2, 2, 2}));
    EXPECT_EQ(hodge_type(fermat_class_character(3, 1)), (HodgeType{1, 0}));
    EXPECT_THROW(fermat_class_character(3, 2), NonUniqueError);
}
