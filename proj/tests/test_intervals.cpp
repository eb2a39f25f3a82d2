#include "polysat/interval.h"

#include <gtest/gtest.h>

#include <set>

using namespace polysat;

namespace {
BvVal v(unsigned w, uint64_t x) { return BvVal(w, x); }
WInterval I(unsigned w, uint64_t l, uint64_t h) { return WInterval(v(w, l), v(w, h)); }

// Members by the case split: [l;h[ for l <= h, [0;h[ u [l;2^w[ otherwise.
std::set<uint64_t> members(unsigned w, uint64_t l, uint64_t h) {
    std::set<uint64_t> s;
    uint64_t m = uint64_t(1) << w;
    if (l <= h) {
        for (uint64_t t = l; t < h; ++t)
            s.insert(t);
    } else {
        for (uint64_t t = 0; t < h; ++t)
            s.insert(t);
        for (uint64_t t = l; t < m; ++t)
            s.insert(t);
    }
    return s;
}
}

TEST(Intervals, ContainsExamples) {
    EXPECT_TRUE(I(3, 6, 2).contains(v(3, 7)));
    EXPECT_TRUE(I(3, 6, 2).contains(v(3, 0)));
    EXPECT_FALSE(I(3, 6, 2).contains(v(3, 3)));
    EXPECT_TRUE(I(4, 2, 5).contains(v(4, 3)));
    EXPECT_FALSE(I(4, 5, 5).contains(v(4, 5)));
    EXPECT_TRUE(WInterval::full(4).contains(v(4, 5)));
    EXPECT_THROW(I(4, 2, 5).contains(v(3, 3)), usage_error);
}

TEST(Intervals, LengthExamples) {
    EXPECT_EQ(I(4, 2, 5).length(), 3);
    EXPECT_EQ(I(3, 6, 2).length(), 4);
    EXPECT_EQ(WInterval::full(4).length(), 16);
}

TEST(Intervals, ForwardExamples) {
    EXPECT_EQ(forward(v(4, 3), I(4, 2, 5)), v(4, 5));
    EXPECT_EQ(forward(v(4, 7), I(4, 6, 2)), v(4, 2));
    EXPECT_EQ(forward(v(4, 0), I(4, 0, 8)), v(4, 8));
    EXPECT_THROW(forward(v(4, 0), WInterval::full(4)), usage_error);
}

TEST(Intervals, ExhaustiveMembershipAndLength) {
    for (unsigned w = 1; w <= 6; ++w) {
        uint64_t m = uint64_t(1) << w;
        for (uint64_t l = 0; l < m; ++l) {
            for (uint64_t h = 0; h < m; ++h) {
                WInterval J = I(w, l, h);
                auto s = members(w, l, h);
                for (uint64_t t = 0; t < m; ++t)
                    ASSERT_EQ(J.contains(v(w, t)), s.count(t) == 1) << w << " " << l << " " << h << " " << t;
                ASSERT_EQ(J.length(), bigint(s.size()));
            }
        }
    }
}

TEST(Intervals, ExhaustiveForward) {
    for (unsigned w = 1; w <= 5; ++w) {
        uint64_t m = uint64_t(1) << w;
        for (uint64_t l = 0; l < m; ++l) {
            for (uint64_t h = 0; h < m; ++h) {
                WInterval J = I(w, l, h);
                for (uint64_t x = 0; x < m; ++x) {
                    if (!J.contains(v(w, x)))
                        continue;
                    BvVal f = forward(v(w, x), J);
                    ASSERT_FALSE(J.contains(f));
                    for (uint64_t t = x; t % m != f.to_u64(); ++t)
                        ASSERT_TRUE(J.contains(v(w, t % m)));
                }
            }
        }
    }
}

TEST(Intervals, ExhaustiveSubsetAndComplement) {
    unsigned w = 3;
    uint64_t m = 8;
    for (uint64_t a = 0; a < m; ++a)
        for (uint64_t b = 0; b < m; ++b)
            for (uint64_t c = 0; c < m; ++c)
                for (uint64_t d = 0; d < m; ++d) {
                    auto sa = members(w, a, b), sc = members(w, c, d);
                    bool sub = std::includes(sa.begin(), sa.end(), sc.begin(), sc.end());
                    ASSERT_EQ(I(w, a, b).contains(I(w, c, d)), sub) << a << b << c << d;
                }
    for (uint64_t a = 0; a < m; ++a)
        for (uint64_t b = 0; b < m; ++b) {
            WInterval J = I(w, a, b), K = J.complement();
            for (uint64_t t = 0; t < m; ++t)
                ASSERT_NE(J.contains(v(w, t)), K.contains(v(w, t)));
        }
}
