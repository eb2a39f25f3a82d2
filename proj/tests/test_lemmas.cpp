#include "polysat/lemmas.h"
#include "support/template_check.h"

#include <gtest/gtest.h>

#include <random>

using namespace polysat;

namespace {

Poly V(unsigned w, Var x) { return Poly::var(w, x); }
Poly C(unsigned w, uint64_t v) { return Poly::constant(w, v); }

std::optional<LemmaClause> falsified_with(SignedConstraint const& t, Stage st, LemmaContext const& ctx, std::string const& rule) {
    for (auto& l : candidate_lemmas(t, st, ctx))
        if (l.rule == rule && is_falsified(l.lits, ctx))
            return l;
    return std::nullopt;
}

struct Ctx {
    Assignment gamma;
    std::vector<SignedConstraint> asserted;

    LemmaContext get() {
        return LemmaContext{gamma, asserted,
                            [this](SignedConstraint const& c) -> std::optional<bool> {
                                for (auto const& a : asserted) {
                                    if (a == c)
                                        return true;
                                    if (a == ~c)
                                        return false;
                                }
                                return c.eval(gamma);
                            },
                            nullptr};
    }
};

}

TEST(Lemmas, CeilSqrt) {
    EXPECT_EQ(ceil_sqrt_pow2(4), 4);
    EXPECT_EQ(ceil_sqrt_pow2(3), 3);
    EXPECT_EQ(ceil_sqrt_pow2(5), 6);
    EXPECT_EQ(ceil_sqrt_pow2(32), 65536);
}

TEST(Lemmas, TemplatesValidWidth3) {
    for (auto const& t : rule_templates()) {
        auto r = check::check_template(t, 3);
        EXPECT_FALSE(r.counterexample) << *r.counterexample;
        if (t.name.rfind("ovfl-", 0) == 0 || t.name.rfind("msb-", 0) == 0 || t.name.rfind("parity", 0) == 0) {
            EXPECT_GT(r.instances, 0u) << t.name;
        }
    }
}

TEST(Lemmas, TemplatesValidWidth4SmallArity) {
    for (auto const& t : rule_templates()) {
        if (t.arity > 4)
            continue;
        auto r = check::check_template(t, 4);
        EXPECT_FALSE(r.counterexample) << *r.counterexample;
    }
}

TEST(Lemmas, FloorSquareRootRowIsInvalid) {
    // With the floor of sqrt(2^3) = 2, p = q = 2 refutes the no-overflow bound.
    BvVal p(3, 2);
    EXPECT_FALSE(ovfl_mul(p, p));
    EXPECT_FALSE(ult(p, BvVal(3, 2)));
    EXPECT_TRUE(ult(p, BvVal::from_int(3, ceil_sqrt_pow2(3))));
}

TEST(Lemmas, OverflowRootExample) {
    unsigned w = 4;
    Ctx c;
    c.gamma.set(0, BvVal(w, 3));
    c.gamma.set(1, BvVal(w, 3));
    SignedConstraint o = cs::ovfl_mul(V(w, 0), V(w, 1));
    c.asserted = {o};
    auto l = find_lemma(o, Stage::saturation, c.get());
    ASSERT_TRUE(l);
    EXPECT_EQ(l->rule, "ovfl-4");
    EXPECT_NE(std::find(l->lits.begin(), l->lits.end(), cs::uge(V(w, 0), C(w, 4))), l->lits.end());
}

TEST(Lemmas, OverflowWidthOne) {
    Ctx c;
    c.gamma.set(0, BvVal(1, 1));
    c.gamma.set(1, BvVal(1, 1));
    SignedConstraint o = cs::ovfl_mul(V(1, 0), V(1, 1));
    EXPECT_TRUE(candidate_lemmas(o, Stage::saturation, c.get()).empty());
}

TEST(Lemmas, MulIneqFirstRow) {
    // p*x < q*x with p = 3, q = 2, x = 1 (no overflow): p >= q contradicts.
    unsigned w = 4;
    Ctx c;
    c.gamma.set(0, BvVal(w, 3));
    c.gamma.set(1, BvVal(w, 2));
    c.gamma.set(2, BvVal(w, 1));
    SignedConstraint v = cs::ult(V(w, 0) * V(w, 2), V(w, 1) * V(w, 2));
    c.asserted = {v};
    auto l = find_lemma(v, Stage::saturation, c.get());
    ASSERT_TRUE(l);
    EXPECT_EQ(l->rule, "mul-ineq-2");
}

TEST(Lemmas, MulIneqTransitivity) {
    // p <= x, q*x <= r with p*q > r.
    unsigned w = 4;
    Ctx c;
    c.gamma.set(0, BvVal(w, 2));  // p
    c.gamma.set(1, BvVal(w, 3));  // x
    c.gamma.set(2, BvVal(w, 2));  // q
    c.gamma.set(3, BvVal(w, 3));  // r
    SignedConstraint a = cs::ule(V(w, 0), V(w, 1));
    SignedConstraint b = cs::ule(V(w, 2) * V(w, 1), V(w, 3));
    c.asserted = {a, b};
    auto ctx = c.get();
    ASSERT_TRUE(find_lemma(b, Stage::saturation, ctx));
    auto l = falsified_with(b, Stage::saturation, ctx, "mul-ineq-11");
    ASSERT_TRUE(l);
    EXPECT_EQ(l->lits.back(), cs::ule(V(w, 0) * V(w, 2), V(w, 3)));
}

TEST(Lemmas, EliminationIntroExample) {
    unsigned w = 32;
    Poly x = V(w, 0), y = V(w, 1), z = V(w, 2);
    SignedConstraint e2 = cs::eq(C(w, 6), y * 2 + z);
    SignedConstraint e3 = cs::eq(C(w, 1), x * 3 + y * z * 6 + z * z * 3);
    Ctx c;
    c.gamma.set(0, BvVal(w, 0));
    c.gamma.set(1, -BvVal(w, 2));
    c.gamma.set(2, BvVal(w, 10));
    c.asserted = {e2, e3};
    ASSERT_EQ(e3.eval(c.gamma), false);
    auto l = find_lemma(e3, Stage::saturation, c.get());
    ASSERT_TRUE(l);
    EXPECT_EQ(l->rule, "eliminate");
    EXPECT_EQ(l->lits.back(), cs::eq(x * 6 + z * 36 - 2));
}

TEST(Lemmas, SubstitutionOddCoefficient) {
    unsigned w = 4;
    Poly x = V(w, 0), y = V(w, 1);
    SignedConstraint e = cs::eq(x * 3 + 1);
    SignedConstraint cy = cs::ult(x * y, C(w, 2));
    Clause cl = rules::substitute(e, BvVal(w, 3), C(w, 1), 0, cy);
    // x = -1/3 = 5 at w = 4
    EXPECT_EQ(cl.back(), cs::ult(y * 5, C(w, 2)));
    EXPECT_THROW(rules::substitute(e, BvVal(w, 2), C(w, 1), 0, cy), usage_error);
}

TEST(Lemmas, ParityZeroProduct) {
    unsigned w = 4;
    Poly p = V(w, 0), q = V(w, 1);
    Ctx c;
    c.gamma.set(0, BvVal(w, 2));
    c.gamma.set(1, BvVal(w, 4));
    SignedConstraint v = cs::eq(p * q);
    c.asserted = {v};
    auto l = falsified_with(v, Stage::saturation, c.get(), "parity-upper");
    ASSERT_TRUE(l);
    // parity(p) <= 1 forces parity(q) >= 3, i.e. 2q = 0.
    EXPECT_NE(std::find(l->lits.begin(), l->lits.end(), cs::eq(q * 2)), l->lits.end());
}

TEST(Lemmas, ParityOfProductExhaustive) {
    for (unsigned w = 1; w <= 5; ++w)
        for (uint64_t a = 0; a < (1u << w); ++a)
            for (uint64_t b = 0; b < (1u << w); ++b) {
                BvVal p(w, a), q(w, b);
                ASSERT_EQ(parity(p * q), std::min(w, parity(p) + parity(q)));
            }
}

TEST(Lemmas, LinearizationZero) {
    unsigned w = 4;
    Poly x = V(w, 0), y = V(w, 1);
    Ctx c;
    c.gamma.set(0, BvVal(w, 0));
    c.gamma.set(1, BvVal(w, 7));
    SignedConstraint v = cs::eq(x * y, C(w, 3));
    c.asserted = {v};
    auto l = find_lemma(v, Stage::linearization, c.get());
    ASSERT_TRUE(l);
    EXPECT_EQ(l->rule, "lin-zero");
    EXPECT_TRUE(l->lits.back().is_always_false() || l->lits.size() == 2);
}

TEST(Lemmas, AndZeroRule) {
    unsigned w = 4;
    Ctx c;
    c.gamma.set(0, BvVal(w, 3));  // x
    c.gamma.set(1, BvVal(w, 0));  // p
    c.gamma.set(2, BvVal(w, 5));  // q
    SignedConstraint s = cs::structural(Kind::eq_and, 0, V(w, 1), V(w, 2));
    c.asserted = {s};
    auto all = candidate_lemmas(s, Stage::bitblast, c.get());
    auto ctx = c.get();
    bool found = false;
    for (auto const& l : all)
        if (l.rule == "and-zero-p" && is_falsified(l.lits, ctx))
            found = true;
    EXPECT_TRUE(found);
    auto l = find_lemma(s, Stage::bitblast, ctx);
    ASSERT_TRUE(l);
    EXPECT_EQ(l->rule, "and-le-p");
}

TEST(Lemmas, LshrAmount) {
    unsigned w = 4;
    Ctx c;
    c.gamma.set(0, BvVal(w, 2));   // x
    c.gamma.set(1, BvVal(w, 13));  // p
    c.gamma.set(2, BvVal(w, 2));   // q
    SignedConstraint s = cs::structural(Kind::eq_lshr, 0, V(w, 1), V(w, 2));
    c.asserted = {s};
    auto l = find_lemma(s, Stage::bitblast, c.get());
    ASSERT_TRUE(l);
    EXPECT_EQ(l->rule, "lshr-amount[2]");
}

TEST(Lemmas, AshrSignRow) {
    unsigned w = 4;
    Ctx c;
    c.gamma.set(0, BvVal(w, 6));   // x, should be 14
    c.gamma.set(1, BvVal(w, 12));  // p
    c.gamma.set(2, BvVal(w, 1));   // q
    SignedConstraint s = cs::structural(Kind::eq_ashr, 0, V(w, 1), V(w, 2));
    c.asserted = {s};
    bool found = false;
    auto ctx = c.get();
    for (auto const& l : candidate_lemmas(s, Stage::bitblast, ctx))
        if (l.rule == "ashr-amount-neg[1]" && is_falsified(l.lits, ctx)) {
            found = true;
            EXPECT_NE(std::find(l.lits.begin(), l.lits.end(), cs::uge(V(w, 0), C(w, 12))), l.lits.end());
        }
    EXPECT_TRUE(found);
}

TEST(Lemmas, MsbSplitExamples) {
    unsigned w = 4;
    EXPECT_EQ(msb_index(BvVal(w, 4)) * 2, 6u);
    EXPECT_TRUE(ovfl_mul(BvVal(w, 4), BvVal(w, 4)));
    EXPECT_EQ(msb_index(BvVal(w, 3)) + msb_index(BvVal(w, 5)), w + 1);
    EXPECT_FALSE(ovfl_mul(BvVal(w, 3), BvVal(w, 5)));
    Ctx c;
    c.gamma.set(0, BvVal(w, 4));
    c.gamma.set(1, BvVal(w, 4));
    SignedConstraint o = ~cs::ovfl_mul(V(w, 0), V(w, 1));
    c.asserted = {o};
    auto l = find_lemma(o, Stage::bitblast, c.get());
    ASSERT_TRUE(l);
    EXPECT_EQ(l->rule, "msb-split-0");
}

TEST(Lemmas, FoundLemmasAreValidAndFalsified) {
    // Random violated triggers at w = 3; every returned clause must be valid.
    std::mt19937 rng(7);
    unsigned w = 3;
    size_t checked = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        Poly x = V(w, 0), y = V(w, 1), z = V(w, 2);
        std::vector<Poly> pool = {x, y, z, x * y, y * z, x * x, x * y + z, y * 3 + 1, C(w, rng() % 8)};
        auto pick = [&]() { return pool[rng() % pool.size()]; };
        std::vector<SignedConstraint> lits;
        for (int i = 0; i < 3; ++i) {
            switch (rng() % 5) {
            case 0: lits.push_back(cs::ule(pick(), pick())); break;
            case 1: lits.push_back(cs::ult(pick(), pick())); break;
            case 2: lits.push_back(cs::eq(pick(), pick())); break;
            case 3: lits.push_back(rng() % 2 ? cs::ovfl_mul(pick(), pick()) : ~cs::ovfl_mul(pick(), pick())); break;
            case 4: {
                Kind ks[] = {Kind::eq_and, Kind::eq_or, Kind::eq_shl, Kind::eq_lshr, Kind::eq_ashr};
                lits.push_back(cs::structural(ks[rng() % 5], 0, rng() % 2 ? y : y * z, z));
                break;
            }
            }
        }
        Ctx c;
        for (Var v = 0; v < 3; ++v)
            c.gamma.set(v, BvVal(w, rng() % 8));
        for (auto const& l : lits)
            if (!l.is_always_true() && !l.is_always_false())
                c.asserted.push_back(l);
        for (auto const& t : c.asserted) {
            if (t.eval(c.gamma) != false)
                continue;
            for (Stage st : {Stage::saturation, Stage::linearization, Stage::bitblast}) {
                auto l = find_lemma(t, st, c.get());
                if (!l)
                    continue;
                ++checked;
                for (uint64_t code = 0; code < 512; ++code) {
                    Assignment a;
                    for (Var v = 0; v < 3; ++v)
                        a.set(v, BvVal(w, (code >> (3 * v)) & 7));
                    bool sat = false;
                    for (auto const& lit : l->lits)
                        if (lit.eval(a) == true)
                            sat = true;
                    ASSERT_TRUE(sat) << l->to_string();
                }
            }
        }
    }
    EXPECT_GT(checked, 1000u);
}
