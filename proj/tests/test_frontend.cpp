#include "polysat/frontend.h"

#include "support/random_smt.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace polysat;
using namespace polysat::smt;

namespace {

std::string slurp(std::filesystem::path const& p) {
    std::ifstream in(p);
    std::stringstream b;
    b << in.rdbuf();
    return b.str();
}

std::vector<TermRef> assertions(Script const& s) {
    std::vector<TermRef> r;
    for (auto const& c : s.commands)
        if (c.kind == Command::assert_)
            r.push_back(c.term);
    return r;
}

std::string run(std::string const& text, RunOptions opts = RunOptions()) {
    std::ostringstream out;
    run_script(parse(text), opts, out);
    return out.str();
}

void expect_error(std::string const& text, unsigned line, unsigned col, std::string const& fragment) {
    try {
        parse(text);
        FAIL() << "no error for " << text;
    } catch (input_error const& e) {
        EXPECT_EQ(e.line, line) << e.what();
        EXPECT_EQ(e.col, col) << e.what();
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}

TEST(Frontend, ReaderTracksPositions) {
    auto es = read_sexprs("; c\n(a (b c))\n  d");
    ASSERT_EQ(es.size(), 2u);
    EXPECT_EQ(es[0].line, 2u);
    EXPECT_EQ(es[0].items[1].col, 4u);
    EXPECT_EQ(es[1].atom, "d");
    EXPECT_EQ(es[1].col, 3u);
}

TEST(Frontend, Literals) {
    auto s = parse("(declare-const x (_ BitVec 4))(assert (= x (_ bv5 4)))(assert (= x #b0101))(assert (= x #x5))");
    auto as = assertions(s);
    ASSERT_EQ(as.size(), 3u);
    for (auto const& a : as) {
        EXPECT_EQ(a->args[1]->op, Op::bv_const);
        EXPECT_EQ(a->args[1]->value, BvVal(4, 5));
    }
}

TEST(Frontend, UltReducesToNegatedUle) {
    auto s = parse("(declare-const x (_ BitVec 4))(declare-const y (_ BitVec 4))(assert (bvult x y))");
    Solver solver;
    internalize(s.decls, assertions(s), solver);
    Poly x = Poly::var(4, 0), y = Poly::var(4, 1);
    EXPECT_EQ(solver.lit(cs::ult(x, y)), solver.lit(~cs::ule(y, x)));
}

TEST(Frontend, AndBecomesStructural) {
    auto s = parse("(declare-const x (_ BitVec 4))(declare-const p (_ BitVec 4))(declare-const q (_ BitVec 4))"
                   "(assert (= x (bvand p q)))");
    Solver solver;
    internalize(s.decls, assertions(s), solver);
    ASSERT_EQ(solver.num_vars(), 4u);
    auto l = solver.lit(cs::structural(Kind::eq_and, 3, Poly::var(4, 1), Poly::var(4, 2)));
    EXPECT_EQ(solver.solve(), Verdict::sat);
    EXPECT_TRUE(solver.model_lit(l));
}

TEST(Frontend, Errors) {
    expect_error("(assert (bvadd x", 1, 9, "unbalanced");
    expect_error("(declare-const x (_ BitVec 4))\n(assert (bvxor x x))", 2, 10, "bvxor");
    expect_error("(declare-const x (_ BitVec 4))\n(assert (= x y))", 2, 14, "unknown symbol");
    expect_error("(declare-const x (_ BitVec 4))\n(assert (= x #b01))", 2, 14, "sort mismatch");
    expect_error("(declare-fun f ((_ BitVec 4)) (_ BitVec 4))", 1, 16, "declare-fun with arguments");
    expect_error("(push 1)", 1, 2, "unsupported command 'push'");
    expect_error("(declare-const x (_ BitVec 0))", 1, 28, "positive");
    expect_error("(declare-const x Real)", 1, 18, "unsupported sort");
    expect_error("(assert (= 1 1))", 1, 12, "untyped numeral");
    expect_error(")", 1, 1, "unexpected ')'");
}

TEST(Frontend, ModelFormat) {
    EXPECT_EQ(format_value(BvVal(4, 5)), "#x5");
    EXPECT_EQ(format_value(BvVal(8, 0x3c)), "#x3c");
    EXPECT_EQ(format_value(BvVal(3, 5)), "#b101");
    EXPECT_EQ(run("(declare-const x (_ BitVec 4))(assert (= x (_ bv5 4)))(check-sat)(get-model)"),
              "sat\n(model\n  (define-fun x () (_ BitVec 4) #x5)\n)\n");
}

TEST(Frontend, OracleDivisionByZero) {
    auto s = parse("(declare-const q (_ BitVec 4))(assert (= q (bvudiv (_ bv5 4) #x0)))");
    auto r = oracle_solve(s.decls, assertions(s));
    ASSERT_EQ(r.verdict, Verdict::sat);
    EXPECT_EQ(r.model.at("q").v, BvVal(4, 15));
}

TEST(Frontend, OracleRefusesWideInput) {
    auto s = parse("(declare-const x (_ BitVec 16))(declare-const y (_ BitVec 16))(assert (= x y))");
    EXPECT_THROW(oracle_solve(s.decls, assertions(s)), std::runtime_error);
    EXPECT_EQ(oracle_solve(s.decls, assertions(s), 32).verdict, Verdict::sat);
}

TEST(Frontend, OracleAsymmetry) {
    auto s = parse("(declare-const x (_ BitVec 4))(declare-const y (_ BitVec 4))(assert (bvult x y))(assert (bvult y x))");
    EXPECT_EQ(oracle_solve(s.decls, assertions(s)).verdict, Verdict::unsat);
}

TEST(Frontend, BooleanStructure) {
    std::string base = "(declare-const p Bool)(declare-const q Bool)(declare-const x (_ BitVec 2))";
    EXPECT_EQ(run(base + "(assert (= p (not q)))(assert (=> p (= x #b11)))(assert (ite q false (bvult x #b11)))(check-sat)"),
              "unsat\n");
    EXPECT_EQ(run(base + "(assert (distinct p q))(assert (or p (= x #b10)))(assert (not p))(check-sat)(get-model)"),
              "sat\n(model\n  (define-fun p () Bool false)\n  (define-fun q () Bool true)\n"
              "  (define-fun x () (_ BitVec 2) #b10)\n)\n");
}

TEST(Frontend, ChainedEqualityAndDistinct) {
    std::string base = "(declare-const a (_ BitVec 2))(declare-const b (_ BitVec 2))(declare-const c (_ BitVec 2))";
    EXPECT_EQ(run(base + "(assert (= a b c))(assert (distinct a c))(check-sat)"), "unsat\n");
    EXPECT_EQ(run(base + "(assert (distinct a b c))(assert (bvult a #b01))(check-sat)"), "sat\n");
}

TEST(Frontend, RepeatedCheckSat) {
    std::string text = "(declare-const x (_ BitVec 3))(assert (bvugt x #b101))(check-sat)"
                       "(assert (bvult x #b110))(check-sat)(exit)(check-sat)";
    EXPECT_EQ(run(text), "sat\nunsat\n");
}

TEST(Frontend, CorpusRoundTripAndOracleAgreement) {
    std::filesystem::path dir = std::filesystem::path(POLYSAT_CORPUS_DIR);
    size_t n = 0;
    for (auto const& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".smt2")
            continue;
        ++n;
        std::string text = slurp(entry.path());
        Script s1 = parse(text);
        std::string p1 = print(s1);
        EXPECT_EQ(print(parse(p1)), p1) << entry.path();

        unsigned bits = 0;
        for (auto const& d : s1.decls)
            bits += d.sort.is_bool() ? 1 : d.sort.width;
        if (bits > 24)
            continue;
        RunOptions o;
        o.oracle = true;
        std::string expect = run(text, o);
        std::string got = run(text);
        EXPECT_EQ(got.substr(0, got.find('\n')), expect.substr(0, expect.find('\n'))) << entry.path();
    }
    EXPECT_GE(n, 8u);
}

TEST(Frontend, RandomScriptsMatchOracle) {
    std::mt19937_64 rng(11);
    size_t sat = 0, unsat = 0;
    for (int iter = 0; iter < 500; ++iter) {
        unsigned w = 1 + rng() % 4, nv = 1 + rng() % 3, nc = 1 + rng() % 5;
        std::string text = check::RandomScript(rng, w, nv).script(nc);
        Script s = parse(text);
        auto as = assertions(s);
        auto expect = oracle_solve(s.decls, as);
        Solver solver;
        Symbols syms = internalize(s.decls, as, solver);
        Verdict got = solver.solve();
        ASSERT_EQ(got, expect.verdict) << text;
        if (got == Verdict::sat) {
            ++sat;
            Env env = model_env(s.decls, syms, solver);
            for (auto const& a : as)
                ASSERT_TRUE(eval(a, env).b) << text;
        } else {
            ++unsat;
        }
    }
    EXPECT_GT(sat, 50u);
    EXPECT_GT(unsat, 50u);
}
