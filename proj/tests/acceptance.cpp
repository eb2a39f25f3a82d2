// Acceptance run: one PASS/FAIL line per criterion.
#include "polysat/fi.h"
#include "polysat/frontend.h"
#include "polysat/lemmas.h"
#include "polysat/solver.h"
#include "support/random_smt.h"
#include "support/template_check.h"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace polysat;

namespace {

struct Outcome {
    enum Kind { pass, fail, not_applicable } kind;
    std::string detail;
};

Outcome ok(std::string d) { return {Outcome::pass, std::move(d)}; }
Outcome bad(std::string d) { return {Outcome::fail, std::move(d)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
    std::ostringstream o;
    o.precision(3);
    o << s << "s";
    return o.str();
}

// 1. The four-constraint system at w = 8 and w = 32.
Outcome intro_example() {
    std::string detail;
    for (auto [w, limit] : {std::pair<unsigned, double>{8, 5}, {32, 60}}) {
        auto c = [w = w](uint64_t v) { return "(_ bv" + std::to_string(v) + " " + std::to_string(w) + ")"; };
        std::string ws = std::to_string(w);
        std::string text = "(declare-fun x () (_ BitVec " + ws + "))(declare-fun y () (_ BitVec " + ws +
                           "))(declare-fun z () (_ BitVec " + ws + "))" + "(assert (bvugt (bvadd (bvmul x y) y) (bvadd y " +
                           c(3) + ")))" + "(assert (= " + c(6) + " (bvadd (bvmul " + c(2) + " y) z)))" + "(assert (= " +
                           c(1) + " (bvadd (bvmul " + c(3) + " x) (bvmul " + c(6) + " y z) (bvmul " + c(3) + " z z))))" +
                           "(assert (= " + c(0) + " (bvand (bvadd (bvmul " + c(2) + " y) " + c(1) + ") x)))(check-sat)";
        auto t0 = std::chrono::steady_clock::now();
        smt::RunOptions o;
        o.timeout = limit;
        std::ostringstream out;
        smt::run_script(smt::parse(text), o, out);
        double dt = seconds_since(t0);
        detail += (detail.empty() ? "" : ", ") + std::string("w=") + ws + " " + out.str().substr(0, out.str().size() - 1) +
                  " in " + fmt(dt);
        if (out.str() != "unsat\n" || dt > limit)
            return bad(detail);
    }
    return ok(detail);
}

// 2. Random systems against exhaustive enumeration.
Outcome differential() {
    std::mt19937_64 rng(2024);
    size_t sat = 0, unsat = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (int iter = 0; iter < 10000; ++iter) {
        unsigned w = 1 + rng() % 4, nv = 1 + rng() % 3, nc = 1 + rng() % 5;
        std::string text = check::RandomScript(rng, w, nv).script(nc);
        smt::Script s = smt::parse(text);
        std::vector<smt::TermRef> as;
        for (auto const& c : s.commands)
            if (c.kind == smt::Command::assert_)
                as.push_back(c.term);
        auto expect = smt::oracle_solve(s.decls, as);
        Solver solver;
        auto syms = smt::internalize(s.decls, as, solver);
        Verdict got = solver.solve();
        if (got != expect.verdict)
            return bad("instance " + std::to_string(iter) + " solver " + verdict_name(got) + " oracle " +
                       verdict_name(expect.verdict) + "\n" + text);
        if (got == Verdict::sat) {
            ++sat;
            auto env = smt::model_env(s.decls, syms, solver);
            for (auto const& a : as)
                if (!smt::eval(a, env).b)
                    return bad("model fails instance " + std::to_string(iter));
        } else {
            ++unsat;
        }
    }
    return ok("10000 instances, " + std::to_string(sat) + " sat, " + std::to_string(unsat) + " unsat, all agree, " +
              fmt(seconds_since(t0)));
}

// 3. Every value in an extracted interval falsifies the source under its side conditions.
Outcome interval_soundness() {
    unsigned const w = 8;
    Var const X = 0, Y = 1, Z = 2;
    std::mt19937_64 rng(33);
    auto cst = [&](uint64_t v) { return Poly::constant(w, v); };
    auto rnd = [&]() { return cst(rng() % 256); };
    Poly x = Poly::var(w, X), y = Poly::var(w, Y), z = Poly::var(w, Z);
    auto side_poly = [&]() {
        switch (rng() % 5) {
        case 0:
            return rnd();
        case 1:
            return y;
        case 2:
            return y * z + rnd();
        case 3:
            return y * 3 + z;
        default:
            return rnd() * y;
        }
    };
    auto coeff = [&]() {
        switch (rng() % 6) {
        case 0:
            return cst(1);
        case 1:
            return cst(255);
        case 2:
            return cst(uint64_t(1) << (rng() % 8));
        case 3:
            return y;
        default:
            return rnd();
        }
    };
    auto random_constraint = [&]() -> SignedConstraint {
        Poly lhs = coeff() * x + side_poly();
        Poly rhs = rng() % 3 == 0 ? side_poly() : coeff() * x + side_poly();
        bool pos = rng() % 2;
        switch (rng() % 5) {
        case 0:
            return SignedConstraint(Constraint(Kind::ule, lhs, rhs), pos);
        case 1:
            return pos ? cs::eq(lhs, rhs) : cs::ne(lhs, rhs);
        case 2:
            return SignedConstraint(Constraint(Kind::ovfl_mul, lhs, rng() % 2 ? y : rnd()), pos);
        case 3:
            return pos ? cs::slt(lhs, rhs) : cs::sle(lhs, rhs);
        default:
            return pos ? cs::ule(lhs, rhs) : cs::ult(lhs, rhs);
        }
    };
    size_t produced = 0, checked_values = 0, alt = 0;
    auto t0 = std::chrono::steady_clock::now();
    size_t attempts = 0;
    while (produced < 100000) {
        if (++attempts > 5000000)
            return bad("only " + std::to_string(produced) + " intervals produced");
        SignedConstraint c = random_constraint();
        if (c.is_always_true() || c.is_always_false() || !c.constraint().contains(X))
            continue;
        Assignment g;
        g.set(Y, BvVal(w, rng() % 256));
        g.set(Z, BvVal(w, rng() % 256));
        BvVal x0(w, rng() % 256);
        Assignment gx = g;
        gx.set(X, x0);
        if (*c.eval(gx))
            continue;
        auto e = extract_interval(X, c, g, x0);
        if (!e)
            continue;
        ++produced;
        for (auto const& s : e->side)
            if (!*s.eval(g))
                return bad("side condition false on its own trail: " + s.to_string());
        auto check_under = [&](Assignment const& h) -> bool {
            WInterval I = e->interval;
            if (e->lo_sym)
                I = WInterval(*e->lo_sym->value(h), *e->hi_sym->value(h));
            for (uint64_t t = 0; t < 256; ++t) {
                if (!I.contains(BvVal::from_int(e->bits, t & ((uint64_t(1) << e->bits) - 1))))
                    continue;
                Assignment hx = h;
                hx.set(X, BvVal(w, t));
                ++checked_values;
                if (*c.eval(hx))
                    return false;
            }
            return true;
        };
        if (!e->interval.contains(BvVal::from_int(e->bits, x0.to_int() & ((bigint(1) << e->bits) - 1))))
            return bad("sample point not covered by " + e->to_string());
        if (!check_under(g))
            return bad(c.to_string() + " admitted inside " + e->to_string());
        // Other trails on which the side conditions also hold.
        for (int k = 0; k < 3; ++k) {
            Assignment h;
            h.set(Y, BvVal(w, rng() % 256));
            h.set(Z, BvVal(w, rng() % 256));
            bool sides = true;
            for (auto const& s : e->side)
                sides = sides && *s.eval(h);
            if (!sides)
                continue;
            ++alt;
            if (!check_under(h))
                return bad(c.to_string() + " admitted inside " + e->to_string() + " on another trail");
        }
    }
    return ok(std::to_string(produced) + " triples, " + std::to_string(alt) + " re-checked on other trails, " +
              std::to_string(checked_values) + " values, 0 violations, " + fmt(seconds_since(t0)));
}

// 4. Different-coefficient bounds at w = 4.
Outcome delta_fidelity() {
    unsigned const w = 4;
    bigint const M = 16;
    auto formula = [&](bigint p, bigint r, bigint a, bigint b, bigint x0, bigint num) {
        bigint dh = std::min(bigint(M - x0), ceil_div(M - a, p));
        if (r > p)
            dh = std::min(dh, ceil_div(num, r - p));
        bigint dl = std::min(bigint(x0 + 1), ceil_div(b + 1, r));
        if (p > r)
            dl = std::min(dl, ceil_div(num, p - r));
        return Deltas{dh - 1, dl - 1};
    };
    size_t cases = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (uint64_t p = 1; p < 16; ++p)
        for (uint64_t r = 1; r < 16; ++r) {
            if (p == r)
                continue;
            for (uint64_t q = 0; q < 16; ++q)
                for (uint64_t s = 0; s < 16; ++s)
                    for (uint64_t x0 = 0; x0 < 16; ++x0)
                        for (bool strict : {false, true}) {
                            uint64_t a = (p * x0 + q) % 16, b = (r * x0 + s) % 16;
                            if (strict ? a < b : a <= b)
                                continue;
                            ++cases;
                            BvVal P(w, p), Q(w, q), R(w, r), S(w, s), X0(w, x0);
                            auto res = from_diff_coeffs(P, Q, R, S, X0, strict);
                            if (res.lo > x0 || res.hi < x0 || res.lo < 0 || res.hi >= M)
                                return bad("range misses x0");
                            for (bigint x = res.lo; x <= res.hi; ++x) {
                                uint64_t xv = static_cast<uint64_t>(x);
                                uint64_t ax = (p * xv + q) % 16, bx = (r * xv + s) % 16;
                                if (strict ? ax < bx : ax <= bx)
                                    return bad("non-violating point inside range");
                            }
                            auto d = diff_coeff_deltas(P, Q, R, S, X0, strict, false, false);
                            auto want = formula(p, r, a, b, x0, bigint(a) - b + (strict ? 1 : 0));
                            if (d.dh != want.dh || d.dl != want.dl)
                                return bad("base embedding differs from the formulas");
                            // Strict variant is the non-strict formula with a-b replaced by a-b+1.
                            if (strict) {
                                auto subst = formula(p, r, a, b, x0, bigint(a) - b + 1);
                                auto plain = formula(p, r, a, b, x0, bigint(a) - b);
                                if (a > b) {
                                    auto nonstrict = diff_coeff_deltas(P, Q, R, S, X0, false, false, false);
                                    if (nonstrict.dh != plain.dh || nonstrict.dl != plain.dl)
                                        return bad("non-strict bound differs");
                                }
                                if (d.dh != subst.dh || d.dl != subst.dl)
                                    return bad("strict bound differs");
                            }
                            if (res.lo > x0 - d.dl || res.hi < x0 + d.dh)
                                return bad("returned range narrower than the base bound");
                        }
        }
    return ok(std::to_string(cases) + " cases exhaustive, " + fmt(seconds_since(t0)));
}

bool in_closed(bigint v, bigint const& l, bigint const& h, bigint const& m) {
    v = mod(v, m);
    return (v >= l && v <= h) || (v - m >= l && v - m <= h);
}

// 5. Drift procedure for general coefficients.
Outcome drift() {
    size_t cases = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (unsigned w : {3u, 4u, 5u}) {
        int64_t m = int64_t(1) << w;
        bigint M = m;
        for (int64_t a = 1; a < m; ++a)
            for (int64_t l = -m + 1; l < m; ++l)
                for (int64_t h = l; h < m && h - l + 1 < m; ++h)
                    for (int64_t x0 = 0; x0 < m; ++x0) {
                        if (!in_closed(bigint(a * x0), l, h, M))
                            continue;
                        ++cases;
                        BvVal A = BvVal::from_int(w, a), X0 = BvVal::from_int(w, x0);
                        auto r = from_general_coeff(A, X0, l, h);
                        auto core = general_coeff_core(A, X0, l, h);
                        bool everywhere = true;
                        for (int64_t x = 0; x < m && everywhere; ++x)
                            everywhere = in_closed(bigint(a * x), l, h, M);
                        if (!r) {
                            if (!everywhere)
                                return bad("full domain claimed without cause");
                            continue;
                        }
                        if (r->lo > core.lo || r->hi < core.hi)
                            return bad("narrower than the core interval");
                        if (r->lo > x0 || r->hi < x0 || r->hi - r->lo + 1 >= M)
                            return bad("range malformed");
                        for (bigint x = r->lo; x <= r->hi; ++x)
                            if (!in_closed(a * x, l, h, M))
                                return bad("unsound drift range");
                        auto down = drift_upper(a, -bigint(x0), -h, -l, M);
                        if (!down || r->lo != -*down)
                            return bad("mirror identity fails");
                    }
    }
    return ok(std::to_string(cases) + " cases over m in {8,16,32}, " + fmt(seconds_since(t0)));
}

// 6. Projection chain.
Outcome projection_chain() {
    WInterval I64(BvVal::from_int(64, 300007), BvVal::zero(64));
    auto low32 = project_lower_fixed(I64, 32, BvVal::zero(32));
    if (low32.kind != Projection::interval)
        return bad("no interval for the low 32 bits");
    auto top24 = project_upper(low32.forbidden, 8);
    if (top24.kind != Projection::interval)
        return bad("no interval for y ++ z[15:8]");
    auto y = project_upper_fixed(top24.forbidden, 8, BvVal(8, 123));
    if (y.kind != Projection::interval || y.forbidden != WInterval(BvVal(16, 5), BvVal(16, 0)))
        return bad("final interval differs");
    std::string chain = low32.forbidden.to_string() + " -> " + top24.forbidden.to_string() + " -> y not in " +
                        y.forbidden.to_string();

    // Same three steps at scaled widths, each checked by enumeration.
    std::mt19937_64 rng(6);
    size_t steps = 0;
    auto allowed = [](WInterval const& I, unsigned v, bool upper, std::optional<uint64_t> other) {
        std::set<uint64_t> r;
        unsigned u = I.width() - v;
        for (uint64_t hi = 0; hi < (uint64_t(1) << u); ++hi)
            for (uint64_t lo = 0; lo < (uint64_t(1) << v); ++lo) {
                if (other && *other != (upper ? lo : hi))
                    continue;
                if (!I.contains(BvVal::from_int(I.width(), (hi << v) | lo)))
                    r.insert(upper ? hi : lo);
            }
        return r;
    };
    auto sound = [&](Projection const& p, std::set<uint64_t> const& ok_vals, unsigned bits) {
        ++steps;
        if (p.kind == Projection::contradiction)
            return ok_vals.empty();
        if (p.kind == Projection::none)
            return true;
        for (uint64_t t = 0; t < (uint64_t(1) << bits); ++t)
            if (p.forbidden.contains(BvVal::from_int(bits, t)) && ok_vals.count(t))
                return false;
        return true;
    };
    for (int it = 0; it < 20000; ++it) {
        unsigned total = 4 + rng() % 7;
        unsigned v = 1 + rng() % (total - 1);
        uint64_t M = uint64_t(1) << total;
        WInterval I(BvVal(total, rng() % M), BvVal(total, rng() % M));
        if (I.is_empty())
            continue;
        uint64_t zfix = rng() % (uint64_t(1) << v);
        uint64_t yfix = rng() % (uint64_t(1) << (total - v));
        if (!sound(project_lower_fixed(I, v, BvVal(total - v, yfix)), allowed(I, v, false, yfix), v) ||
            !sound(project_upper(I, v), allowed(I, v, true, {}), total - v) ||
            !sound(project_upper_fixed(I, v, BvVal(v, zfix)), allowed(I, v, true, zfix), total - v) ||
            !sound(project_lower(I, v), allowed(I, v, false, {}), v))
            return bad("unsound projection at width " + std::to_string(total) + " split " + std::to_string(v));
    }
    return ok(chain + "; " + std::to_string(steps) + " scaled steps sound");
}

// 7. Lemma templates at w = 3 and w = 4.
Outcome lemma_validity() {
    size_t templates = 0, instances = 0, evaluations = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (unsigned w : {3u, 4u})
        for (auto const& t : rule_templates()) {
            auto r = check::check_template(t, w);
            if (r.counterexample)
                return bad("w=" + std::to_string(w) + ": " + *r.counterexample);
            ++templates;
            instances += r.instances;
            evaluations += r.evaluations;
        }
    return ok(std::to_string(templates) + " template runs, " + std::to_string(instances) + " instances, " +
              std::to_string(evaluations) + " clause evaluations, 0 counterexamples, " + fmt(seconds_since(t0)));
}

// 8. Canonical forms of p = 0.
Outcome normalization() {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 1000; ++it) {
        unsigned w = 1 + rng() % 16;
        Poly p = Poly::constant(w, rng());
        unsigned nt = 1 + rng() % 3;
        for (unsigned i = 0; i < nt; ++i) {
            Poly m = Poly(BvVal::from_int(w, bigint(rng() % (uint64_t(1) << std::min(w, 20u)))));
            unsigned deg = 1 + rng() % 2;
            for (unsigned d = 0; d < deg; ++d)
                m = m * Poly::var(w, static_cast<Var>(rng() % 3));
            p = p + m;
        }
        auto a = normalize(SignedConstraint(Constraint(Kind::ule, p, Poly::constant(w, 0)), true));
        auto b = normalize(SignedConstraint(Constraint(Kind::ule, Poly::constant(w, 1), p), false));
        auto c = normalize(SignedConstraint(Constraint(Kind::ule, Poly(BvVal::max(w)), p - 1), true));
        if (!(a == b && a == c))
            return bad("forms differ for " + p.to_string() + " at w=" + std::to_string(w) + ": " + a.to_string() + " / " +
                       b.to_string() + " / " + c.to_string());
    }
    return ok("1000 random polynomials, identical canonical constraints");
}

// 9. Division axioms at w = 4.
Outcome division() {
    unsigned const w = 4;
    Var const X = 0, Y = 1, Q = 2, R = 3;
    auto ax = axiomatize_udiv(Poly::var(w, X), Poly::var(w, Y), Q, R);
    if (ax.clauses.size() != 5)
        return bad("expected five axioms");
    size_t zero_rows = 0;
    for (uint64_t x = 0; x < 16; ++x)
        for (uint64_t y = 0; y < 16; ++y) {
            std::vector<std::pair<uint64_t, uint64_t>> models;
            for (uint64_t q = 0; q < 16; ++q)
                for (uint64_t r = 0; r < 16; ++r) {
                    Assignment g;
                    g.set(X, BvVal(w, x));
                    g.set(Y, BvVal(w, y));
                    g.set(Q, BvVal(w, q));
                    g.set(R, BvVal(w, r));
                    bool all = true;
                    for (auto const& cl : ax.clauses) {
                        bool any = false;
                        for (auto const& l : cl)
                            any = any || *l.eval(g);
                        all = all && any;
                    }
                    if (all)
                        models.emplace_back(q, r);
                }
            BvVal qv = udiv(BvVal(w, x), BvVal(w, y)), rv = urem(BvVal(w, x), BvVal(w, y));
            if (models.size() != 1 || models[0].first != qv.to_u64() || models[0].second != rv.to_u64())
                return bad("x=" + std::to_string(x) + " y=" + std::to_string(y) + ": " + std::to_string(models.size()) +
                           " models");
            if (y == 0) {
                ++zero_rows;
                if (models[0].first != 15)
                    return bad("division by zero is not all ones");
            }
        }
    return ok("256 pairs, unique model each, " + std::to_string(zero_rows) + " zero-divisor rows give q=15");
}

}

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"end-to-end example", intro_example},
        {"differential correctness", differential},
        {"interval extraction soundness", interval_soundness},
        {"different-coefficient bounds", delta_fidelity},
        {"general-coefficient drift", drift},
        {"projection chain", projection_chain},
        {"lemma validity", lemma_validity},
        {"normalization", normalization},
        {"division axioms", division},
        {"comparative benchmarks", [] {
             return Outcome{Outcome::not_applicable, "external solvers and cluster hardware, out of scope"};
         }},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (std::exception const& e) {
            o = bad(std::string("exception: ") + e.what());
        }
        char const* tag = o.kind == Outcome::pass ? "PASS" : o.kind == Outcome::fail ? "FAIL" : "N/A";
        if (o.kind == Outcome::fail)
            ++failures;
        std::cout << "criterion " << (i + 1) << " " << tag << " " << criteria[i].first << ": " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
