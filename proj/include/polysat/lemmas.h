// Lemma generation for non-linear conflicts: rule templates and trail matching.
#pragma once

#include "polysat/constraint.h"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polysat {

// Disjunction of literals.
using Clause = std::vector<SignedConstraint>;

struct LemmaClause {
    Clause lits;
    std::string rule;
    SignedConstraint trigger;

    std::string to_string(VarNamer const& names = default_var_name) const;
};

// Zero-extension by one bit: a polynomial of width w+1 whose value is that of p.
using ZextFn = std::function<Poly(Poly const&)>;

// Ceiling of the square root of 2^w.
bigint ceil_sqrt_pow2(unsigned w);

namespace rules {

// Multiplication and inequalities, rows 1..18.
//  1-5:  p*x < q*x        6-9:  p*x <= q*x         10: p*x + s <= q with r <= x
//  11-14: p (<|<=) x and q*x (<|<=) r               15-18: p (<|<=) q*x and x (<|<=) r
// Unused arguments are ignored.
Clause mul_ineq(unsigned row, Poly const& p, Poly const& q, Poly const& r, Poly const& s, Poly const& x);
constexpr unsigned mul_ineq_rows = 18;

// Overflow rows 1..5; row 2 needs zext.
Clause ovfl(unsigned row, Poly const& p, Poly const& q, Poly const& r, Poly const& s, ZextFn const& zext);
constexpr unsigned ovfl_rows = 5;

// a*x + b = 0 and c*x + d = 0 imply a*d - b*c = 0.
Clause eliminate(Poly const& a, Poly const& b, Poly const& c, Poly const& d, Poly const& x);
// a*x + b = 0 with a odd implies c[x := -b/a]. The premise eq is passed in as e.
Clause substitute(SignedConstraint const& e, BvVal const& a, Poly const& b, Var x, SignedConstraint const& c);

// prem <=> parity(p*q) >= n. parity(p) <= k and parity(q) < n - k contradict prem.
Clause parity_upper(SignedConstraint const& prem, Poly const& p, Poly const& q, unsigned k, unsigned n);
// prem <=> parity(p*q) >= min(w, a + b); follows from parity(p) >= a and parity(q) >= b.
Clause parity_lower(SignedConstraint const& prem, Poly const& p, Poly const& q, unsigned a, unsigned b);
// p*q = 1 implies p odd.
Clause parity_unit(Poly const& p, Poly const& q);
// p*q = q implies parity(p-1) + parity(q) >= w, instantiated at parity(p-1) <= k.
Clause parity_same(Poly const& p, Poly const& q, unsigned k);

// Value rules for p*q: 0, 1, -1, 2^k (k = 1..w-1).
enum class LinValue { zero, one, minus_one, pow2 };
Clause lin_value(LinValue v, Poly const& p, Poly const& q, unsigned k = 0);
// The value rules applied inside a constraint c containing p: c and p = n imply c[p := n].
Clause lin_rewrite(SignedConstraint const& c, Var p, BvVal const& n);
// p*q = 1 implies p = 1 or ovfl(p, q).
Clause lin_inverse(Poly const& p, Poly const& q);
// p*q = q implies p = 1 or q = 0 or ovfl(p, q).
Clause lin_same(Poly const& p, Poly const& q);

enum class BitOp { band, bor, shl, lshr, ashr };
// Clauses for x = op(p, q). Rule index per operator, see kRuleNames in the implementation;
// i is a bit index or shift amount where applicable.
std::vector<Clause> bitblast(BitOp op, unsigned rule, Var x, Poly const& p, Poly const& q, unsigned i);
unsigned bitblast_rule_count(BitOp op);
std::string bitblast_rule_name(BitOp op, unsigned rule);
// Whether the rule takes an index in [lo, w).
bool bitblast_indexed(BitOp op, unsigned rule, unsigned& lo);

// Product expanded at a fixed multiplier value: p = n implies p*q = n*q.
Clause product_row(Poly const& p, Poly const& q, BvVal const& n);

// Msb split. Rows: 0 (i+j >= w+2), 1 (i+j <= w), 2 (i+j = w+1, two clauses, needs zext).
std::vector<Clause> msb_split(unsigned row, Poly const& p, Poly const& q, unsigned i, unsigned j, ZextFn const& zext);

}

// Enumerable description of every rule for validity checking.
struct RuleTemplate {
    std::string name;
    unsigned arity;
    // Parameter tuples valid at width w.
    std::function<std::vector<std::vector<unsigned>>(unsigned)> params;
    std::function<std::vector<Clause>(std::vector<Poly> const&, std::vector<unsigned> const&, ZextFn const&)> build;
};
std::vector<RuleTemplate> const& rule_templates();

enum class Stage { saturation, linearization, bitblast };
char const* stage_name(Stage s);

struct LemmaContext {
    Assignment const& gamma;
    // Constraint literals currently true on the trail.
    std::vector<SignedConstraint> const& asserted;
    // Trail value if the literal is assigned, else its evaluation under gamma.
    std::function<std::optional<bool>(SignedConstraint const&)> value;
    // Optional veto, e.g. for term-depth limits.
    std::function<bool(LemmaClause const&)> accept;
};

// Whether every literal of the clause is false in ctx.
bool is_falsified(Clause const& c, LemmaContext const& ctx);

// First falsified clause of the stage triggered by a violated literal: true on the trail, false under gamma.
std::optional<LemmaClause> find_lemma(SignedConstraint const& violated, Stage stage, LemmaContext const& ctx);

// All candidate clauses of a stage, falsified or not, in rule order.
std::vector<LemmaClause> candidate_lemmas(SignedConstraint const& violated, Stage stage, LemmaContext const& ctx);

}
