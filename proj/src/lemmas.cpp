#include "polysat/lemmas.h"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <sstream>

namespace polysat {
using rules::BitOp;

std::string LemmaClause::to_string(VarNamer const& names) const {
    std::ostringstream out;
    out << rule << ": ";
    for (size_t i = 0; i < lits.size(); ++i)
        out << (i ? " | " : "") << lits[i].to_string(names);
    return out.str();
}

bigint ceil_sqrt_pow2(unsigned w) {
    bigint m = bigint(1) << w;
    bigint s = boost::multiprecision::sqrt(m);
    if (s * s < m)
        s += 1;
    return s;
}

namespace {

Poly cst(unsigned w, bigint const& v) { return Poly::constant(w, v); }
Poly cst(unsigned w, uint64_t v) { return Poly::constant(w, v); }

SignedConstraint subst_lit(SignedConstraint const& c, Var x, Poly const& v) {
    Constraint const& k = c.constraint();
    if (is_structural(k.kind())) {
        if (k.x() == x)
            throw usage_error("cannot substitute the result variable of a structural constraint");
        return SignedConstraint(Constraint(k.kind(), k.p().subst(x, v), k.q().subst(x, v), k.x()), c.is_positive());
    }
    return normalize(SignedConstraint(Constraint(k.kind(), k.p().subst(x, v), k.q().subst(x, v)), c.is_positive()));
}

}

namespace rules {

Clause mul_ineq(unsigned row, Poly const& p, Poly const& q, Poly const& r, Poly const& s, Poly const& x) {
    using namespace cs;
    Poly px = p * x, qx = q * x;
    switch (row) {
    case 1: return {~ult(px, qx), ne(p, q)};
    case 2: return {~ult(px, qx), ovfl_mul(p, x), ult(p, q)};
    case 3: return {~ult(px, qx), ovfl_mul(-q, x), ult(p, q)};
    case 4: return {~ult(px, qx), ovfl_mul(q, -x), ugt(p, q), eq(p)};
    case 5: return {~ult(px, qx), ovfl_mul(-p, -x), ugt(p, q), eq(p)};
    case 6: return {~ule(px, qx), ovfl_mul(p, x), ule(p, q), eq(x)};
    case 7: return {~ule(px, qx), ovfl_mul(-q, x), ule(p, q), eq(x), eq(q)};
    case 8: return {~ule(px, qx), ovfl_mul(q, -x), uge(p, q), eq(x), eq(p)};
    case 9: return {~ule(px, qx), ovfl_mul(-p, -x), uge(p, q), eq(x), eq(p)};
    case 10: return {~ule(px + s, q), ovfl_mul(p, x), ovfl_add(px, s), ule(p * r, q), ult(x, r)};
    case 11: return {~ule(p, x), ~ule(qx, r), ovfl_mul(q, x), ule(p * q, r)};
    case 12: return {~ule(p, x), ~ult(qx, r), ovfl_mul(q, x), ult(p * q, r)};
    case 13: return {~ult(p, x), ~ule(qx, r), ovfl_mul(q, x), ult(p * q, r), eq(q)};
    case 14: return {~ult(p, x), ~ule(qx, r), ovfl_mul(q, x), ult(p * q, r), eq(r)};
    case 15: return {~ule(p, qx), ~ule(x, r), ovfl_mul(q, r), ule(p, q * r)};
    case 16: return {~ult(p, qx), ~ule(x, r), ovfl_mul(q, r), ult(p, q * r)};
    case 17: return {~ule(p, qx), ~ult(x, r), ovfl_mul(q, r), ult(p, q * r), eq(p)};
    case 18: return {~ule(p, qx), ~ult(x, r), ovfl_mul(q, r), ult(p, q * r), eq(q)};
    }
    throw usage_error("mul_ineq row out of range");
}

Clause ovfl(unsigned row, Poly const& p, Poly const& q, Poly const& r, Poly const& s, ZextFn const& zext) {
    using namespace cs;
    unsigned w = p.width();
    if (w < 2)
        throw usage_error("overflow rules need width > 1");
    Poly root = cst(w, ceil_sqrt_pow2(w));
    switch (row) {
    case 1: return {ovfl_mul(p, q), eq(q), ule(p, p * q)};
    case 2: {
        if (!zext)
            throw usage_error("overflow row 2 needs zero-extension");
        Poly P = zext(p), Q = zext(q);
        return {~uge(P * Q, cst(w + 1, bigint(1) << w)), ovfl_mul(p, q)};
    }
    case 3: return {~ovfl_mul(p, q), ovfl_mul(r, s), ugt(p, r), ugt(q, s)};
    case 4: return {~ovfl_mul(p, q), ult(p, q), uge(p, root)};
    case 5: return {ovfl_mul(p, q), ult(p, q), ult(q, root)};
    }
    throw usage_error("overflow row out of range");
}

Clause eliminate(Poly const& a, Poly const& b, Poly const& c, Poly const& d, Poly const& x) {
    return {~cs::eq(a * x + b), ~cs::eq(c * x + d), cs::eq(a * d - b * c)};
}

Clause substitute(SignedConstraint const& e, BvVal const& a, Poly const& b, Var x, SignedConstraint const& c) {
    if (!a.is_odd())
        throw usage_error("substitution needs an odd coefficient");
    Poly v = -(inverse(a) * b);
    return {~e, ~c, subst_lit(c, x, v)};
}

Clause parity_upper(SignedConstraint const& prem, Poly const& p, Poly const& q, unsigned k, unsigned n) {
    if (k >= n)
        throw usage_error("parity bound needs k < n");
    return {~prem, cs::parity_at_least(p, k + 1), cs::parity_at_least(q, n - k)};
}

Clause parity_lower(SignedConstraint const& prem, Poly const& p, Poly const& q, unsigned a, unsigned b) {
    return {~cs::parity_at_least(p, a), ~cs::parity_at_least(q, b), prem};
}

Clause parity_unit(Poly const& p, Poly const& q) { return {~cs::eq(p * q - 1), ~cs::parity_at_least(p, 1)}; }

Clause parity_same(Poly const& p, Poly const& q, unsigned k) {
    unsigned w = p.width();
    return {~cs::eq(p * q - q), cs::parity_at_least(p - 1, k + 1), cs::parity_at_least(q, w - k)};
}

Clause lin_value(LinValue v, Poly const& p, Poly const& q, unsigned k) {
    using namespace cs;
    unsigned w = p.width();
    switch (v) {
    case LinValue::zero: return {~eq(p), eq(p * q)};
    case LinValue::one: return {~eq(p, cst(w, 1u)), eq(p * q, q)};
    case LinValue::minus_one: return {~eq(p, Poly(BvVal::max(w))), eq(p * q, -q)};
    case LinValue::pow2: {
        BvVal t = BvVal::pow2(w, k);
        return {~eq(p, Poly(t)), eq(p * q, t * q)};
    }
    }
    throw usage_error("bad linearization value");
}

Clause lin_rewrite(SignedConstraint const& c, Var p, BvVal const& n) {
    return {~c, ~cs::eq(Poly::var(n.width(), p), Poly(n)), subst_lit(c, p, Poly(n))};
}

Clause lin_inverse(Poly const& p, Poly const& q) {
    return {~cs::eq(p * q, cst(p.width(), 1u)), cs::eq(p, cst(p.width(), 1u)), cs::ovfl_mul(p, q)};
}

Clause lin_same(Poly const& p, Poly const& q) {
    return {~cs::eq(p * q, q), cs::eq(p, cst(p.width(), 1u)), cs::eq(q), cs::ovfl_mul(p, q)};
}

namespace {

struct BitRule {
    char const* name;
    unsigned index_lo;  // ~0u: not indexed
};

BitRule const band_rules[] = {{"and-le-p", ~0u},    {"and-le-q", ~0u},    {"and-zero-p", ~0u}, {"and-zero-q", ~0u},
                              {"and-ones-p", ~0u},  {"and-ones-q", ~0u},  {"and-same", ~0u},   {"and-bit", 0},
                              {"and-bit-p", 0},     {"and-bit-q", 0}};
BitRule const bor_rules[] = {{"or-ge-p", ~0u},   {"or-ge-q", ~0u},   {"or-zero-p", ~0u}, {"or-zero-q", ~0u},
                             {"or-ones-p", ~0u}, {"or-ones-q", ~0u}, {"or-same", ~0u},   {"or-bit-p", 0},
                             {"or-bit-q", 0},    {"or-bit", 0}};
BitRule const shl_rules[] = {{"shl-big", ~0u}, {"shl-zero", ~0u}, {"shl-amount", 1}};
BitRule const lshr_rules[] = {{"lshr-big", ~0u}, {"lshr-zero", ~0u}, {"lshr-amount", 1}};
BitRule const ashr_rules[] = {{"ashr-big-neg", ~0u}, {"ashr-big-pos", ~0u},    {"ashr-big", ~0u},       {"ashr-zero", ~0u},
                              {"ashr-amount", 1},    {"ashr-amount-neg", 1}, {"ashr-amount-pos", 1}};

std::pair<BitRule const*, unsigned> table(BitOp op) {
    switch (op) {
    case BitOp::band: return {band_rules, std::size(band_rules)};
    case BitOp::bor: return {bor_rules, std::size(bor_rules)};
    case BitOp::shl: return {shl_rules, std::size(shl_rules)};
    case BitOp::lshr: return {lshr_rules, std::size(lshr_rules)};
    case BitOp::ashr: return {ashr_rules, std::size(ashr_rules)};
    }
    return {nullptr, 0};
}

Kind op_kind(BitOp op) {
    switch (op) {
    case BitOp::band: return Kind::eq_and;
    case BitOp::bor: return Kind::eq_or;
    case BitOp::shl: return Kind::eq_shl;
    case BitOp::lshr: return Kind::eq_lshr;
    case BitOp::ashr: return Kind::eq_ashr;
    }
    return Kind::ule;
}

}

unsigned bitblast_rule_count(BitOp op) { return table(op).second; }

std::string bitblast_rule_name(BitOp op, unsigned rule) {
    auto [t, n] = table(op);
    if (rule >= n)
        throw usage_error("bitblast rule out of range");
    return t[rule].name;
}

bool bitblast_indexed(BitOp op, unsigned rule, unsigned& lo) {
    auto [t, n] = table(op);
    if (rule >= n)
        throw usage_error("bitblast rule out of range");
    lo = t[rule].index_lo;
    return lo != ~0u;
}

std::vector<Clause> bitblast(BitOp op, unsigned rule, Var xv, Poly const& p, Poly const& q, unsigned i) {
    using namespace cs;
    unsigned w = p.width();
    Poly x = Poly::var(w, xv);
    SignedConstraint S = structural(op_kind(op), xv, p, q);
    Poly ones(BvVal::max(w));
    Poly wc = cst(w, uint64_t(w));
    unsigned lo = 0;
    if (bitblast_indexed(op, rule, lo) && (i < lo || i >= w))
        throw usage_error("bitblast index out of range");
    auto sign = [&](Poly const& t) { return bit(t, w - 1); };
    switch (op) {
    case BitOp::band:
        switch (rule) {
        case 0: return {{~S, ule(x, p)}};
        case 1: return {{~S, ule(x, q)}};
        case 2: return {{~S, ~eq(p), eq(x)}};
        case 3: return {{~S, ~eq(q), eq(x)}};
        case 4: return {{~S, ~eq(p, ones), eq(x, q)}};
        case 5: return {{~S, ~eq(q, ones), eq(x, p)}};
        case 6: return {{~S, ~eq(p, q), eq(x, p)}};
        case 7: return {{~S, ~bit(p, i), ~bit(q, i), bit(x, i)}};
        case 8: return {{~S, ~bit(x, i), bit(p, i)}};
        case 9: return {{~S, ~bit(x, i), bit(q, i)}};
        }
        break;
    case BitOp::bor:
        switch (rule) {
        case 0: return {{~S, uge(x, p)}};
        case 1: return {{~S, uge(x, q)}};
        case 2: return {{~S, ~eq(p), eq(x, q)}};
        case 3: return {{~S, ~eq(q), eq(x, p)}};
        case 4: return {{~S, ~eq(p, ones), eq(x, ones)}};
        case 5: return {{~S, ~eq(q, ones), eq(x, ones)}};
        case 6: return {{~S, ~eq(p, q), eq(x, p)}};
        case 7: return {{~S, ~bit(p, i), bit(x, i)}};
        case 8: return {{~S, ~bit(q, i), bit(x, i)}};
        case 9: return {{~S, ~bit(x, i), bit(p, i), bit(q, i)}};
        }
        break;
    case BitOp::shl:
        switch (rule) {
        case 0: return {{~S, ult(q, wc), eq(x)}};
        case 1: return {{~S, ~eq(q), eq(x, p)}};
        case 2: return {{~S, ~eq(q, cst(w, uint64_t(i))), eq(x, BvVal::pow2(w, i) * p)}};
        }
        break;
    case BitOp::lshr:
        switch (rule) {
        case 0: return {{~S, ult(q, wc), eq(x)}};
        case 1: return {{~S, ~eq(q), eq(x, p)}};
        case 2: {
            SignedConstraint qi = ~eq(q, cst(w, uint64_t(i)));
            Poly sx = BvVal::pow2(w, i) * x;
            return {{~S, qi, ule(sx, p)},
                    {~S, qi, ule(p, sx + (BvVal::pow2(w, i) - BvVal::one(w)))},
                    {~S, qi, ult(x, Poly(BvVal::pow2(w, w - i)))}};
        }
        }
        break;
    case BitOp::ashr:
        switch (rule) {
        case 0: return {{~S, ~sign(p), ult(q, wc), eq(x, ones)}};
        case 1: return {{~S, sign(p), ult(q, wc), eq(x)}};
        case 2: return {{~S, ult(q, wc), ule(x + 1, cst(w, 1u))}};
        case 3: return {{~S, ~eq(q), eq(x, p)}};
        case 4: {
            SignedConstraint qi = ~eq(q, cst(w, uint64_t(i)));
            Poly sx = BvVal::pow2(w, i) * x;
            return {{~S, qi, ule(sx, p)}, {~S, qi, ule(p, sx + (BvVal::pow2(w, i) - BvVal::one(w)))}};
        }
        case 5:
            return {{~S, ~sign(p), ~eq(q, cst(w, uint64_t(i))),
                     uge(x, Poly(-BvVal::pow2(w, w - i - 1)))}};
        case 6:
            return {{~S, sign(p), ~eq(q, cst(w, uint64_t(i))), ult(x, Poly(BvVal::pow2(w, w - i - 1)))}};
        }
        break;
    }
    throw usage_error("bitblast rule out of range");
}

Clause product_row(Poly const& p, Poly const& q, BvVal const& n) { return {~cs::eq(p, Poly(n)), cs::eq(p * q, n * q)}; }

std::vector<Clause> msb_split(unsigned row, Poly const& p, Poly const& q, unsigned i, unsigned j, ZextFn const& zext) {
    using namespace cs;
    unsigned w = p.width();
    switch (row) {
    case 0:
        if (i + j < w + 2)
            throw usage_error("msb row 0 needs i + j >= w + 2");
        return {{~msb_at_least(p, i), ~msb_at_least(q, j), ovfl_mul(p, q)}};
    case 1:
        if (i + j > w)
            throw usage_error("msb row 1 needs i + j <= w");
        return {{msb_at_least(p, i + 1), msb_at_least(q, j + 1), ~ovfl_mul(p, q)}};
    case 2: {
        if (i + j != w + 1)
            throw usage_error("msb row 2 needs i + j = w + 1");
        if (!zext)
            throw usage_error("msb row 2 needs zero-extension");
        Poly P = zext(p), Q = zext(q);
        SignedConstraint big = uge(P * Q, cst(w + 1, bigint(1) << w));
        Clause exact = {~msb_at_least(p, i), msb_at_least(p, i + 1), ~msb_at_least(q, j), msb_at_least(q, j + 1)};
        Clause a = exact, b = exact;
        a.push_back(~ovfl_mul(p, q));
        a.push_back(big);
        b.push_back(ovfl_mul(p, q));
        b.push_back(~big);
        return {a, b};
    }
    }
    throw usage_error("msb row out of range");
}

}

// ---------------------------------------------------------------------------------------------
// Templates

namespace {

using Params = std::vector<std::vector<unsigned>>;

Params no_params(unsigned) { return {{}}; }

Params range1(unsigned lo, unsigned hi) {
    Params r;
    for (unsigned i = lo; i < hi; ++i)
        r.push_back({i});
    return r;
}

std::vector<RuleTemplate> build_templates() {
    std::vector<RuleTemplate> t;
    auto one = [](Clause c) { return std::vector<Clause>{std::move(c)}; };

    for (unsigned row = 1; row <= rules::mul_ineq_rows; ++row) {
        // args: p, q, x | p, q, r, s, x | p, q, r, x
        unsigned arity = row <= 9 ? 3 : row == 10 ? 5 : 4;
        t.push_back({"mul-ineq-" + std::to_string(row), arity, no_params,
                     [row, one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                         Poly z(BvVal::zero(a[0].width()));
                         if (row <= 9)
                             return one(rules::mul_ineq(row, a[0], a[1], z, z, a[2]));
                         if (row == 10)
                             return one(rules::mul_ineq(row, a[0], a[1], a[2], a[3], a[4]));
                         return one(rules::mul_ineq(row, a[0], a[1], a[2], z, a[3]));
                     }});
    }
    for (unsigned row = 1; row <= rules::ovfl_rows; ++row) {
        t.push_back({"ovfl-" + std::to_string(row), row == 3 ? 4u : 2u,
                     [](unsigned w) { return w > 1 ? Params{{}} : Params{}; },
                     [row, one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const& z) {
                         if (row == 3)
                             return one(rules::ovfl(row, a[0], a[1], a[2], a[3], z));
                         return one(rules::ovfl(row, a[0], a[1], a[0], a[1], z));
                     }});
    }
    t.push_back({"eliminate", 5, no_params, [one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                     return one(rules::eliminate(a[0], a[1], a[2], a[3], a[4]));
                 }});
    // args x, b, y; param: odd a. c ranges over a few shapes.
    t.push_back({"substitute", 3,
                 [](unsigned w) {
                     Params r;
                     for (unsigned a = 1; a < (1u << std::min(w, 4u)); a += 2)
                         for (unsigned shape = 0; shape < 3; ++shape)
                             r.push_back({a, shape});
                     return r;
                 },
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                     unsigned w = a[0].width();
                     BvVal k(w, ps[0]);
                     Var x = a[0].var();
                     SignedConstraint c = ps[1] == 0   ? cs::ule(a[0] * a[2] + a[1], a[2])
                                          : ps[1] == 1 ? cs::ovfl_mul(a[0], a[2] + 1)
                                                       : ~cs::eq(a[0] * a[0] - a[2]);
                     return one(rules::substitute(cs::eq(k * a[0] + a[1]), k, a[1], x, c));
                 }});
    t.push_back({"parity-upper", 2,
                 [](unsigned w) {
                     Params r;
                     for (unsigned n = 1; n <= w; ++n)
                         for (unsigned k = 0; k < n; ++k)
                             r.push_back({k, n});
                     return r;
                 },
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                     return one(rules::parity_upper(cs::parity_at_least(a[0] * a[1], ps[1]), a[0], a[1], ps[0], ps[1]));
                 }});
    t.push_back({"parity-lower", 2,
                 [](unsigned w) {
                     Params r;
                     for (unsigned i = 0; i <= w; ++i)
                         for (unsigned j = 0; j <= w; ++j)
                             r.push_back({i, j});
                     return r;
                 },
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                     unsigned w = a[0].width();
                     unsigned n = std::min(w, ps[0] + ps[1]);
                     return one(rules::parity_lower(cs::parity_at_least(a[0] * a[1], n), a[0], a[1], ps[0], ps[1]));
                 }});
    t.push_back({"parity-unit", 2, no_params, [one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                     return one(rules::parity_unit(a[0], a[1]));
                 }});
    t.push_back({"parity-same", 2, [](unsigned w) { return range1(0, w); },
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                     return one(rules::parity_same(a[0], a[1], ps[0]));
                 }});
    t.push_back({"lin-zero", 2, no_params, [one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                     return one(rules::lin_value(rules::LinValue::zero, a[0], a[1]));
                 }});
    t.push_back({"lin-one", 2, no_params, [one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                     return one(rules::lin_value(rules::LinValue::one, a[0], a[1]));
                 }});
    t.push_back({"lin-minus-one", 2, no_params,
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                     return one(rules::lin_value(rules::LinValue::minus_one, a[0], a[1]));
                 }});
    t.push_back({"lin-pow2", 2, [](unsigned w) { return range1(1, w); },
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                     return one(rules::lin_value(rules::LinValue::pow2, a[0], a[1], ps[0]));
                 }});
    t.push_back({"lin-inverse", 2, no_params, [one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                     return one(rules::lin_inverse(a[0], a[1]));
                 }});
    t.push_back({"lin-same", 2, no_params, [one](std::vector<Poly> const& a, std::vector<unsigned> const&, ZextFn const&) {
                     return one(rules::lin_same(a[0], a[1]));
                 }});
    // args p, q; param value n. c = p*q + q <= p*p.
    t.push_back({"lin-rewrite", 2,
                 [](unsigned w) { return range1(0, 1u << std::min(w, 8u)); },
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                     unsigned w = a[0].width();
                     SignedConstraint c = cs::ule(a[0] * a[1] + a[1], a[0] * a[0]);
                     return one(rules::lin_rewrite(c, a[0].var(), BvVal(w, ps[0])));
                 }});
    for (BitOp op : {BitOp::band, BitOp::bor, BitOp::shl, BitOp::lshr, BitOp::ashr}) {
        for (unsigned rule = 0; rule < rules::bitblast_rule_count(op); ++rule) {
            t.push_back({rules::bitblast_rule_name(op, rule), 3,
                         [op, rule](unsigned w) {
                             unsigned lo = 0;
                             if (!rules::bitblast_indexed(op, rule, lo))
                                 return Params{{0}};
                             return range1(lo, w);
                         },
                         [op, rule](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                             return rules::bitblast(op, rule, a[0].var(), a[1], a[2], ps[0]);
                         }});
        }
    }
    t.push_back({"product-row", 2, [](unsigned w) { return range1(0, 1u << std::min(w, 8u)); },
                 [one](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const&) {
                     return one(rules::product_row(a[0], a[1], BvVal(a[0].width(), ps[0])));
                 }});
    for (unsigned row = 0; row < 3; ++row) {
        t.push_back({"msb-split-" + std::to_string(row), 2,
                     [row](unsigned w) {
                         Params r;
                         for (unsigned i = 0; i <= w; ++i)
                             for (unsigned j = 0; j <= w; ++j)
                                 if ((row == 0 && i + j >= w + 2) || (row == 1 && i + j <= w) || (row == 2 && i + j == w + 1))
                                     r.push_back({i, j});
                         return r;
                     },
                     [row](std::vector<Poly> const& a, std::vector<unsigned> const& ps, ZextFn const& z) {
                         return rules::msb_split(row, a[0], a[1], ps[0], ps[1], z);
                     }});
    }
    return t;
}

}

std::vector<RuleTemplate> const& rule_templates() {
    static std::vector<RuleTemplate> const t = build_templates();
    return t;
}

// ---------------------------------------------------------------------------------------------
// Matching

char const* stage_name(Stage s) {
    switch (s) {
    case Stage::saturation: return "saturation";
    case Stage::linearization: return "linearization";
    case Stage::bitblast: return "bitblast";
    }
    return "?";
}

bool is_falsified(Clause const& c, LemmaContext const& ctx) {
    for (auto const& l : c) {
        if (l.is_always_false())
            continue;
        if (l.is_always_true())
            return false;
        auto v = ctx.value(l);
        if (!v || *v)
            return false;
    }
    return true;
}

namespace {

// lhs <= rhs, or lhs < rhs when strict.
struct Ineq {
    Poly lhs, rhs;
    bool strict;
};

std::optional<Ineq> ineq_view(SignedConstraint const& c) {
    Constraint const& k = c.constraint();
    if (k.kind() != Kind::ule)
        return std::nullopt;
    if (c.is_positive())
        return Ineq{k.p(), k.q(), false};
    return Ineq{k.q(), k.p(), true};
}

// P / x when every term of P contains x; nullopt otherwise. Zero divides to zero.
std::optional<Poly> divide_by(Poly const& P, Var x) {
    if (!P.const_term().is_zero())
        return std::nullopt;
    Poly r(BvVal::zero(P.width()));
    for (auto const& [m, c] : P.terms()) {
        auto it = std::find(m.begin(), m.end(), x);
        if (it == m.end())
            return std::nullopt;
        Monomial rest = m;
        rest.erase(rest.begin() + (it - m.begin()));
        r = r + Poly::monomial(c, rest);
    }
    return r;
}

bool is_var(Poly const& p, Var x) { return p.is_var() && p.var() == x; }

std::vector<Var> nonlinear_vars(Poly const& p) {
    std::vector<Var> r;
    for (auto const& [m, c] : p.terms())
        if (m.size() >= 2)
            for (Var y : m)
                if (std::find(r.begin(), r.end(), y) == r.end())
                    r.push_back(y);
    return r;
}

std::vector<Var> nonlinear_vars(SignedConstraint const& c) {
    auto r = nonlinear_vars(c.constraint().p());
    for (Var y : nonlinear_vars(c.constraint().q()))
        if (std::find(r.begin(), r.end(), y) == r.end())
            r.push_back(y);
    return r;
}

class Matcher {
    SignedConstraint const& V;
    LemmaContext const& ctx;
    std::function<bool(LemmaClause&&)> const& emit;
    unsigned w;
    bool done = false;

public:
    Matcher(SignedConstraint const& v, LemmaContext const& c, std::function<bool(LemmaClause&&)> const& e)
        : V(v), ctx(c), emit(e), w(v.width()) {}

    bool stopped() const { return done; }

    void add(std::string rule, Clause c) {
        if (done)
            return;
        done = emit(LemmaClause{std::move(c), std::move(rule), V});
    }

    BvVal val(Poly const& p) const {
        auto v = p.value(ctx.gamma);
        if (!v)
            throw usage_error("lemma matching needs a fully assigned trigger");
        return *v;
    }

    void saturation();
    void linearization();
    void bitblast();

private:
    void mul_ineq();
    void mul_ineq_pair(Ineq const& A, Ineq const& B, Var x);
    void overflow();
    void equalities();
    void parity();
};

void Matcher::mul_ineq() {
    auto iv = ineq_view(V);
    if (!iv)
        return;
    Poly zero(BvVal::zero(w));
    for (Var x : V.vars()) {
        Poly X = Poly::var(w, x);
        auto P = divide_by(iv->lhs, x), Q = divide_by(iv->rhs, x);
        if (P && Q && !(P->is_zero() && Q->is_zero())) {
            unsigned lo = iv->strict ? 1 : 6, hi = iv->strict ? 5 : 9;
            for (unsigned row = lo; row <= hi; ++row)
                add("mul-ineq-" + std::to_string(row), rules::mul_ineq(row, *P, *Q, zero, zero, X));
        }
        if (!iv->strict && iv->lhs.contains(x)) {
            if (auto d = iv->lhs.decompose(x)) {
                for (auto const& W : ctx.asserted) {
                    auto wv = ineq_view(W);
                    if (wv && !wv->strict && is_var(wv->rhs, x))
                        add("mul-ineq-10", rules::mul_ineq(10, d->first, iv->rhs, wv->lhs, d->second, X));
                }
            }
        }
        for (auto const& W : ctx.asserted) {
            if (W == V || !W.constraint().contains(x))
                continue;
            auto wv = ineq_view(W);
            if (!wv)
                continue;
            mul_ineq_pair(*iv, *wv, x);
            mul_ineq_pair(*wv, *iv, x);
        }
        if (done)
            return;
    }
}

void Matcher::mul_ineq_pair(Ineq const& A, Ineq const& B, Var x) {
    Poly X = Poly::var(w, x);
    Poly zero(BvVal::zero(w));
    if (is_var(A.rhs, x)) {
        if (auto Q = divide_by(B.lhs, x)) {
            Poly const& p = A.lhs;
            Poly const& r = B.rhs;
            if (!A.strict && !B.strict)
                add("mul-ineq-11", rules::mul_ineq(11, p, *Q, r, zero, X));
            if (!A.strict && B.strict)
                add("mul-ineq-12", rules::mul_ineq(12, p, *Q, r, zero, X));
            if (A.strict && !B.strict) {
                add("mul-ineq-13", rules::mul_ineq(13, p, *Q, r, zero, X));
                add("mul-ineq-14", rules::mul_ineq(14, p, *Q, r, zero, X));
            }
        }
    }
    if (is_var(B.lhs, x)) {
        if (auto Q = divide_by(A.rhs, x)) {
            Poly const& p = A.lhs;
            Poly const& r = B.rhs;
            if (!A.strict && !B.strict)
                add("mul-ineq-15", rules::mul_ineq(15, p, *Q, r, zero, X));
            if (A.strict && !B.strict)
                add("mul-ineq-16", rules::mul_ineq(16, p, *Q, r, zero, X));
            if (!A.strict && B.strict) {
                add("mul-ineq-17", rules::mul_ineq(17, p, *Q, r, zero, X));
                add("mul-ineq-18", rules::mul_ineq(18, p, *Q, r, zero, X));
            }
        }
    }
}

void Matcher::overflow() {
    Constraint const& k = V.constraint();
    if (k.kind() != Kind::ovfl_mul || w < 2)
        return;
    ZextFn none;
    Poly const& a = k.p();
    Poly const& b = k.q();
    for (int swap = 0; swap < 2 && !done; ++swap) {
        Poly const& p = swap ? b : a;
        Poly const& q = swap ? a : b;
        if (!V.is_positive()) {
            add("ovfl-1", rules::ovfl(1, p, q, p, q, none));
            add("ovfl-5", rules::ovfl(5, p, q, p, q, none));
        } else {
            add("ovfl-4", rules::ovfl(4, p, q, p, q, none));
        }
        for (auto const& W : ctx.asserted) {
            Constraint const& kw = W.constraint();
            if (kw.kind() != Kind::ovfl_mul || W.is_positive() == V.is_positive())
                continue;
            for (int s2 = 0; s2 < 2; ++s2) {
                Poly const& r = s2 ? kw.q() : kw.p();
                Poly const& s = s2 ? kw.p() : kw.q();
                if (V.is_positive())
                    add("ovfl-3", rules::ovfl(3, p, q, r, s, none));
                else
                    add("ovfl-3", rules::ovfl(3, r, s, p, q, none));
            }
        }
    }
}

void Matcher::equalities() {
    Constraint const& k = V.constraint();
    auto is_pos_eq = [](SignedConstraint const& c) { return c.is_positive() && c.constraint().is_eq(); };
    auto odd_eq = [&](SignedConstraint const& c, Var x) -> std::optional<std::pair<BvVal, Poly>> {
        if (!is_pos_eq(c))
            return std::nullopt;
        auto d = c.constraint().p().decompose(x);
        if (!d || !d->first.is_val() || !d->first.val().is_odd())
            return std::nullopt;
        return std::make_pair(d->first.val(), d->second);
    };
    auto substitutable = [](SignedConstraint const& c, Var x) {
        return c.constraint().contains(x) && c.constraint().x() != x;
    };
    for (Var x : V.vars()) {
        if (is_pos_eq(V)) {
            if (auto d = k.p().decompose(x)) {
                for (auto const& W : ctx.asserted) {
                    if (W == V || !is_pos_eq(W) || !W.constraint().contains(x))
                        continue;
                    if (auto e = W.constraint().p().decompose(x))
                        add("eliminate", rules::eliminate(d->first, d->second, e->first, e->second, Poly::var(w, x)));
                }
            }
        }
        if (auto ov = odd_eq(V, x)) {
            for (auto const& W : ctx.asserted)
                if (W != V && substitutable(W, x))
                    add("substitute", rules::substitute(V, ov->first, ov->second, x, W));
        }
        if (substitutable(V, x)) {
            for (auto const& W : ctx.asserted) {
                if (W == V)
                    continue;
                if (auto ov = odd_eq(W, x))
                    add("substitute", rules::substitute(W, ov->first, ov->second, x, V));
            }
        }
        if (done)
            return;
    }
}

void Matcher::parity() {
    Constraint const& k = V.constraint();
    if (!k.is_eq())
        return;
    Poly const& P = k.p();
    if (!P.const_term().is_zero()) {
        if (!V.is_positive() || !P.const_term().is_max())
            return;
        Poly M = P + 1;
        for (Var v : M.vars()) {
            if (auto t = divide_by(M, v)) {
                Poly pv = Poly::var(w, v);
                add("parity-unit", rules::parity_unit(pv, *t));
                add("parity-unit", rules::parity_unit(*t, pv));
            }
        }
        return;
    }
    unsigned s = w;
    for (auto const& [m, c] : P.terms())
        s = std::min(s, polysat::parity(c));
    if (s >= w)
        return;
    // P = 2^s * Q, and V says parity(Q) >= n.
    Poly Q(BvVal::zero(w));
    for (auto const& [m, c] : P.terms())
        Q = Q + Poly::monomial(BvVal::from_int(w, c.to_int() >> s), m);
    unsigned n = w - s;
    for (Var v : Q.vars()) {
        auto t = divide_by(Q, v);
        if (!t)
            continue;
        Poly pv = Poly::var(w, v);
        unsigned a = polysat::parity(val(*t));
        if (V.is_positive()) {
            if (a < n)
                add("parity-upper", rules::parity_upper(V, *t, pv, a, n));
        } else {
            unsigned b = polysat::parity(val(pv));
            unsigned a1 = std::min(a, n);
            unsigned b1 = n - a1;
            if (b1 <= b)
                add("parity-lower", rules::parity_lower(~V, *t, pv, a1, b1));
        }
        if (done)
            return;
    }
}

void Matcher::saturation() {
    mul_ineq();
    if (!done)
        overflow();
    if (!done)
        equalities();
    if (!done)
        parity();
}

void Matcher::linearization() {
    if (is_structural(V.constraint().kind()))
        return;
    for (Var y : nonlinear_vars(V)) {
        BvVal n = ctx.gamma.value(y);
        char const* rule = nullptr;
        if (n.is_zero())
            rule = "lin-zero";
        else if (n.is_one())
            rule = "lin-one";
        else if (n.is_max())
            rule = "lin-minus-one";
        else if (polysat::parity(n) + 1 == msb_index(n))
            rule = "lin-pow2";
        if (rule)
            add(rule, rules::lin_rewrite(V, y, n));
        if (done)
            return;
    }
    Constraint const& k = V.constraint();
    if (!V.is_positive() || !k.is_eq())
        return;
    Poly const& P = k.p();
    if (P.const_term().is_max()) {
        Poly M = P + 1;
        for (Var v : M.vars())
            if (auto t = divide_by(M, v))
                add("lin-inverse", rules::lin_inverse(Poly::var(w, v), *t));
    }
    if (P.const_term().is_zero()) {
        for (Var v : P.vars())
            if (auto t = divide_by(P, v))
                add("lin-same", rules::lin_same(*t + 1, Poly::var(w, v)));
    }
}

void Matcher::bitblast() {
    Constraint const& k = V.constraint();
    if (is_structural(k.kind())) {
        BitOp op;
        switch (k.kind()) {
        case Kind::eq_and: op = BitOp::band; break;
        case Kind::eq_or: op = BitOp::bor; break;
        case Kind::eq_shl: op = BitOp::shl; break;
        case Kind::eq_lshr: op = BitOp::lshr; break;
        case Kind::eq_ashr: op = BitOp::ashr; break;
        default: return;
        }
        BvVal qv = val(k.q());
        for (unsigned rule = 0; rule < rules::bitblast_rule_count(op) && !done; ++rule) {
            unsigned lo = 0;
            if (!rules::bitblast_indexed(op, rule, lo)) {
                for (auto& c : rules::bitblast(op, rule, k.x(), k.p(), k.q(), 0))
                    add(rules::bitblast_rule_name(op, rule), std::move(c));
                continue;
            }
            if (op == BitOp::band || op == BitOp::bor) {
                for (unsigned i = lo; i < w && !done; ++i)
                    for (auto& c : rules::bitblast(op, rule, k.x(), k.p(), k.q(), i))
                        add(rules::bitblast_rule_name(op, rule) + "[" + std::to_string(i) + "]", std::move(c));
            } else if (ult(qv, BvVal(w, w)) && !qv.is_zero()) {
                unsigned i = static_cast<unsigned>(qv.to_u64());
                for (auto& c : rules::bitblast(op, rule, k.x(), k.p(), k.q(), i))
                    add(rules::bitblast_rule_name(op, rule) + "[" + std::to_string(i) + "]", std::move(c));
            }
        }
        return;
    }
    if (k.kind() == Kind::ovfl_mul) {
        unsigned i = msb_index(val(k.p())), j = msb_index(val(k.q()));
        ZextFn none;
        if (i + j >= w + 2)
            for (auto& c : rules::msb_split(0, k.p(), k.q(), i, j, none))
                add("msb-split-0", std::move(c));
        if (i + j <= w)
            for (auto& c : rules::msb_split(1, k.p(), k.q(), i, j, none))
                add("msb-split-1", std::move(c));
        if (i + j == w + 1)
            for (Var y : V.vars())
                add("msb-split-2", rules::lin_rewrite(V, y, ctx.gamma.value(y)));
        if (done)
            return;
    }
    for (Var y : nonlinear_vars(V)) {
        add("product-row", rules::lin_rewrite(V, y, ctx.gamma.value(y)));
        if (done)
            return;
    }
}

}

std::vector<LemmaClause> candidate_lemmas(SignedConstraint const& violated, Stage stage, LemmaContext const& ctx) {
    std::vector<LemmaClause> out;
    std::function<bool(LemmaClause&&)> emit = [&](LemmaClause&& c) {
        out.push_back(std::move(c));
        return false;
    };
    Matcher m(violated, ctx, emit);
    switch (stage) {
    case Stage::saturation: m.saturation(); break;
    case Stage::linearization: m.linearization(); break;
    case Stage::bitblast: m.bitblast(); break;
    }
    return out;
}

std::optional<LemmaClause> find_lemma(SignedConstraint const& violated, Stage stage, LemmaContext const& ctx) {
    std::optional<LemmaClause> found;
    std::function<bool(LemmaClause&&)> emit = [&](LemmaClause&& c) {
        Clause kept;
        for (auto& l : c.lits) {
            if (l.is_always_false())
                continue;
            if (l.is_always_true())
                return false;
            if (std::find(kept.begin(), kept.end(), l) == kept.end())
                kept.push_back(l);
        }
        c.lits = std::move(kept);
        if (!is_falsified(c.lits, ctx))
            return false;
        if (ctx.accept && !ctx.accept(c))
            return false;
        found = std::move(c);
        return true;
    };
    Matcher m(violated, ctx, emit);
    switch (stage) {
    case Stage::saturation: m.saturation(); break;
    case Stage::linearization: m.linearization(); break;
    case Stage::bitblast: m.bitblast(); break;
    }
    return found;
}

}
