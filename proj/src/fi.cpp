#include "polysat/fi.h"

#include <sstream>

namespace polysat {

namespace {

constexpr unsigned max_drift_periods = 4096;

bigint pow2i(unsigned k) { return bigint(1) << k; }

BvVal trunc(BvVal const& v, unsigned bits) { return BvVal::from_int(bits, v.to_int()); }

WInterval from_range(IntRange const& r, unsigned w) {
    bigint m = pow2i(w);
    if (r.hi - r.lo + 1 >= m)
        return WInterval::full(w);
    return WInterval(BvVal::from_int(w, mod(r.lo, m)), BvVal::from_int(w, mod(r.hi + 1, m)));
}

void add_side(std::vector<SignedConstraint>& side, SignedConstraint const& c) {
    if (c.is_always_true())
        return;
    for (auto const& s : side)
        if (s == c)
            return;
    side.push_back(c);
}

void pin(std::vector<SignedConstraint>& side, Poly const& p, Assignment const& gamma) {
    if (p.is_val())
        return;
    add_side(side, cs::eq(p, Poly(*p.value(gamma))));
}

bool prefix_contains(FiEntry const& e, BvVal const& x0) {
    return e.interval.contains(trunc(x0, e.bits));
}

}

std::string FiEntry::to_string(VarNamer const& names) const {
    std::ostringstream out;
    out << names(var) << "[" << (bits - 1) << ":0] ∉ ";
    if (lo_sym && hi_sym && !interval.is_full())
        out << "[" << lo_sym->to_string(names) << " ; " << hi_sym->to_string(names) << "[ = ";
    out << interval.to_string();
    if (source)
        out << " from " << source->to_string(names);
    if (!side.empty()) {
        out << " [side:";
        for (auto const& s : side)
            out << " " << s.to_string(names);
        out << "]";
    }
    return out.str();
}

std::optional<FiEntry> from_fixed_bits(Var x, BvVal const& x0, FixedSlice const& fixed) {
    Slice const& s = fixed.slice;
    if (s.var != x || s.hi >= x0.width() || s.lo > s.hi || fixed.value.width() != s.width())
        throw usage_error("fixed slice does not match variable");
    if (extract(x0, s.hi, s.lo) == fixed.value)
        return std::nullopt;
    unsigned bits = s.hi + 1;
    bigint n = fixed.value.to_int();
    FiEntry e;
    e.var = x;
    e.bits = bits;
    e.interval = WInterval(BvVal::from_int(bits, (n + 1) << s.lo), BvVal::from_int(bits, n << s.lo));
    e.tags = fixed.reasons;
    return e;
}

std::optional<bigint> drift_upper(bigint const& a, bigint const& x0, bigint const& l, bigint const& h, bigint const& m) {
    if (a < 1 || a >= m || l <= -m || h >= m || l > h || h - l + 1 >= m)
        throw usage_error("drift precondition violated");
    bigint v = mod(a * x0, m);
    if (v > h)
        v -= m;
    if (v < l)
        throw usage_error("drift start outside [l, h]");
    bigint xh = x0 + floor_div(h - v, a);
    v += a * (xh - x0);
    bool periodic = (m % a) == 0;
    for (unsigned i = 0; i < max_drift_periods; ++i) {
        bigint next = v + a - m;
        if (next < l)
            return xh;
        if (periodic)
            return std::nullopt;
        bigint step = floor_div(h - next, a);
        xh += 1 + step;
        v = next + a * step;
        if (xh - x0 + 1 >= m)
            return std::nullopt;
    }
    return xh;
}

IntRange general_coeff_core(BvVal const& a, BvVal const& x0, bigint const& l, bigint const& h) {
    bigint m = BvVal::modulus(a.width());
    bigint v = mod(a.to_int() * x0.to_int(), m);
    if (v > h)
        v -= m;
    if (v < l)
        throw usage_error("sample outside [l, h]");
    bigint ai = a.to_int();
    bigint x = x0.to_int();
    return IntRange{x - floor_div(v - l, ai), x + floor_div(h - v, ai)};
}

std::optional<IntRange> from_general_coeff(BvVal const& a, BvVal const& x0, bigint const& l, bigint const& h) {
    bigint m = BvVal::modulus(a.width());
    bigint ai = a.to_int();
    bigint x = x0.to_int();
    auto hi = drift_upper(ai, x, l, h, m);
    if (!hi)
        return std::nullopt;
    auto lo = drift_upper(ai, -x, -h, -l, m);
    if (!lo)
        return std::nullopt;
    IntRange r{-*lo, *hi};
    if (r.hi - r.lo + 1 >= m)
        return std::nullopt;
    return r;
}

Deltas diff_coeff_deltas(BvVal const& p, BvVal const& q, BvVal const& r, BvVal const& s, BvVal const& x0, bool strict,
                         bool p_neg, bool r_neg) {
    unsigned w = p.width();
    bigint M = BvVal::modulus(w);
    bigint a = (p * x0 + q).to_int();
    bigint b = (r * x0 + s).to_int();
    if (strict ? a < b : a <= b)
        throw usage_error("sample does not violate the inequality");
    bigint gap = a - b;
    if (strict)
        gap += 1;
    bigint x = x0.to_int();
    bigint pp = p.to_int(), rr = r.to_int();
    if (p_neg)
        pp -= M;
    if (r_neg)
        rr -= M;
    bigint dh = M - x;
    if (pp > 0)
        dh = std::min(dh, ceil_div(M - a, pp));
    if (rr < 0)
        dh = std::min(dh, ceil_div(b + 1, -rr));
    if (rr > pp)
        dh = std::min(dh, ceil_div(gap, rr - pp));
    bigint dl = x + 1;
    if (rr > 0)
        dl = std::min(dl, ceil_div(b + 1, rr));
    if (pp < 0)
        dl = std::min(dl, ceil_div(M - a, -pp));
    if (pp > rr)
        dl = std::min(dl, ceil_div(gap, pp - rr));
    return Deltas{dh - 1, dl - 1};
}

IntRange from_diff_coeffs(BvVal const& p, BvVal const& q, BvVal const& r, BvVal const& s, BvVal const& x0, bool strict) {
    bigint best_h = 0, best_l = 0;
    for (bool pn : {false, true})
        for (bool rn : {false, true}) {
            Deltas d = diff_coeff_deltas(p, q, r, s, x0, strict, pn, rn);
            best_h = std::max(best_h, d.dh);
            best_l = std::max(best_l, d.dl);
        }
    bigint x = x0.to_int();
    return IntRange{x - best_l, x + best_h};
}

MultipleResult forbid_multiple(BvVal const& a, WInterval const& I, BvVal const& x0) {
    unsigned w = a.width();
    MultipleResult res;
    if (a.is_zero())
        throw usage_error("zero coefficient");
    if (I.is_full()) {
        res.kind = MultipleResult::full;
        res.bits = w;
        res.forbidden = WInterval::full(w);
        return res;
    }
    if (I.is_empty())
        return res;
    if (a.is_one()) {
        res.kind = MultipleResult::interval;
        res.bits = w;
        res.forbidden = I;
        return res;
    }
    if (a.is_max()) {
        BvVal one = BvVal::one(w);
        res.kind = MultipleResult::interval;
        res.bits = w;
        res.forbidden = WInterval(one - I.hi(), one - I.lo());
        return res;
    }
    unsigned k = parity(a);
    if (k > 0) {
        unsigned w2 = w - k;
        bigint m2 = pow2i(w2);
        bigint lo = mod(ceil_div(I.lo().to_int(), pow2i(k)), m2);
        bigint hi = mod(ceil_div(I.hi().to_int(), pow2i(k)), m2);
        if (lo == hi) {
            if (I.contains(BvVal::zero(w))) {
                res.kind = MultipleResult::full;
                res.bits = w2;
                res.forbidden = WInterval::full(w2);
            }
            return res;
        }
        BvVal alpha = BvVal::from_int(w2, a.to_int() >> k);
        return forbid_multiple(alpha, WInterval(BvVal::from_int(w2, lo), BvVal::from_int(w2, hi)), trunc(x0, w2));
    }
    if (!I.contains(a * x0))
        return res;
    bigint M = BvVal::modulus(w);
    bigint l = I.lo().to_int();
    bigint h = I.hi().to_int() - 1;
    if (l > h)
        l -= M;
    auto r = from_general_coeff(a, x0, l, h);
    res.bits = w;
    if (!r) {
        res.kind = MultipleResult::full;
        res.forbidden = WInterval::full(w);
        return res;
    }
    res.kind = MultipleResult::interval;
    res.forbidden = from_range(*r, w);
    return res;
}

namespace {

struct Linear {
    Poly p, q, r, s;
};

// Core of the extraction for L <= R (or its negation) with L = p x + q, R = r x + s.
}

std::optional<FiEntry> narrow_equation(FiEntry const& e, unsigned b, Assignment const& gamma) {
    if (!e.eq_rhs)
        return std::nullopt;
    unsigned w = e.eq_rhs->width();
    if (b == 0 || b + e.eq_shift > w)
        return std::nullopt;
    auto tv = e.eq_rhs->value(gamma);
    if (!tv)
        return std::nullopt;
    BvVal t = *tv;
    if (parity(t) < e.eq_shift)
        return std::nullopt;
    BvVal v = BvVal::from_int(b, t.to_int() >> e.eq_shift);
    FiEntry n;
    n.var = e.var;
    n.bits = b;
    n.interval = WInterval(v + BvVal::one(b), v);
    n.source = e.source;
    n.side = e.eq_side;
    n.tags = e.tags;
    // 2^(w-k-b) t = 2^(w-b) v pins exactly the low b bits of t >> k.
    Poly lhs = BvVal::pow2(w, w - e.eq_shift - b) * *e.eq_rhs;
    add_side(n.side, cs::eq(lhs, Poly(BvVal::from_int(w, v.to_int() << (w - b)))));
    return n;
}

namespace {

std::optional<FiEntry> extract_ule(Var x, Poly const& L, Poly const& R, bool positive, Assignment const& gamma,
                                   std::optional<BvVal> const& x0) {
    unsigned w = L.width();
    auto dl = L.decompose(x);
    auto dr = R.decompose(x);
    if (!dl || !dr)
        return std::nullopt;
    Linear lin{dl->first, dl->second, dr->first, dr->second};
    FiEntry e;
    e.var = x;
    // A part that still mentions unassigned variables is usable only when it evaluates to a
    // constant; the assigned variables responsible are pinned.
    for (Poly* t : {&lin.p, &lin.q, &lin.r, &lin.s}) {
        if (t->value(gamma))
            continue;
        Poly ev = t->eval(gamma);
        if (!ev.is_val())
            return std::nullopt;
        for (Var v : t->vars())
            if (gamma.is_assigned(v))
                add_side(e.side, cs::eq(Poly::var(w, v), Poly(gamma.value(v))));
        *t = ev;
    }
    BvVal P = *lin.p.value(gamma), Q = *lin.q.value(gamma), Rv = *lin.r.value(gamma), S = *lin.s.value(gamma);
    if (P.is_zero() && Rv.is_zero())
        return std::nullopt;

    pin(e.side, lin.p, gamma);
    pin(e.side, lin.r, gamma);

    auto set_full = [&](unsigned bits) {
        e.bits = bits;
        e.interval = WInterval::full(bits);
        e.lo_sym.reset();
        e.hi_sym.reset();
        return e;
    };

    if (P != Rv && !P.is_zero() && !Rv.is_zero()) {
        if (!x0)
            return std::nullopt;
        IntRange range = positive ? from_diff_coeffs(P, Q, Rv, S, *x0, false) : from_diff_coeffs(Rv, S, P, Q, *x0, true);
        pin(e.side, lin.q, gamma);
        pin(e.side, lin.s, gamma);
        e.bits = w;
        e.interval = from_range(range, w);
        return e;
    }

    // a*x not in [lo;hi[ with symbolic bounds.
    BvVal a;
    Poly lo, hi;
    BvVal one = BvVal::one(w);
    if (P == Rv) {
        a = P;
        if (positive) {
            lo = -lin.s;
            hi = -lin.q;
        } else {
            if (Q == S) {
                add_side(e.side, cs::eq(lin.q, lin.s));
                return set_full(w);
            }
            add_side(e.side, ~cs::eq(lin.q, lin.s));
            lo = -lin.q;
            hi = -lin.s;
        }
    } else if (Rv.is_zero()) {
        a = P;
        if (positive) {
            lo = lin.s - lin.q + 1;
            hi = -lin.q;
        } else {
            if (S.is_max()) {
                add_side(e.side, cs::eq(lin.s, Poly(S)));
                return set_full(w);
            }
            add_side(e.side, ~cs::eq(lin.s, Poly(BvVal::max(w))));
            lo = -lin.q;
            hi = lin.s - lin.q + 1;
        }
    } else {
        a = Rv;
        if (positive) {
            lo = -lin.s;
            hi = lin.q - lin.s;
        } else {
            if (Q.is_zero()) {
                add_side(e.side, cs::eq(lin.q));
                return set_full(w);
            }
            add_side(e.side, ~cs::eq(lin.q));
            lo = lin.q - lin.s;
            hi = -lin.s;
        }
    }

    // p x + q <= 0 forbids all but one multiple.
    bool eq_form = positive && Rv.is_zero() && lin.s.is_zero();
    unsigned k = parity(a);
    if (eq_form) {
        BvVal alpha = odd_part(a);
        e.eq_rhs = -(inverse(alpha) * lin.q);
        e.eq_shift = k;
        e.eq_side = e.side;
    }

    BvVal lov = *lo.value(gamma), hiv = *hi.value(gamma);
    WInterval I(lov, hiv);
    if (a.is_one() || a.is_max()) {
        if (I.is_empty())
            return std::nullopt;
        e.bits = w;
        if (a.is_one()) {
            e.lo_sym = lo;
            e.hi_sym = hi;
        } else {
            e.lo_sym = Poly(one) - hi;
            e.hi_sym = Poly(one) - lo;
        }
        e.interval = WInterval(*e.lo_sym->value(gamma), *e.hi_sym->value(gamma));
        return e;
    }
    if (!x0 && parity(a) == 0)
        return std::nullopt;
    BvVal sample = x0 ? *x0 : BvVal::zero(w);
    MultipleResult mr = forbid_multiple(a, I, sample);
    if (mr.kind == MultipleResult::none)
        return std::nullopt;
    // A full result of the equation form only needs parity(q) < k.
    if (mr.kind == MultipleResult::full && eq_form && k > 0) {
        add_side(e.side, ~cs::parity_at_least(lin.q, k));
        e.eq_rhs.reset();
        return set_full(mr.bits);
    }
    pin(e.side, lin.q, gamma);
    pin(e.side, lin.s, gamma);
    e.bits = mr.bits;
    e.interval = mr.forbidden;
    return e;
}

std::optional<FiEntry> extract(Var x, SignedConstraint const& c, Assignment const& gamma, std::optional<BvVal> const& x0) {
    Constraint const& con = c.constraint();
    if (gamma.is_assigned(x))
        throw usage_error("extraction variable is assigned");
    if (!con.contains(x))
        return std::nullopt;
    if (x0) {
        Assignment g = gamma;
        g.set(x, *x0);
        Poly pe = con.p().eval(g), qe = con.q().eval(g);
        if (!pe.is_val() || !qe.is_val())
            return std::nullopt;
        Constraint ce(con.kind(), pe, qe, con.x());
        auto val = SignedConstraint(ce, c.is_positive()).eval(g);
        if (!val || *val)
            return std::nullopt;
    }
    std::optional<FiEntry> e;
    unsigned w = con.width();
    if (con.kind() == Kind::ule) {
        e = extract_ule(x, con.p(), con.q(), c.is_positive(), gamma, x0);
    } else if (con.kind() == Kind::ovfl_mul) {
        Poly P = con.p(), Q = con.q();
        if (P.contains(x) && Q.contains(x))
            return std::nullopt;
        if (!P.contains(x))
            std::swap(P, Q);
        auto qv = Q.value(gamma);
        if (!qv)
            return std::nullopt;
        BvVal cval = *qv;
        SignedConstraint q_pin = cs::eq(Q, Poly(cval));
        if (cval.to_int() <= 1) {
            if (!c.is_positive())
                return std::nullopt;
            FiEntry f;
            f.var = x;
            f.bits = w;
            f.interval = WInterval::full(w);
            add_side(f.side, q_pin);
            e = f;
        } else {
            bigint t = ceil_div(BvVal::modulus(w), cval.to_int());
            e = extract_ule(x, Poly::constant(w, t), P, c.is_positive(), gamma, x0);
            if (e)
                add_side(e->side, q_pin);
        }
    } else {
        return std::nullopt;
    }
    if (!e)
        return std::nullopt;
    e->source = c;
    if (x0 && !prefix_contains(*e, *x0))
        throw std::logic_error("extracted interval misses the sample point");
    return e;
}

}

std::optional<FiEntry> extract_interval(Var x, SignedConstraint const& c, Assignment const& gamma, BvVal const& x0) {
    return extract(x, c, gamma, x0);
}

std::optional<FiEntry> extract_interval(Var x, SignedConstraint const& c, Assignment const& gamma) {
    return extract(x, c, gamma, std::nullopt);
}

Projection project_upper(WInterval const& I, unsigned v) {
    unsigned w = I.width();
    if (v == 0 || v >= w)
        throw usage_error("bad split point");
    unsigned u = w - v;
    Projection res;
    if (I.is_full()) {
        res.kind = Projection::contradiction;
        return res;
    }
    bigint l = I.lo().to_int();
    bigint ly = ceil_div(l, pow2i(v));
    bigint hy = floor_div(l + I.length(), pow2i(v));
    if (hy <= ly)
        return res;
    if (hy - ly >= pow2i(u)) {
        res.kind = Projection::contradiction;
        return res;
    }
    res.kind = Projection::interval;
    res.forbidden = WInterval(BvVal::from_int(u, ly), BvVal::from_int(u, hy));
    return res;
}

Projection project_lower(WInterval const& I, unsigned v) {
    unsigned w = I.width();
    if (v == 0 || v >= w)
        throw usage_error("bad split point");
    Projection res;
    if (I.is_full()) {
        res.kind = Projection::contradiction;
        return res;
    }
    if (I.length() <= BvVal::modulus(w) - pow2i(v))
        return res;
    res.kind = Projection::interval;
    res.forbidden = WInterval(trunc(I.lo(), v), trunc(I.hi(), v));
    return res;
}

Projection project_upper_fixed(WInterval const& I, unsigned v, BvVal const& n) {
    unsigned w = I.width();
    if (v == 0 || v >= w || n.width() != v)
        throw usage_error("bad split point");
    unsigned u = w - v;
    Projection res;
    BvVal nw = BvVal::from_int(w, n.to_int());
    if (I.is_full()) {
        res.kind = Projection::contradiction;
        return res;
    }
    if (I.is_empty())
        return res;
    bigint ly = mod(ceil_div((I.lo() - nw).to_int(), pow2i(v)), pow2i(u));
    bigint hy = mod(ceil_div((I.hi() - nw).to_int(), pow2i(v)), pow2i(u));
    if (ly == hy) {
        if (I.contains(BvVal::from_int(w, (hy << v) + n.to_int())))
            res.kind = Projection::contradiction;
        return res;
    }
    res.kind = Projection::interval;
    res.forbidden = WInterval(BvVal::from_int(u, ly), BvVal::from_int(u, hy));
    return res;
}

Projection project_lower_fixed(WInterval const& I, unsigned v, BvVal const& n) {
    unsigned w = I.width();
    if (v == 0 || v >= w || n.width() != w - v)
        throw usage_error("bad split point");
    Projection res;
    if (I.is_full()) {
        res.kind = Projection::contradiction;
        return res;
    }
    if (I.is_empty())
        return res;
    auto part = [&](BvVal const& b) -> bigint {
        bigint bi = b.to_int();
        return (bi >> v) == n.to_int() ? mod(bi, pow2i(v)) : bigint(0);
    };
    bigint lz = part(I.lo()), hz = part(I.hi());
    if (lz == hz) {
        if (I.contains(BvVal::from_int(w, n.to_int() << v)))
            res.kind = Projection::contradiction;
        return res;
    }
    res.kind = Projection::interval;
    res.forbidden = WInterval(BvVal::from_int(v, lz), BvVal::from_int(v, hz));
    return res;
}

}
