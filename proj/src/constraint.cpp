#include "polysat/constraint.h"

#include <algorithm>
#include <sstream>

namespace polysat {

char const* kind_name(Kind k) {
    switch (k) {
    case Kind::ule: return "ule";
    case Kind::ovfl_mul: return "ovfl";
    case Kind::eq_and: return "and";
    case Kind::eq_or: return "or";
    case Kind::eq_udiv: return "udiv";
    case Kind::eq_urem: return "urem";
    case Kind::eq_shl: return "shl";
    case Kind::eq_lshr: return "lshr";
    case Kind::eq_ashr: return "ashr";
    }
    return "?";
}

bool is_structural(Kind k) { return k != Kind::ule && k != Kind::ovfl_mul; }

Constraint::Constraint(Kind k, Poly p, Poly q, Var x) : m_kind(k), m_p(std::move(p)), m_q(std::move(q)), m_x(x) {
    if (m_p.width() != m_q.width())
        throw usage_error("constraint operand width mismatch");
    if (is_structural(k) && x == null_var)
        throw usage_error("structural constraint requires a result variable");
}

bool Constraint::is_const() const { return m_x == null_var && m_p.is_val() && m_q.is_val(); }

std::vector<Var> Constraint::vars() const {
    std::vector<Var> r = m_p.vars();
    auto b = m_q.vars();
    r.insert(r.end(), b.begin(), b.end());
    if (m_x != null_var)
        r.push_back(m_x);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

bool Constraint::contains(Var x) const { return x == m_x || m_p.contains(x) || m_q.contains(x); }

std::optional<bool> Constraint::eval(Assignment const& a) const {
    auto pv = m_p.value(a);
    if (!pv)
        return std::nullopt;
    auto qv = m_q.value(a);
    if (!qv)
        return std::nullopt;
    if (m_kind == Kind::ule)
        return ule(*pv, *qv);
    if (m_kind == Kind::ovfl_mul)
        return polysat::ovfl_mul(*pv, *qv);
    auto const* xv = a.find(m_x);
    if (!xv)
        return std::nullopt;
    switch (m_kind) {
    case Kind::eq_and: return *xv == band(*pv, *qv);
    case Kind::eq_or: return *xv == bor(*pv, *qv);
    case Kind::eq_udiv: return *xv == udiv(*pv, *qv);
    case Kind::eq_urem: return *xv == urem(*pv, *qv);
    case Kind::eq_shl: return *xv == shl(*pv, *qv);
    case Kind::eq_lshr: return *xv == lshr(*pv, *qv);
    case Kind::eq_ashr: return *xv == ashr(*pv, *qv);
    default: break;
    }
    return std::nullopt;
}

size_t Constraint::hash() const {
    return (static_cast<size_t>(m_kind) * 0x9e3779b97f4a7c15ull) ^ (m_p.hash() * 31 + m_q.hash()) ^ (size_t(m_x) << 7);
}

std::string Constraint::to_string(VarNamer const& names) const {
    std::ostringstream out;
    if (is_eq())
        out << m_p.to_string(names) << " == 0";
    else if (m_kind == Kind::ule)
        out << m_p.to_string(names) << " <= " << m_q.to_string(names);
    else if (m_kind == Kind::ovfl_mul)
        out << "ovfl(" << m_p.to_string(names) << ", " << m_q.to_string(names) << ")";
    else
        out << names(m_x) << " == " << kind_name(m_kind) << "(" << m_p.to_string(names) << ", " << m_q.to_string(names) << ")";
    return out.str();
}

bool SignedConstraint::is_always_true() const {
    if (!m_c.is_const())
        return false;
    return *m_c.eval(Assignment()) == m_positive;
}

bool SignedConstraint::is_always_false() const {
    if (!m_c.is_const())
        return false;
    return *m_c.eval(Assignment()) != m_positive;
}

std::optional<bool> SignedConstraint::eval(Assignment const& a) const {
    auto v = m_c.eval(a);
    if (!v)
        return std::nullopt;
    return *v == m_positive;
}

std::string SignedConstraint::to_string(VarNamer const& names) const {
    if (m_positive)
        return m_c.to_string(names);
    std::ostringstream out;
    if (m_c.is_eq())
        out << m_c.p().to_string(names) << " != 0";
    else if (m_c.kind() == Kind::ule)
        out << m_c.p().to_string(names) << " > " << m_c.q().to_string(names);
    else
        out << "~" << m_c.to_string(names);
    return out.str();
}

std::ostream& operator<<(std::ostream& out, SignedConstraint const& c) { return out << c.to_string(); }

SignedConstraint make_true(unsigned width) {
    return SignedConstraint(Constraint(Kind::ule, Poly(BvVal::zero(width)), Poly(BvVal::zero(width))), true);
}

SignedConstraint make_false(unsigned width) { return ~make_true(width); }

namespace {

SignedConstraint const_result(bool value, unsigned width) { return value ? make_true(width) : make_false(width); }

SignedConstraint canonical_eq(Poly const& p, bool positive) {
    if (p.is_val())
        return const_result(p.val().is_zero() == positive, p.width());
    // One bit: p != 0 is p + 1 == 0; keep the atom with even constant.
    if (p.width() == 1 && !p.const_term().is_zero())
        return canonical_eq(p + 1, !positive);
    BvVal u = odd_part(p.leading_coeff());
    Poly n = u.is_one() ? p : inverse(u) * p;
    return SignedConstraint(Constraint(Kind::ule, n, Poly(BvVal::zero(p.width()))), positive);
}

}

SignedConstraint normalize(SignedConstraint const& sc) {
    Constraint const& c = sc.constraint();
    bool pos = sc.is_positive();
    unsigned w = c.width();
    switch (c.kind()) {
    case Kind::ule: {
        Poly const& p = c.p();
        Poly const& q = c.q();
        if (p.is_val() && q.is_val())
            return const_result(ule(p.val(), q.val()) == pos, w);
        if (p == q)
            return const_result(pos, w);
        if (q.is_val() && q.val().is_zero())
            return canonical_eq(p, pos);
        if (p.is_val() && p.val().is_zero())
            return const_result(pos, w);
        if (q.is_val() && q.val().is_max())
            return const_result(pos, w);
        if (p.is_val() && p.val().is_one())
            return canonical_eq(q, !pos);
        if (p.is_val() && p.val().is_max())
            return canonical_eq(q + 1, pos);
        if (q.is_val() && (q.val() + BvVal::one(w)).is_max())
            return canonical_eq(p + 1, !pos);
        return sc;
    }
    case Kind::ovfl_mul: {
        Poly const& p = c.p();
        Poly const& q = c.q();
        auto trivial = [](Poly const& a) { return a.is_val() && (a.val().is_zero() || a.val().is_one()); };
        if (trivial(p) || trivial(q))
            return const_result(!pos, w);
        if (p.is_val() && q.is_val())
            return const_result(polysat::ovfl_mul(p.val(), q.val()) == pos, w);
        if (q < p)
            return SignedConstraint(Constraint(Kind::ovfl_mul, q, p), pos);
        return sc;
    }
    default:
        return sc;
    }
}

namespace cs {

SignedConstraint ule(Poly const& p, Poly const& q) { return normalize(SignedConstraint(Constraint(Kind::ule, p, q), true)); }
SignedConstraint ult(Poly const& p, Poly const& q) { return ~ule(q, p); }
SignedConstraint uge(Poly const& p, Poly const& q) { return ule(q, p); }
SignedConstraint ugt(Poly const& p, Poly const& q) { return ult(q, p); }

SignedConstraint sle(Poly const& p, Poly const& q) {
    BvVal off = BvVal::pow2(p.width(), p.width() - 1);
    return ule(p + off, q + off);
}
SignedConstraint slt(Poly const& p, Poly const& q) { return ~sle(q, p); }
SignedConstraint sge(Poly const& p, Poly const& q) { return sle(q, p); }
SignedConstraint sgt(Poly const& p, Poly const& q) { return slt(q, p); }

SignedConstraint eq(Poly const& p, Poly const& q) { return ule(p - q, Poly(BvVal::zero(p.width()))); }
SignedConstraint eq(Poly const& p) { return ule(p, Poly(BvVal::zero(p.width()))); }
SignedConstraint ne(Poly const& p, Poly const& q) { return ~eq(p, q); }

SignedConstraint ovfl_mul(Poly const& p, Poly const& q) {
    return normalize(SignedConstraint(Constraint(Kind::ovfl_mul, p, q), true));
}

SignedConstraint ovfl_add(Poly const& p, Poly const& q) { return ult(p + q, p); }

SignedConstraint bit(Poly const& p, unsigned i) {
    unsigned w = p.width();
    if (i >= w)
        throw usage_error("bit index out of range");
    return ule(Poly(BvVal::pow2(w, w - 1)), BvVal::pow2(w, w - i - 1) * p);
}

SignedConstraint parity_at_least(Poly const& p, unsigned i) {
    unsigned w = p.width();
    if (i == 0)
        return make_true(w);
    if (i > w)
        return make_false(w);
    return eq(BvVal::pow2(w, w - i) * p);
}

SignedConstraint msb_at_least(Poly const& p, unsigned i) {
    unsigned w = p.width();
    if (i == 0)
        return make_true(w);
    if (i > w)
        return make_false(w);
    return ule(Poly(BvVal::pow2(w, i - 1)), p);
}

SignedConstraint structural(Kind k, Var x, Poly const& p, Poly const& q) {
    if (!is_structural(k))
        throw usage_error("not a structural constraint kind");
    return SignedConstraint(Constraint(k, p, q, x), true);
}

}

std::vector<SignedConstraint> reduce_derived(SurfaceAtom const& a) {
    if (a.op != SurfaceOp::bit && a.p.width() != a.q.width())
        throw usage_error("surface constraint width mismatch");
    switch (a.op) {
    case SurfaceOp::ule: return {cs::ule(a.p, a.q)};
    case SurfaceOp::ult: return {cs::ult(a.p, a.q)};
    case SurfaceOp::uge: return {cs::uge(a.p, a.q)};
    case SurfaceOp::ugt: return {cs::ugt(a.p, a.q)};
    case SurfaceOp::sle: return {cs::sle(a.p, a.q)};
    case SurfaceOp::slt: return {cs::slt(a.p, a.q)};
    case SurfaceOp::sge: return {cs::sge(a.p, a.q)};
    case SurfaceOp::sgt: return {cs::sgt(a.p, a.q)};
    case SurfaceOp::eq: return {cs::eq(a.p, a.q)};
    case SurfaceOp::ne: return {cs::ne(a.p, a.q)};
    case SurfaceOp::ovfl_mul: return {cs::ovfl_mul(a.p, a.q)};
    case SurfaceOp::ovfl_add: return {cs::ovfl_add(a.p, a.q)};
    case SurfaceOp::bit: return {cs::bit(a.p, a.index)};
    }
    return {};
}

UdivAxioms axiomatize_udiv(Poly const& x, Poly const& y, Var q, Var r) {
    if (x.width() != y.width())
        throw usage_error("division operand width mismatch");
    unsigned w = x.width();
    Poly qp = Poly::var(w, q);
    Poly rp = Poly::var(w, r);
    Poly zero(BvVal::zero(w));
    UdivAxioms ax{q, r, {}};
    ax.clauses.push_back({cs::eq(x, qp * y + rp)});
    ax.clauses.push_back({~cs::ovfl_mul(qp, y)});
    ax.clauses.push_back({cs::ule(qp * y, -rp - 1)});
    ax.clauses.push_back({cs::eq(y, zero), cs::ult(rp, y)});
    ax.clauses.push_back({~cs::eq(y, zero), cs::eq(qp, Poly(BvVal::max(w)))});
    return ax;
}

}
