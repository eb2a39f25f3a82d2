// Primitive constraints, derived-constraint reduction and normalization.
#pragma once

#include "polysat/poly.h"

#include <optional>
#include <string>
#include <vector>

namespace polysat {

enum class Kind { ule, ovfl_mul, eq_and, eq_or, eq_udiv, eq_urem, eq_shl, eq_lshr, eq_ashr };

char const* kind_name(Kind k);
bool is_structural(Kind k);

// ule(p, q): p <=_u q.  ovfl_mul(p, q).  Structural kinds: x = op(p, q).
class Constraint {
    Kind m_kind = Kind::ule;
    Poly m_p;
    Poly m_q;
    Var m_x = null_var;

public:
    Constraint() = default;
    Constraint(Kind k, Poly p, Poly q, Var x = null_var);

    Kind kind() const { return m_kind; }
    Poly const& p() const { return m_p; }
    Poly const& q() const { return m_q; }
    Var x() const { return m_x; }
    unsigned width() const { return m_p.width(); }

    bool is_ule() const { return m_kind == Kind::ule; }
    // p = 0, stored as ule(p, 0).
    bool is_eq() const { return m_kind == Kind::ule && m_q.is_zero(); }
    bool is_const() const;

    std::vector<Var> vars() const;
    bool contains(Var x) const;
    std::optional<bool> eval(Assignment const& a) const;

    friend bool operator==(Constraint const& a, Constraint const& b) {
        return a.m_kind == b.m_kind && a.m_x == b.m_x && a.m_p == b.m_p && a.m_q == b.m_q;
    }
    friend bool operator!=(Constraint const& a, Constraint const& b) { return !(a == b); }
    size_t hash() const;
    std::string to_string(VarNamer const& names = default_var_name) const;
};

class SignedConstraint {
    Constraint m_c;
    bool m_positive = true;

public:
    SignedConstraint() = default;
    SignedConstraint(Constraint c, bool positive) : m_c(std::move(c)), m_positive(positive) {}

    Constraint const& constraint() const { return m_c; }
    bool is_positive() const { return m_positive; }
    SignedConstraint operator~() const { return SignedConstraint(m_c, !m_positive); }

    bool is_always_true() const;
    bool is_always_false() const;
    std::optional<bool> eval(Assignment const& a) const;
    std::vector<Var> vars() const { return m_c.vars(); }
    unsigned width() const { return m_c.width(); }

    friend bool operator==(SignedConstraint const& a, SignedConstraint const& b) {
        return a.m_positive == b.m_positive && a.m_c == b.m_c;
    }
    friend bool operator!=(SignedConstraint const& a, SignedConstraint const& b) { return !(a == b); }
    std::string to_string(VarNamer const& names = default_var_name) const;
};

std::ostream& operator<<(std::ostream& out, SignedConstraint const& c);

// Canonical form. p <= 0, p < 1 and -1 <= p - 1 all become p = 0 with the
// leading coefficient of p scaled to a power of two.
SignedConstraint normalize(SignedConstraint const& c);

SignedConstraint make_true(unsigned width = 1);
SignedConstraint make_false(unsigned width = 1);

// Constraint constructors; all results are normalized.
namespace cs {
SignedConstraint ule(Poly const& p, Poly const& q);
SignedConstraint ult(Poly const& p, Poly const& q);
SignedConstraint uge(Poly const& p, Poly const& q);
SignedConstraint ugt(Poly const& p, Poly const& q);
SignedConstraint sle(Poly const& p, Poly const& q);
SignedConstraint slt(Poly const& p, Poly const& q);
SignedConstraint sge(Poly const& p, Poly const& q);
SignedConstraint sgt(Poly const& p, Poly const& q);
SignedConstraint eq(Poly const& p, Poly const& q);
SignedConstraint eq(Poly const& p);
SignedConstraint ne(Poly const& p, Poly const& q);
SignedConstraint ovfl_mul(Poly const& p, Poly const& q);
SignedConstraint ovfl_add(Poly const& p, Poly const& q);
// bit(p, i) <=> 2^{w-1} <=_u 2^{w-i-1} * p
SignedConstraint bit(Poly const& p, unsigned i);
// parity(p) >= i <=> p * 2^{w-i} = 0, for 0 < i <= w; i = 0 is always true.
SignedConstraint parity_at_least(Poly const& p, unsigned i);
// msb(p) >= i <=> p >=_u 2^{i-1}
SignedConstraint msb_at_least(Poly const& p, unsigned i);
// x = op(p, q) for a variable x.
SignedConstraint structural(Kind k, Var x, Poly const& p, Poly const& q);
}

enum class SurfaceOp { ule, ult, uge, ugt, sle, slt, sge, sgt, eq, ne, ovfl_mul, ovfl_add, bit };

struct SurfaceAtom {
    SurfaceOp op;
    Poly p;
    Poly q;
    unsigned index = 0;
};

// Reduces a surface comparison to primitive constraints (a conjunction).
std::vector<SignedConstraint> reduce_derived(SurfaceAtom const& a);

struct UdivAxioms {
    Var q;
    Var r;
    std::vector<std::vector<SignedConstraint>> clauses;
};

// Axioms defining q = x udiv y and r = x urem y for fresh variables q, r.
UdivAxioms axiomatize_udiv(Poly const& x, Poly const& y, Var q, Var r);

}

template <>
struct std::hash<polysat::Constraint> {
    size_t operator()(polysat::Constraint const& c) const { return c.hash(); }
};
