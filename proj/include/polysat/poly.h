// Polynomials over bit-vector variables.
#pragma once

#include "polysat/bv.h"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polysat {

using Var = unsigned;
constexpr Var null_var = ~0u;

// Sorted multiset of variables; never empty inside a Poly.
using Monomial = std::vector<Var>;

bool mono_less(Monomial const& a, Monomial const& b);
Monomial mono_mul(Monomial const& a, Monomial const& b);

class Assignment {
    std::vector<std::optional<BvVal>> m_vals;

public:
    void set(Var x, BvVal v);
    void unset(Var x);
    bool is_assigned(Var x) const { return x < m_vals.size() && m_vals[x].has_value(); }
    BvVal const& value(Var x) const;
    BvVal const* find(Var x) const { return is_assigned(x) ? &*m_vals[x] : nullptr; }
    size_t capacity() const { return m_vals.size(); }
};

using VarNamer = std::function<std::string(Var)>;
std::string default_var_name(Var x);

class Poly {
public:
    using Term = std::pair<Monomial, BvVal>;

private:
    unsigned m_width = 1;
    std::vector<Term> m_terms;
    BvVal m_const;

    void add_term(Monomial m, BvVal c);
    static Poly from_terms(unsigned w, std::vector<Term> terms, BvVal c);

public:
    Poly() : m_const(BvVal::zero(1)) {}
    explicit Poly(BvVal c) : m_width(c.width()), m_const(std::move(c)) {}
    static Poly constant(unsigned w, uint64_t v) { return Poly(BvVal(w, v)); }
    static Poly constant(unsigned w, bigint const& v) { return Poly(BvVal::from_int(w, v)); }
    static Poly var(unsigned w, Var x);
    static Poly monomial(BvVal c, Monomial m);

    unsigned width() const { return m_width; }
    std::vector<Term> const& terms() const { return m_terms; }
    BvVal const& const_term() const { return m_const; }

    bool is_val() const { return m_terms.empty(); }
    BvVal const& val() const { return m_const; }
    bool is_zero() const { return is_val() && m_const.is_zero(); }
    bool is_one() const { return is_val() && m_const.is_one(); }
    // Single variable with coefficient 1 and no constant.
    bool is_var() const;
    Var var() const;
    bool is_linear() const;

    std::vector<Var> vars() const;
    bool contains(Var x) const;
    unsigned degree(Var x) const;
    unsigned total_degree() const;
    BvVal const& leading_coeff() const;

    // p = a*x + r with a, r free of x; nullopt if x occurs with degree > 1.
    std::optional<std::pair<Poly, Poly>> decompose(Var x) const;

    Poly subst(Var x, Poly const& v) const;
    Poly eval(Assignment const& a) const;
    // Value under a total assignment of this polynomial's variables.
    std::optional<BvVal> value(Assignment const& a) const;

    friend Poly operator+(Poly const& a, Poly const& b);
    friend Poly operator-(Poly const& a, Poly const& b);
    friend Poly operator*(Poly const& a, Poly const& b);
    friend Poly operator-(Poly const& a);
    friend Poly operator*(BvVal const& c, Poly const& p);
    friend Poly operator+(Poly const& p, BvVal const& c) { return p + Poly(c); }
    friend Poly operator-(Poly const& p, BvVal const& c) { return p - Poly(c); }

    Poly operator+(uint64_t c) const { return *this + Poly::constant(m_width, c); }
    Poly operator-(uint64_t c) const { return *this - Poly::constant(m_width, c); }
    Poly operator*(uint64_t c) const { return BvVal(m_width, c) * *this; }

    friend bool operator==(Poly const& a, Poly const& b);
    friend bool operator!=(Poly const& a, Poly const& b) { return !(a == b); }
    friend bool operator<(Poly const& a, Poly const& b);
    size_t hash() const;

    std::string to_string(VarNamer const& names = default_var_name) const;
};

std::ostream& operator<<(std::ostream& out, Poly const& p);

// Bitwise complement as a polynomial: -p - 1.
Poly bnot(Poly const& p);

struct LinearView {
    Poly a;
    Poly rest;
};

// Writes p (after substituting gamma for all variables other than x) as a*x + rest
// with a constant. nullopt when x occurs non-linearly or with a symbolic coefficient.
std::optional<LinearView> linear_abstraction(Poly const& p, Var x, Assignment const& gamma);

}

template <>
struct std::hash<polysat::Poly> {
    size_t operator()(polysat::Poly const& p) const { return p.hash(); }
};
