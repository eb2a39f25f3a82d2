#include "polysat/poly.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace polysat {

bool mono_less(Monomial const& a, Monomial const& b) {
    if (a.size() != b.size())
        return a.size() > b.size();
    return a < b;
}

Monomial mono_mul(Monomial const& a, Monomial const& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

void Assignment::set(Var x, BvVal v) {
    if (x >= m_vals.size())
        m_vals.resize(x + 1);
    m_vals[x] = std::move(v);
}

void Assignment::unset(Var x) {
    if (x < m_vals.size())
        m_vals[x].reset();
}

BvVal const& Assignment::value(Var x) const {
    if (!is_assigned(x))
        throw usage_error("variable v" + std::to_string(x) + " is unassigned");
    return *m_vals[x];
}

std::string default_var_name(Var x) { return "v" + std::to_string(x); }

Poly Poly::var(unsigned w, Var x) {
    Poly p(BvVal::zero(w));
    p.m_terms.emplace_back(Monomial{x}, BvVal::one(w));
    return p;
}

Poly Poly::monomial(BvVal c, Monomial m) {
    Poly p(BvVal::zero(c.width()));
    std::sort(m.begin(), m.end());
    if (m.empty())
        return Poly(c);
    if (!c.is_zero())
        p.m_terms.emplace_back(std::move(m), std::move(c));
    return p;
}

Poly Poly::from_terms(unsigned w, std::vector<Term> terms, BvVal c) {
    std::sort(terms.begin(), terms.end(), [](Term const& a, Term const& b) { return mono_less(a.first, b.first); });
    Poly p(std::move(c));
    for (auto& t : terms) {
        if (!p.m_terms.empty() && p.m_terms.back().first == t.first)
            p.m_terms.back().second = p.m_terms.back().second + t.second;
        else
            p.m_terms.push_back(std::move(t));
        if (p.m_terms.back().second.is_zero())
            p.m_terms.pop_back();
    }
    (void)w;
    return p;
}

bool Poly::is_var() const {
    return m_terms.size() == 1 && m_const.is_zero() && m_terms[0].first.size() == 1 && m_terms[0].second.is_one();
}

Var Poly::var() const {
    if (!is_var())
        throw usage_error("polynomial is not a variable");
    return m_terms[0].first[0];
}

bool Poly::is_linear() const {
    for (auto const& t : m_terms)
        if (t.first.size() > 1)
            return false;
    return true;
}

std::vector<Var> Poly::vars() const {
    std::vector<Var> r;
    for (auto const& t : m_terms)
        r.insert(r.end(), t.first.begin(), t.first.end());
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

bool Poly::contains(Var x) const {
    for (auto const& t : m_terms)
        if (std::binary_search(t.first.begin(), t.first.end(), x))
            return true;
    return false;
}

unsigned Poly::degree(Var x) const {
    unsigned d = 0;
    for (auto const& t : m_terms) {
        auto r = std::equal_range(t.first.begin(), t.first.end(), x);
        d = std::max(d, static_cast<unsigned>(r.second - r.first));
    }
    return d;
}

unsigned Poly::total_degree() const { return m_terms.empty() ? 0 : static_cast<unsigned>(m_terms[0].first.size()); }

BvVal const& Poly::leading_coeff() const { return m_terms.empty() ? m_const : m_terms[0].second; }

std::optional<std::pair<Poly, Poly>> Poly::decompose(Var x) const {
    std::vector<Term> a, r;
    for (auto const& t : m_terms) {
        auto it = std::find(t.first.begin(), t.first.end(), x);
        if (it == t.first.end()) {
            r.push_back(t);
            continue;
        }
        Monomial m = t.first;
        m.erase(m.begin() + (it - t.first.begin()));
        if (std::find(m.begin(), m.end(), x) != m.end())
            return std::nullopt;
        if (m.empty())
            a.emplace_back(Monomial{}, t.second);
        else
            a.emplace_back(std::move(m), t.second);
    }
    BvVal ac = BvVal::zero(m_width);
    std::vector<Term> aterms;
    for (auto& t : a) {
        if (t.first.empty())
            ac = ac + t.second;
        else
            aterms.push_back(std::move(t));
    }
    return std::make_pair(from_terms(m_width, std::move(aterms), ac), from_terms(m_width, std::move(r), m_const));
}

Poly Poly::subst(Var x, Poly const& v) const {
    if (!contains(x))
        return *this;
    Poly result(m_const);
    for (auto const& t : m_terms) {
        Poly prod(t.second);
        Monomial rest;
        for (Var y : t.first) {
            if (y == x)
                prod = prod * v;
            else
                rest.push_back(y);
        }
        if (!rest.empty())
            prod = prod * Poly::monomial(BvVal::one(m_width), rest);
        result = result + prod;
    }
    return result;
}

Poly Poly::eval(Assignment const& a) const {
    bool touched = false;
    for (auto const& t : m_terms)
        for (Var y : t.first)
            if (a.is_assigned(y))
                touched = true;
    if (!touched)
        return *this;
    std::vector<Term> terms;
    BvVal c = m_const;
    for (auto const& t : m_terms) {
        BvVal coeff = t.second;
        Monomial rest;
        for (Var y : t.first) {
            if (auto const* v = a.find(y))
                coeff = coeff * *v;
            else
                rest.push_back(y);
        }
        if (coeff.is_zero())
            continue;
        if (rest.empty())
            c = c + coeff;
        else
            terms.emplace_back(std::move(rest), std::move(coeff));
    }
    return from_terms(m_width, std::move(terms), std::move(c));
}

std::optional<BvVal> Poly::value(Assignment const& a) const {
    BvVal r = m_const;
    for (auto const& t : m_terms) {
        BvVal prod = t.second;
        for (Var y : t.first) {
            auto const* v = a.find(y);
            if (!v)
                return std::nullopt;
            prod = prod * *v;
        }
        r = r + prod;
    }
    return r;
}

Poly operator+(Poly const& a, Poly const& b) {
    if (a.m_width != b.m_width)
        throw usage_error("polynomial width mismatch");
    Poly r(a.m_const + b.m_const);
    auto i = a.m_terms.begin(), j = b.m_terms.begin();
    while (i != a.m_terms.end() || j != b.m_terms.end()) {
        if (j == b.m_terms.end() || (i != a.m_terms.end() && mono_less(i->first, j->first)))
            r.m_terms.push_back(*i++);
        else if (i == a.m_terms.end() || mono_less(j->first, i->first))
            r.m_terms.push_back(*j++);
        else {
            BvVal c = i->second + j->second;
            if (!c.is_zero())
                r.m_terms.emplace_back(i->first, c);
            ++i;
            ++j;
        }
    }
    return r;
}

Poly operator-(Poly const& a) {
    Poly r(neg(a.m_const));
    r.m_terms.reserve(a.m_terms.size());
    for (auto const& t : a.m_terms)
        r.m_terms.emplace_back(t.first, neg(t.second));
    return r;
}

Poly operator-(Poly const& a, Poly const& b) { return a + (-b); }

Poly operator*(BvVal const& c, Poly const& p) {
    if (c.width() != p.m_width)
        throw usage_error("polynomial width mismatch");
    Poly r(c * p.m_const);
    for (auto const& t : p.m_terms) {
        BvVal d = c * t.second;
        if (!d.is_zero())
            r.m_terms.emplace_back(t.first, d);
    }
    return r;
}

Poly operator*(Poly const& a, Poly const& b) {
    if (a.m_width != b.m_width)
        throw usage_error("polynomial width mismatch");
    if (a.is_val())
        return a.m_const * b;
    if (b.is_val())
        return b.m_const * a;
    std::vector<Poly::Term> terms;
    for (auto const& s : a.m_terms) {
        for (auto const& t : b.m_terms)
            terms.emplace_back(mono_mul(s.first, t.first), s.second * t.second);
        if (!b.m_const.is_zero())
            terms.emplace_back(s.first, s.second * b.m_const);
    }
    if (!a.m_const.is_zero())
        for (auto const& t : b.m_terms)
            terms.emplace_back(t.first, a.m_const * t.second);
    return Poly::from_terms(a.m_width, std::move(terms), a.m_const * b.m_const);
}

bool operator==(Poly const& a, Poly const& b) {
    return a.m_width == b.m_width && a.m_const == b.m_const && a.m_terms == b.m_terms;
}

bool operator<(Poly const& a, Poly const& b) {
    if (a.m_width != b.m_width)
        return a.m_width < b.m_width;
    size_t n = std::min(a.m_terms.size(), b.m_terms.size());
    for (size_t i = 0; i < n; ++i) {
        auto const& s = a.m_terms[i];
        auto const& t = b.m_terms[i];
        if (s.first != t.first)
            return mono_less(s.first, t.first);
        if (s.second != t.second)
            return s.second < t.second;
    }
    if (a.m_terms.size() != b.m_terms.size())
        return a.m_terms.size() > b.m_terms.size();
    return a.m_const < b.m_const;
}

size_t Poly::hash() const {
    size_t h = m_const.hash();
    for (auto const& t : m_terms) {
        for (Var y : t.first)
            h = h * 31 + y;
        h = h * 1000003 ^ t.second.hash();
    }
    return h;
}

std::string Poly::to_string(VarNamer const& names) const {
    std::ostringstream out;
    bool first = true;
    for (auto const& t : m_terms) {
        if (!first)
            out << " + ";
        first = false;
        if (!t.second.is_one())
            out << t.second << "*";
        for (size_t i = 0; i < t.first.size(); ++i) {
            if (i)
                out << "*";
            out << names(t.first[i]);
        }
    }
    if (first)
        out << m_const;
    else if (!m_const.is_zero())
        out << " + " << m_const;
    return out.str();
}

std::ostream& operator<<(std::ostream& out, Poly const& p) { return out << p.to_string(); }

Poly bnot(Poly const& p) { return -p - 1; }

std::optional<LinearView> linear_abstraction(Poly const& p, Var x, Assignment const& gamma) {
    Poly e = p;
    if (gamma.is_assigned(x)) {
        Assignment g2 = gamma;
        g2.unset(x);
        e = p.eval(g2);
    } else {
        e = p.eval(gamma);
    }
    auto d = e.decompose(x);
    if (!d || !d->first.is_val())
        return std::nullopt;
    return LinearView{d->first, d->second};
}

}
