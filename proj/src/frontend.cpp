#include "polysat/frontend.h"

#include <ostream>
#include <unordered_map>

namespace polysat::smt {

namespace {

class Internalizer {
    Solver& m_s;
    Symbols& m_syms;
    std::unordered_map<Term const*, Poly> m_bv;
    std::unordered_map<Term const*, Lit> m_bool;
    std::map<std::pair<std::string, std::string>, UdivAxioms> m_div;

    Var fresh(unsigned w) { return m_s.add_var(w); }

    Var as_var(Poly const& p) {
        if (p.is_var())
            return p.var();
        Var v = fresh(p.width());
        m_s.assert_constraint(cs::eq(Poly::var(p.width(), v), p));
        return v;
    }

    Poly structural(Kind k, Poly const& p, Poly const& q) {
        Var t = fresh(p.width());
        m_s.assert_constraint(cs::structural(k, t, p, q));
        return Poly::var(p.width(), t);
    }

    UdivAxioms const& division(Poly const& x, Poly const& y) {
        auto key = std::make_pair(x.to_string(), y.to_string());
        auto it = m_div.find(key);
        if (it != m_div.end())
            return it->second;
        unsigned w = x.width();
        Var q = fresh(w), r = fresh(w);
        UdivAxioms ax = axiomatize_udiv(x, y, q, r);
        for (auto const& c : ax.clauses)
            m_s.add_constraint_clause(c);
        return m_div.emplace(key, std::move(ax)).first->second;
    }

    Lit fresh_bool() { return m_s.new_bool(); }

    // g <-> (a <-> b)
    Lit iff(Lit a, Lit b) {
        Lit g = fresh_bool();
        m_s.add_clause({neg(g), neg(a), b});
        m_s.add_clause({neg(g), a, neg(b)});
        m_s.add_clause({g, a, b});
        m_s.add_clause({g, neg(a), neg(b)});
        return g;
    }

    Lit conj(std::vector<Lit> const& xs) {
        Lit g = fresh_bool();
        std::vector<Lit> back{g};
        for (Lit x : xs) {
            m_s.add_clause({neg(g), x});
            back.push_back(neg(x));
        }
        m_s.add_clause(back);
        return g;
    }

    Lit disj(std::vector<Lit> const& xs) {
        std::vector<Lit> ns;
        for (Lit x : xs)
            ns.push_back(neg(x));
        return neg(conj(ns));
    }

public:
    Internalizer(Solver& s, Symbols& syms) : m_s(s), m_syms(syms) {}

    Poly bv(TermRef const& t) {
        auto it = m_bv.find(t.get());
        if (it != m_bv.end())
            return it->second;
        Poly r = bv_core(t);
        m_bv.emplace(t.get(), r);
        return r;
    }

    Poly bv_core(TermRef const& t) {
        unsigned w = t->sort.width;
        auto a = [&](size_t i) { return bv(t->args[i]); };
        switch (t->op) {
        case Op::bv_const:
            return Poly(t->value);
        case Op::var:
            return Poly::var(w, m_syms.bv.at(t->name));
        case Op::bvadd:
            return a(0) + a(1);
        case Op::bvsub:
            return a(0) - a(1);
        case Op::bvmul:
            return a(0) * a(1);
        case Op::bvneg:
            return -a(0);
        case Op::bvnot:
            return bnot(a(0));
        case Op::bvand:
            return structural(Kind::eq_and, a(0), a(1));
        case Op::bvor:
            return structural(Kind::eq_or, a(0), a(1));
        case Op::bvshl:
            return structural(Kind::eq_shl, a(0), a(1));
        case Op::bvlshr:
            return structural(Kind::eq_lshr, a(0), a(1));
        case Op::bvashr:
            return structural(Kind::eq_ashr, a(0), a(1));
        case Op::bvudiv:
            return Poly::var(w, division(a(0), a(1)).q);
        case Op::bvurem:
            return Poly::var(w, division(a(0), a(1)).r);
        case Op::concat: {
            Var hi = as_var(a(0)), lo = as_var(a(1));
            unsigned wl = t->args[1]->sort.width;
            Var c = fresh(w);
            m_s.add_slice_eq(Slice{c, wl - 1, 0}, Slice{lo, wl - 1, 0});
            m_s.add_slice_eq(Slice{c, w - 1, wl}, Slice{hi, w - wl - 1, 0});
            return Poly::var(w, c);
        }
        case Op::extract: {
            Var src = as_var(a(0));
            Var e = fresh(w);
            m_s.add_slice_eq(Slice{e, w - 1, 0}, Slice{src, t->hi, t->lo});
            return Poly::var(w, e);
        }
        case Op::zero_extend: {
            unsigned wl = t->args[0]->sort.width;
            Var lo = as_var(a(0));
            Var c = fresh(w);
            m_s.add_slice_eq(Slice{c, wl - 1, 0}, Slice{lo, wl - 1, 0});
            Var hi = as_var(Poly::constant(t->hi, 0));
            m_s.add_slice_eq(Slice{c, w - 1, wl}, Slice{hi, t->hi - 1, 0});
            return Poly::var(w, c);
        }
        case Op::ite: {
            Lit c = b(t->args[0]);
            Poly x = a(1), y = a(2);
            Var v = fresh(w);
            Poly pv = Poly::var(w, v);
            m_s.add_clause({neg(c), m_s.lit(cs::eq(pv, x))});
            m_s.add_clause({c, m_s.lit(cs::eq(pv, y))});
            return pv;
        }
        default:
            throw std::logic_error("not a bit-vector term");
        }
    }

    Lit b(TermRef const& t) {
        auto it = m_bool.find(t.get());
        if (it != m_bool.end())
            return it->second;
        Lit r = b_core(t);
        m_bool.emplace(t.get(), r);
        return r;
    }

    Lit b_core(TermRef const& t) {
        auto p = [&](size_t i) { return bv(t->args[i]); };
        auto L = [&](SignedConstraint const& c) { return m_s.lit(c); };
        switch (t->op) {
        case Op::bool_const:
            return t->bval ? m_s.true_lit() : neg(m_s.true_lit());
        case Op::var:
            return m_syms.boolean.at(t->name);
        case Op::bvule:
            return L(cs::ule(p(0), p(1)));
        case Op::bvult:
            return L(cs::ult(p(0), p(1)));
        case Op::bvuge:
            return L(cs::uge(p(0), p(1)));
        case Op::bvugt:
            return L(cs::ugt(p(0), p(1)));
        case Op::bvsle:
            return L(cs::sle(p(0), p(1)));
        case Op::bvslt:
            return L(cs::slt(p(0), p(1)));
        case Op::bvsge:
            return L(cs::sge(p(0), p(1)));
        case Op::bvsgt:
            return L(cs::sgt(p(0), p(1)));
        case Op::bvumulo:
            return L(cs::ovfl_mul(p(0), p(1)));
        case Op::bvuaddo:
            return L(cs::ovfl_add(p(0), p(1)));
        case Op::eq:
            if (t->args[0]->sort.is_bool())
                return iff(b(t->args[0]), b(t->args[1]));
            return L(cs::eq(p(0), p(1)));
        case Op::distinct: {
            std::vector<Lit> parts;
            bool isb = t->args[0]->sort.is_bool();
            for (size_t i = 0; i < t->args.size(); ++i)
                for (size_t j = i + 1; j < t->args.size(); ++j)
                    parts.push_back(isb ? neg(iff(b(t->args[i]), b(t->args[j]))) : L(cs::ne(p(i), p(j))));
            return parts.size() == 1 ? parts[0] : conj(parts);
        }
        case Op::land:
        case Op::lor: {
            std::vector<Lit> xs;
            for (auto const& a : t->args)
                xs.push_back(b(a));
            return t->op == Op::land ? conj(xs) : disj(xs);
        }
        case Op::lnot:
            return neg(b(t->args[0]));
        case Op::implies:
            return disj({neg(b(t->args[0])), b(t->args[1])});
        case Op::ite: {
            Lit c = b(t->args[0]), x = b(t->args[1]), y = b(t->args[2]);
            Lit g = fresh_bool();
            m_s.add_clause({neg(c), neg(g), x});
            m_s.add_clause({neg(c), g, neg(x)});
            m_s.add_clause({c, neg(g), y});
            m_s.add_clause({c, g, neg(y)});
            return g;
        }
        default:
            throw std::logic_error("not a Boolean term");
        }
    }

    void assert_term(TermRef const& t) {
        if (t->op == Op::land) {
            for (auto const& a : t->args)
                assert_term(a);
            return;
        }
        if (t->op == Op::lor) {
            std::vector<Lit> c;
            for (auto const& a : t->args)
                c.push_back(b(a));
            m_s.add_clause(c);
            return;
        }
        if (t->op == Op::implies) {
            m_s.add_clause({neg(b(t->args[0])), b(t->args[1])});
            return;
        }
        m_s.add_clause({b(t)});
    }
};

}

Symbols internalize(std::vector<Decl> const& decls, std::vector<TermRef> const& assertions, Solver& s) {
    Symbols syms;
    for (auto const& d : decls) {
        if (d.sort.is_bool())
            syms.boolean[d.name] = s.new_bool();
        else
            syms.bv[d.name] = s.add_var(d.sort.width, d.name);
    }
    Internalizer in(s, syms);
    for (auto const& a : assertions)
        in.assert_term(a);
    return syms;
}

Env model_env(std::vector<Decl> const& decls, Symbols const& syms, Solver const& s) {
    Env env;
    for (auto const& d : decls) {
        Value v;
        if (d.sort.is_bool())
            v.b = s.model_lit(syms.boolean.at(d.name));
        else
            v.v = s.model_value(syms.bv.at(d.name));
        env[d.name] = v;
    }
    return env;
}

OracleResult oracle_solve(std::vector<Decl> const& decls, std::vector<TermRef> const& assertions, unsigned max_bits) {
    unsigned total = 0;
    for (auto const& d : decls)
        total += d.sort.is_bool() ? 1 : d.sort.width;
    if (total > max_bits || total >= 64)
        throw std::runtime_error("oracle refuses: " + std::to_string(total) + " declared bits exceed the bound of " +
                                 std::to_string(max_bits));
    Env env;
    for (uint64_t code = 0; code < (uint64_t(1) << total); ++code) {
        unsigned off = 0;
        for (auto const& d : decls) {
            Value v;
            if (d.sort.is_bool()) {
                v.b = (code >> off) & 1;
                off += 1;
            } else {
                v.v = BvVal(d.sort.width, (code >> off) & ((uint64_t(1) << d.sort.width) - 1));
                off += d.sort.width;
            }
            env[d.name] = v;
        }
        bool ok = true;
        for (auto const& a : assertions)
            if (!eval(a, env).b) {
                ok = false;
                break;
            }
        if (ok)
            return {Verdict::sat, env};
    }
    return {Verdict::unsat, {}};
}

std::string format_value(BvVal const& v) {
    return v.width() % 4 == 0 ? "#x" + v.to_hex() : "#b" + v.to_bin();
}

std::string format_model(std::vector<Decl> const& decls, Env const& env) {
    std::string out = "(model\n";
    for (auto const& d : decls) {
        Value const& v = env.at(d.name);
        out += "  (define-fun " + d.name + " () " + sort_string(d.sort) + " " +
               (d.sort.is_bool() ? std::string(v.b ? "true" : "false") : format_value(v.v)) + ")\n";
    }
    return out + ")";
}

std::optional<Verdict> run_script(Script const& script, RunOptions const& opts, std::ostream& out) {
    std::vector<Decl> decls;
    std::vector<TermRef> assertions;
    std::optional<Verdict> last;
    std::optional<Env> model;
    for (auto const& c : script.commands) {
        switch (c.kind) {
        case Command::declare:
            decls.push_back(c.decl);
            break;
        case Command::assert_:
            assertions.push_back(c.term);
            break;
        case Command::check_sat: {
            model.reset();
            if (opts.oracle) {
                auto r = oracle_solve(decls, assertions, opts.oracle_bits);
                last = r.verdict;
                if (r.verdict == Verdict::sat)
                    model = r.model;
            } else {
                Solver s;
                s.set_seed(opts.seed);
                s.set_trace(opts.trace);
                Symbols syms = internalize(decls, assertions, s);
                Budget b;
                b.seconds = opts.timeout;
                b.max_conflicts = opts.max_conflicts;
                last = s.solve(b);
                if (*last == Verdict::sat) {
                    model = model_env(decls, syms, s);
                    for (auto const& a : assertions)
                        if (!eval(a, *model).b)
                            throw std::logic_error("model does not satisfy assertion " + print(a));
                }
            }
            out << verdict_name(*last) << "\n";
            break;
        }
        case Command::get_model:
            if (model)
                out << format_model(decls, *model) << "\n";
            else
                out << "(error \"no model available\")\n";
            break;
        case Command::exit_:
            return last;
        default:
            break;
        }
    }
    return last;
}

}
