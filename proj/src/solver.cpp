#include "polysat/solver.h"

#include "polysat/lemmas.h"
#include "polysat/viable.h"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace polysat {

char const* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::sat:
        return "sat";
    case Verdict::unsat:
        return "unsat";
    default:
        return "unknown";
    }
}

namespace {

enum class LBool : int8_t { undef, t, f };

constexpr int reason_decision = -1;
constexpr int reason_eval = -2;
constexpr unsigned max_generation = 3;

inline unsigned atom_of(Lit l) { return l >> 1; }
inline bool is_neg(Lit l) { return (l & 1u) != 0; }
inline Lit mk_lit(unsigned atom, bool negated) { return (atom << 1) | (negated ? 1u : 0u); }

uint64_t luby(uint64_t i) {
    uint64_t size = 1, seq = 0;
    while (size < i + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    uint64_t x = i;
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    return uint64_t(1) << seq;
}

}

struct Solver::Impl {
    struct Atom {
        bool is_bool = true;
        Constraint c;
        std::vector<Var> vars;
        // x + k = 0 with coefficient 1 fixes x to -k.
        Var assign_var = null_var;
        BvVal assign_val;
        unsigned generation = 0;
    };
    struct ClauseData {
        std::vector<Lit> lits;
        bool learned = false;
    };

    std::vector<unsigned> widths;
    std::vector<std::string> names;
    std::vector<std::vector<unsigned>> var_atoms;
    std::vector<Lit> var_lit;
    std::vector<unsigned> var_level;
    std::vector<BvVal> saved_value;
    Assignment gamma;
    SliceGraph slices;

    std::vector<Atom> atoms;
    std::unordered_map<Constraint, unsigned> atom_index;
    std::vector<LBool> val;
    std::vector<unsigned> level;
    std::vector<int> reason;

    std::vector<ClauseData> clauses;
    std::vector<unsigned> input_clauses;
    std::vector<std::vector<unsigned>> watches;

    std::vector<Lit> trail;
    std::vector<size_t> trail_lim;
    size_t qhead = 0;
    std::vector<unsigned> pending_eval;
    std::vector<unsigned> violations;
    bool inconsistent = false;
    bool solving = false;
    unsigned next_generation = 0;

    std::ostream* trace = nullptr;
    std::mt19937_64 rng{0};
    SolverStats stats;
    Assignment model;

    Impl() {
        Atom a;
        add_atom(std::move(a));
        assign(mk_lit(0, false), reason_decision);
    }

    unsigned decision_level() const { return static_cast<unsigned>(trail_lim.size()); }

    VarNamer namer() const {
        return [this](Var x) { return x < names.size() && !names[x].empty() ? names[x] : default_var_name(x); };
    }

    LBool value(Lit l) const {
        LBool v = val[atom_of(l)];
        if (v == LBool::undef)
            return v;
        return ((v == LBool::t) != is_neg(l)) ? LBool::t : LBool::f;
    }

    unsigned add_atom(Atom a) {
        unsigned id = static_cast<unsigned>(atoms.size());
        for (Var v : a.vars)
            var_atoms[v].push_back(id);
        atoms.push_back(std::move(a));
        val.push_back(LBool::undef);
        level.push_back(0);
        reason.push_back(reason_decision);
        watches.emplace_back();
        watches.emplace_back();
        if (!atoms.back().is_bool && evaluable(id))
            pending_eval.push_back(id);
        return id;
    }

    Var add_var(unsigned w, std::string name) {
        if (w == 0)
            throw usage_error("zero-width variable");
        Var x = static_cast<Var>(widths.size());
        widths.push_back(w);
        names.push_back(std::move(name));
        var_atoms.emplace_back();
        var_lit.push_back(0);
        var_level.push_back(0);
        saved_value.push_back(BvVal::zero(w));
        slices.add_var(x, w);
        return x;
    }

    void check_var(Var x) const {
        if (x >= widths.size())
            throw usage_error("unknown variable");
    }

    Lit true_lit() const { return mk_lit(0, false); }

    Lit lit(SignedConstraint const& sc0) {
        SignedConstraint sc = normalize(sc0);
        for (Var v : sc.vars())
            check_var(v);
        if (sc.is_always_true())
            return true_lit();
        if (sc.is_always_false())
            return neg(true_lit());
        Constraint const& c = sc.constraint();
        auto it = atom_index.find(c);
        unsigned id;
        if (it != atom_index.end()) {
            id = it->second;
        } else {
            Atom a;
            a.is_bool = false;
            a.c = c;
            a.vars = c.vars();
            a.vars.erase(std::unique(a.vars.begin(), a.vars.end()), a.vars.end());
            a.generation = next_generation;
            if (c.is_eq() && c.p().is_linear() && c.p().terms().size() == 1 && c.p().terms()[0].second.is_one()) {
                a.assign_var = c.p().terms()[0].first[0];
                a.assign_val = neg(c.p().const_term());
            }
            id = add_atom(std::move(a));
            atom_index.emplace(c, id);
        }
        return mk_lit(id, !sc.is_positive());
    }

    SignedConstraint constraint_of(Lit l) const { return SignedConstraint(atoms[atom_of(l)].c, !is_neg(l)); }

    // Value fixed by an assignment-form literal; at one bit x != v fixes x too.
    std::optional<BvVal> assigned_value(Lit l) const {
        Atom const& at = atoms[atom_of(l)];
        if (at.is_bool || at.assign_var == null_var)
            return std::nullopt;
        if (!is_neg(l))
            return at.assign_val;
        if (at.assign_val.width() == 1)
            return at.assign_val + BvVal::one(1);
        return std::nullopt;
    }

    bool evaluable(unsigned a) const {
        for (Var v : atoms[a].vars)
            if (!gamma.is_assigned(v))
                return false;
        return true;
    }

    // Truth value of the positive atom under gamma.
    bool eval_atom(unsigned a) const { return *atoms[a].c.eval(gamma); }

    unsigned semantic_level(unsigned a) const {
        unsigned l = 0;
        for (Var v : atoms[a].vars)
            l = std::max(l, var_level[v]);
        return l;
    }

    void assign(Lit l, int why) {
        unsigned a = atom_of(l);
        val[a] = is_neg(l) ? LBool::f : LBool::t;
        level[a] = decision_level();
        reason[a] = why;
        trail.push_back(l);
    }

    std::string lit_string(Lit l) const {
        if (atoms[atom_of(l)].is_bool)
            return (is_neg(l) ? "~b" : "b") + std::to_string(atom_of(l));
        return constraint_of(l).to_string(namer());
    }

    std::string clause_string(std::vector<Lit> const& c) const {
        std::string s;
        for (size_t i = 0; i < c.size(); ++i) {
            if (i)
                s += " | ";
            s += lit_string(c[i]);
        }
        return s.empty() ? "false" : s;
    }

    void log(std::string const& kind, std::string const& payload) {
        if (trace)
            *trace << kind << '\t' << decision_level() << '\t' << payload << '\n';
    }

    unsigned add_clause_data(std::vector<Lit> lits, bool learned) {
        unsigned id = static_cast<unsigned>(clauses.size());
        clauses.push_back(ClauseData{std::move(lits), learned});
        auto const& c = clauses.back().lits;
        if (c.size() >= 2) {
            watches[c[0]].push_back(id);
            watches[c[1]].push_back(id);
        }
        return id;
    }

    void add_input_clause(std::vector<Lit> c) {
        if (solving)
            throw usage_error("clauses can only be added before solving");
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i + 1] == neg(c[i]))
                return;
        std::vector<Lit> kept;
        for (Lit l : c) {
            if (atom_of(l) >= atoms.size())
                throw usage_error("unknown literal");
            LBool v = value(l);
            if (v == LBool::t && level[atom_of(l)] == 0 && atoms[atom_of(l)].is_bool)
                return;
            if (v == LBool::f && level[atom_of(l)] == 0 && atoms[atom_of(l)].is_bool)
                continue;
            kept.push_back(l);
        }
        // Unassigned first so the watches are sound.
        std::stable_partition(kept.begin(), kept.end(), [&](Lit l) { return value(l) != LBool::f; });
        unsigned id = add_clause_data(kept, false);
        input_clauses.push_back(id);
        if (kept.empty()) {
            inconsistent = true;
        } else if (kept.size() == 1 || value(kept[1]) == LBool::f) {
            if (value(kept[0]) == LBool::f)
                inconsistent = true;
            else if (value(kept[0]) == LBool::undef)
                assign(kept[0], static_cast<int>(id));
        }
    }

    // Clause that justifies an eval-propagated literal l: l or some assignment differs.
    std::vector<Lit> eval_reason(Lit l) const {
        std::vector<Lit> r{l};
        for (Var v : atoms[atom_of(l)].vars)
            r.push_back(neg(var_lit[v]));
        return r;
    }

    std::vector<Lit> reason_lits(unsigned a) const {
        Lit l = mk_lit(a, val[a] == LBool::f);
        if (reason[a] == reason_eval)
            return eval_reason(l);
        return clauses[reason[a]].lits;
    }

    void assign_var(Var x, BvVal const& v, Lit by) {
        gamma.set(x, v);
        var_lit[x] = by;
        var_level[x] = decision_level();
        saved_value[x] = v;
    }

    // Conflict clause or nothing.
    std::optional<std::vector<Lit>> on_var_assigned(Var x, Lit by) {
        auto fr = slices.assert_fixed(Slice{x, widths[x] - 1, 0}, gamma.value(x), atom_of(by));
        if (fr.conflict) {
            std::vector<Lit> c;
            for (Reason r : *fr.conflict)
                c.push_back(mk_lit(r, true));
            return c;
        }
        for (unsigned b : var_atoms[x]) {
            if (!evaluable(b))
                continue;
            bool tv = eval_atom(b);
            if (val[b] == LBool::undef) {
                assign(mk_lit(b, !tv), reason_eval);
                ++stats.propagations;
            } else if ((val[b] == LBool::t) != tv) {
                violations.push_back(b);
            }
        }
        return std::nullopt;
    }

    std::optional<std::vector<Lit>> propagate() {
        while (true) {
            if (!pending_eval.empty()) {
                auto pend = std::move(pending_eval);
                pending_eval.clear();
                for (unsigned a : pend) {
                    if (val[a] != LBool::undef || !evaluable(a))
                        continue;
                    assign(mk_lit(a, !eval_atom(a)), reason_eval);
                    ++stats.propagations;
                }
                continue;
            }
            if (qhead >= trail.size())
                return std::nullopt;
            Lit l = trail[qhead++];
            unsigned a = atom_of(l);
            Atom const& at = atoms[a];
            if (!at.is_bool) {
                if (auto v = assigned_value(l)) {
                    Var x = at.assign_var;
                    if (!gamma.is_assigned(x)) {
                        assign_var(x, *v, l);
                        if (auto c = on_var_assigned(x, l))
                            return c;
                    } else if (gamma.value(x) != *v) {
                        return std::vector<Lit>{neg(l), neg(var_lit[x])};
                    }
                } else if (evaluable(a) && eval_atom(a) == is_neg(l)) {
                    violations.push_back(a);
                }
            }
            Lit f = neg(l);
            auto& ws = watches[f];
            size_t i = 0, j = 0;
            while (i < ws.size()) {
                unsigned cid = ws[i++];
                auto& c = clauses[cid].lits;
                if (c[0] == f)
                    std::swap(c[0], c[1]);
                if (value(c[0]) == LBool::t) {
                    ws[j++] = cid;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.size(); ++k) {
                    if (value(c[k]) != LBool::f) {
                        std::swap(c[1], c[k]);
                        watches[c[1]].push_back(cid);
                        moved = true;
                        break;
                    }
                }
                if (moved)
                    continue;
                ws[j++] = cid;
                if (value(c[0]) == LBool::f) {
                    while (i < ws.size())
                        ws[j++] = ws[i++];
                    ws.resize(j);
                    return c;
                }
                assign(c[0], static_cast<int>(cid));
                ++stats.propagations;
            }
            ws.resize(j);
        }
    }

    void backtrack(unsigned lvl) {
        if (lvl >= decision_level())
            return;
        size_t target = trail_lim[lvl];
        std::vector<unsigned> popped;
        while (trail.size() > target) {
            Lit l = trail.back();
            trail.pop_back();
            unsigned a = atom_of(l);
            Atom const& at = atoms[a];
            if (assigned_value(l) && gamma.is_assigned(at.assign_var) && var_lit[at.assign_var] == l)
                gamma.unset(at.assign_var);
            val[a] = LBool::undef;
            if (!at.is_bool)
                popped.push_back(a);
        }
        slices.pop(decision_level() - lvl);
        trail_lim.resize(lvl);
        qhead = trail.size();
        for (unsigned a : popped)
            if (evaluable(a))
                pending_eval.push_back(a);
        violations.clear();
    }

    void decide(Lit l) {
        trail_lim.push_back(trail.size());
        slices.push();
        assign(l, reason_decision);
        ++stats.decisions;
        log("decide", lit_string(l));
    }

    // Learns from a falsified clause. Returns false when the conflict is at level 0.
    bool resolve_conflict(std::vector<Lit> c) {
        ++stats.conflicts;
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        unsigned top = 0;
        for (Lit l : c) {
            unsigned a = atom_of(l);
            LBool v = value(l);
            if (v == LBool::t)
                throw std::logic_error("conflict clause has a true literal: " + lit_string(l));
            if (v == LBool::f) {
                top = std::max(top, level[a]);
            } else {
                if (atoms[a].is_bool || !evaluable(a) || eval_atom(a) != is_neg(l))
                    throw std::logic_error("conflict clause literal not false: " + lit_string(l));
                top = std::max(top, semantic_level(a));
            }
        }
        backtrack(top);
        for (Lit l : c)
            if (value(l) == LBool::undef)
                assign(neg(l), reason_eval);
        if (top == 0)
            return false;

        // Keep theory lemmas; watch the two deepest literals.
        std::sort(c.begin(), c.end(), [&](Lit x, Lit y) { return level[atom_of(x)] > level[atom_of(y)]; });
        if (c.size() >= 2)
            add_clause_data(c, true);

        std::vector<bool> seen(atoms.size(), false);
        std::vector<Lit> learned{0};
        unsigned counter = 0;
        auto visit = [&](Lit l) {
            unsigned a = atom_of(l);
            if (seen[a] || level[a] == 0)
                return;
            seen[a] = true;
            if (level[a] == top)
                ++counter;
            else
                learned.push_back(l);
        };
        for (Lit l : c)
            visit(l);
        size_t idx = trail.size();
        Lit uip = 0;
        while (true) {
            Lit t;
            do {
                t = trail[--idx];
            } while (!seen[atom_of(t)]);
            if (--counter == 0) {
                uip = neg(t);
                break;
            }
            for (Lit r : reason_lits(atom_of(t)))
                if (r != t)
                    visit(r);
        }
        learned[0] = uip;
        unsigned bj = 0;
        size_t second = 0;
        for (size_t i = 1; i < learned.size(); ++i) {
            if (level[atom_of(learned[i])] > bj) {
                bj = level[atom_of(learned[i])];
                second = i;
            }
        }
        if (second)
            std::swap(learned[1], learned[second]);
        backtrack(bj);
        unsigned cid = add_clause_data(learned, true);
        assign(uip, static_cast<int>(cid));
        log("learn", clause_string(learned));
        return true;
    }

    std::vector<Lit> to_lits(Clause const& c) {
        std::vector<Lit> r;
        for (auto const& sc : c) {
            Lit l = lit(sc);
            if (l == neg(true_lit()))
                continue;
            r.push_back(l);
        }
        return r;
    }

    std::vector<Lit> lemma_for_violation(unsigned a) {
        Lit V = mk_lit(a, val[a] == LBool::f);
        SignedConstraint vc = constraint_of(V);
        std::vector<SignedConstraint> asserted;
        for (Lit l : trail) {
            Atom const& at = atoms[atom_of(l)];
            if (at.is_bool || at.assign_var != null_var)
                continue;
            asserted.push_back(constraint_of(l));
        }
        auto value_fn = [this](SignedConstraint const& sc) -> std::optional<bool> {
            SignedConstraint n = normalize(sc);
            if (n.is_always_true())
                return true;
            if (n.is_always_false())
                return false;
            auto it = atom_index.find(n.constraint());
            if (it != atom_index.end() && val[it->second] != LBool::undef)
                return (val[it->second] == LBool::t) == n.is_positive();
            return n.eval(gamma);
        };
        unsigned gen = 0;
        bool limit = true;
        auto accept = [&](LemmaClause const& lc) {
            unsigned g = 0;
            bool fresh = false;
            for (auto const& sc : lc.lits) {
                SignedConstraint n = normalize(sc);
                if (n.constraint().is_const())
                    continue;
                auto it = atom_index.find(n.constraint());
                if (it == atom_index.end())
                    fresh = true;
                else
                    g = std::max(g, atoms[it->second].generation);
            }
            if (limit && fresh && g + 1 > max_generation)
                return false;
            gen = g + 1;
            return true;
        };
        LemmaContext ctx{gamma, asserted, value_fn, accept};
        if (at_assign_form(a)) {
            ++stats.eval_lemmas;
            return eval_reason(neg(V));
        }
        for (Stage s : {Stage::saturation, Stage::linearization, Stage::bitblast}) {
            limit = s != Stage::bitblast;
            auto lc = find_lemma(vc, s, ctx);
            if (!lc)
                continue;
            if (s == Stage::saturation)
                ++stats.saturation_lemmas;
            else if (s == Stage::linearization)
                ++stats.linearization_lemmas;
            else
                ++stats.bitblast_lemmas;
            next_generation = gen;
            auto lits = to_lits(lc->lits);
            next_generation = 0;
            log("lemma", std::string(stage_name(s)) + "\t" + lc->rule + "\t" + clause_string(lits));
            return lits;
        }
        ++stats.eval_lemmas;
        auto r = eval_reason(neg(V));
        log("lemma", "eval\tassignment\t" + clause_string(r));
        return r;
    }

    bool at_assign_form(unsigned a) const { return atoms[a].assign_var != null_var; }

    std::optional<unsigned> pick_violation() {
        while (!violations.empty()) {
            unsigned a = violations.back();
            if (val[a] != LBool::undef && evaluable(a) && eval_atom(a) != (val[a] == LBool::t))
                return a;
            violations.pop_back();
        }
        return std::nullopt;
    }

    std::optional<Lit> pick_bool_decision() {
        for (unsigned cid : input_clauses) {
            auto const& c = clauses[cid].lits;
            bool sat = false;
            for (Lit l : c)
                if (value(l) == LBool::t) {
                    sat = true;
                    break;
                }
            if (sat)
                continue;
            std::optional<Lit> fallback;
            for (Lit l : c) {
                if (value(l) != LBool::undef)
                    continue;
                unsigned a = atom_of(l);
                if (assigned_value(l)) {
                    if (!fallback)
                        fallback = l;
                    continue;
                }
                return l;
            }
            if (fallback)
                return fallback;
        }
        return std::nullopt;
    }

    std::optional<Var> pick_var() const {
        for (Var x = 0; x < widths.size(); ++x)
            if (!gamma.is_assigned(x))
                return x;
        return std::nullopt;
    }

    // Decides a value for x or resolves a viable conflict. False on a level-0 conflict.
    bool decide_var(Var x) {
        unsigned w = widths[x];
        auto fixed = slices.fixed_prefix_info(x);
        std::vector<SignedConstraint> cons;
        for (unsigned a : var_atoms[x]) {
            if (val[a] == LBool::undef)
                continue;
            bool ready = true;
            for (Var v : atoms[a].vars)
                if (v != x && !gamma.is_assigned(v))
                    ready = false;
            if (ready)
                cons.push_back(SignedConstraint(atoms[a].c, val[a] == LBool::t));
        }
        ViableSet V(x, w, saved_value[x]);
        ComputeInterval compute = [&](BvVal const& x0) -> Probe {
            Probe p;
            for (auto const& f : fixed) {
                if (auto e = from_fixed_bits(x, x0, f)) {
                    p.kind = Probe::entry;
                    p.fi = std::move(*e);
                    return p;
                }
            }
            Assignment g = gamma;
            g.set(x, x0);
            for (auto const& c : cons) {
                auto ev = c.eval(g);
                if (ev && *ev)
                    continue;
                auto e = extract_interval(x, c, gamma, x0);
                if (!e)
                    continue;
                p.kind = Probe::entry;
                p.fi = std::move(*e);
                return p;
            }
            return p;
        };
        QueryResult r = V.query(compute);
        if (r.kind == QueryResult::conflict) {
            ++stats.viable_conflicts;
            ConflictLemma cl = conflict_lemma(V, r.cycle, gamma);
            auto lits = to_lits(cl.lits);
            for (Reason t : cl.tags)
                lits.push_back(mk_lit(t, true));
            log("viable-conflict", default_var_name(x) + "\t" + clause_string(lits));
            return resolve_conflict(lits);
        }
        Lit d = lit(cs::eq(Poly::var(w, x), Poly(r.value)));
        if (value(d) == LBool::f)
            throw std::logic_error("viable value already excluded");
        if (value(d) == LBool::t)
            return true;
        decide(d);
        return true;
    }

    void final_check() {
        for (unsigned cid : input_clauses) {
            bool ok = false;
            for (Lit l : clauses[cid].lits) {
                unsigned a = atom_of(l);
                if (atoms[a].is_bool) {
                    if (value(l) == LBool::t)
                        ok = true;
                } else if (auto v = constraint_of(l).eval(gamma); v && *v) {
                    ok = true;
                }
                if (ok)
                    break;
            }
            if (!ok)
                throw std::logic_error("model violates input clause " + clause_string(clauses[cid].lits));
        }
    }

    Verdict solve(Budget const& budget) {
        solving = true;
        if (inconsistent)
            return Verdict::unsat;
        auto start = std::chrono::steady_clock::now();
        uint64_t restart_idx = 0;
        uint64_t next_restart = 64 * luby(restart_idx);
        uint64_t conflicts_since = 0;
        uint64_t steps = 0;
        auto out_of_budget = [&] {
            if (stats.conflicts >= budget.max_conflicts)
                return true;
            if ((++steps & 63) == 0) {
                double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                if (s >= budget.seconds)
                    return true;
            }
            return false;
        };
        while (true) {
            if (out_of_budget()) {
                log("result", "unknown");
                return Verdict::unknown;
            }
            if (auto c = propagate()) {
                log("conflict", clause_string(*c));
                if (!resolve_conflict(*c)) {
                    inconsistent = true;
                    log("result", "unsat");
                    return Verdict::unsat;
                }
                ++conflicts_since;
            } else if (auto v = pick_violation()) {
                auto lemma = lemma_for_violation(*v);
                if (!resolve_conflict(lemma)) {
                    inconsistent = true;
                    log("result", "unsat");
                    return Verdict::unsat;
                }
                ++conflicts_since;
            } else if (auto l = pick_bool_decision()) {
                decide(*l);
                continue;
            } else if (auto x = pick_var()) {
                if (!decide_var(*x)) {
                    inconsistent = true;
                    log("result", "unsat");
                    return Verdict::unsat;
                }
                continue;
            } else {
                final_check();
                model = gamma;
                log("result", "sat");
                return Verdict::sat;
            }
            if (conflicts_since >= next_restart) {
                conflicts_since = 0;
                next_restart = 64 * luby(++restart_idx);
                ++stats.restarts;
                log("restart", std::to_string(stats.restarts));
                backtrack(0);
            }
        }
    }
};

Solver::Solver() : m(std::make_unique<Impl>()) {}
Solver::~Solver() = default;

Var Solver::add_var(unsigned width, std::string name) {
    if (m->solving)
        throw usage_error("variables can only be added before solving");
    return m->add_var(width, std::move(name));
}

unsigned Solver::var_width(Var x) const {
    m->check_var(x);
    return m->widths[x];
}

size_t Solver::num_vars() const { return m->widths.size(); }

std::string const& Solver::var_name(Var x) const {
    m->check_var(x);
    return m->names[x];
}

VarNamer Solver::namer() const { return m->namer(); }

Lit Solver::new_bool() {
    if (m->solving)
        throw usage_error("atoms can only be added before solving");
    return mk_lit(m->add_atom(Impl::Atom()), false);
}

Lit Solver::lit(SignedConstraint const& c) { return m->lit(c); }
Lit Solver::true_lit() const { return m->true_lit(); }

void Solver::add_clause(std::vector<Lit> const& c) { m->add_input_clause(c); }

void Solver::add_constraint_clause(std::vector<SignedConstraint> const& c) {
    std::vector<Lit> lits;
    for (auto const& sc : c)
        lits.push_back(m->lit(sc));
    m->add_input_clause(lits);
}

void Solver::add_slice_eq(Slice const& a, Slice const& b) {
    if (m->solving)
        throw usage_error("slice equalities can only be added before solving");
    m->check_var(a.var);
    m->check_var(b.var);
    auto r = m->slices.assert_slice_eq(a, b);
    if (r.conflict)
        m->inconsistent = true;
}

void Solver::set_trace(std::ostream* out) { m->trace = out; }
void Solver::set_seed(uint64_t seed) { m->rng.seed(seed); }

Verdict Solver::solve(Budget const& budget) { return m->solve(budget); }

Assignment const& Solver::model() const { return m->model; }

BvVal Solver::model_value(Var x) const {
    m->check_var(x);
    if (!m->model.is_assigned(x))
        throw usage_error("no model");
    return m->model.value(x);
}

bool Solver::model_lit(Lit l) const {
    if (atom_of(l) >= m->atoms.size())
        throw usage_error("unknown literal");
    auto const& at = m->atoms[atom_of(l)];
    if (!at.is_bool)
        return *SignedConstraint(at.c, !is_neg(l)).eval(m->model);
    return m->value(l) == LBool::t;
}

SolverStats const& Solver::stats() const { return m->stats; }

}
