#include "polysat/viable.h"

#include <algorithm>
#include <set>

namespace polysat {

namespace {

constexpr size_t max_walk = 1'000'000;

BvVal prefix(BvVal const& v, unsigned bits) { return BvVal::from_int(bits, v.to_int()); }

Poly lo_poly(FiEntry const& e) { return e.lo_sym ? *e.lo_sym : Poly(e.interval.lo()); }
Poly hi_poly(FiEntry const& e) { return e.hi_sym ? *e.hi_sym : Poly(e.interval.hi()); }

void push_lit(ConflictLemma& L, SignedConstraint const& c) {
    if (c.is_always_false())
        return;
    if (c.is_always_true())
        throw std::logic_error("conflict lemma literal is trivially true");
    if (std::find(L.lits.begin(), L.lits.end(), c) == L.lits.end())
        L.lits.push_back(c);
}

}

bool is_conflict(std::vector<JStep> const& J) {
    if (J.empty())
        throw usage_error("empty justification");
    JStep const& last = J.back();
    unsigned widest = 0;
    for (size_t i = J.size() - 1; i-- > 0;) {
        if (J[i].id == last.id)
            return widest <= last.bits;
        widest = std::max(widest, J[i].bits);
    }
    return false;
}

bool entry_contains(FiEntry const& e, BvVal const& x0) { return e.interval.contains(prefix(x0, e.bits)); }

BvVal lift_forward(FiEntry const& e, BvVal const& x0) {
    unsigned w = x0.width();
    BvVal low = prefix(x0, e.bits);
    BvVal hi = forward(low, e.interval);
    if (e.bits == w)
        return hi;
    bigint base = x0.to_int() - low.to_int();
    bigint next = base + hi.to_int();
    if (ult(hi, low))
        next += bigint(1) << e.bits;
    return BvVal::from_int(w, next);
}

ViableSet::ViableSet(Var x, unsigned width, BvVal last) : m_var(x), m_width(width), m_last(std::move(last)) {
    if (m_last.width() != width)
        throw usage_error("viable start value width mismatch");
}

size_t ViableSet::add(FiEntry e) {
    if (e.var != m_var || e.bits == 0 || e.bits > m_width || e.interval.width() != e.bits)
        throw usage_error("entry does not fit the variable");
    if (e.interval.is_empty())
        throw usage_error("empty forbidden interval");
    for (size_t i = 0; i < m_entries.size(); ++i)
        if (!m_dropped[i] && m_entries[i].bits == e.bits && m_entries[i].interval.contains(e.interval))
            return i;
    for (size_t i = 0; i < m_entries.size(); ++i)
        if (!m_dropped[i] && m_entries[i].bits == e.bits && e.interval.contains(m_entries[i].interval))
            m_dropped[i] = true;
    m_entries.push_back(std::move(e));
    m_dropped.push_back(false);
    return m_entries.size() - 1;
}

std::vector<size_t> ViableSet::active() const {
    std::vector<size_t> r;
    for (size_t i = 0; i < m_entries.size(); ++i)
        if (!m_dropped[i])
            r.push_back(i);
    return r;
}

QueryResult ViableSet::query(ComputeInterval const& compute) {
    QueryResult res;
    BvVal x0 = m_last;
    for (size_t step = 0; step < max_walk; ++step) {
        std::optional<size_t> pick;
        bigint jump;
        for (size_t i = 0; i < m_entries.size(); ++i) {
            if (m_dropped[i])
                continue;
            FiEntry const& e = m_entries[i];
            if (!entry_contains(e, x0))
                continue;
            if (e.interval.is_full()) {
                res.kind = QueryResult::conflict;
                res.walk.push_back(JStep{i, e.bits});
                res.cycle = {i};
                return res;
            }
            bigint d = (e.interval.hi() - prefix(x0, e.bits)).to_int();
            if (!pick || e.bits < m_entries[*pick].bits || (e.bits == m_entries[*pick].bits && d > jump)) {
                pick = i;
                jump = d;
            }
        }
        if (pick) {
            FiEntry const& e = m_entries[*pick];
            res.walk.push_back(JStep{*pick, e.bits});
            if (is_conflict(res.walk)) {
                size_t k = res.walk.size() - 1;
                while (res.walk[--k].id != *pick) {
                }
                for (size_t j = k; j + 1 < res.walk.size(); ++j)
                    res.cycle.push_back(res.walk[j].id);
                res.kind = QueryResult::conflict;
                return res;
            }
            x0 = lift_forward(e, x0);
            continue;
        }
        Probe p = compute(x0);
        if (p.kind == Probe::entry) {
            if (!p.fi || !entry_contains(*p.fi, x0))
                throw std::logic_error("computed interval does not cover the candidate");
            add(std::move(*p.fi));
            continue;
        }
        res.kind = p.kind == Probe::ok ? QueryResult::found : QueryResult::stuck;
        res.value = x0;
        m_last = x0;
        return res;
    }
    throw std::logic_error("viable walk did not terminate");
}

SignedConstraint member(Poly const& t, Poly const& lo, Poly const& hi) { return cs::ult(t - lo, hi - lo); }

namespace {

// Whether the intervals (all on b bits) cover every value.
bool covers(std::vector<WInterval> const& Is, unsigned b) {
    bigint M = BvVal::modulus(b);
    std::vector<std::pair<bigint, bigint>> segs;
    for (auto const& I : Is) {
        if (I.is_full())
            return true;
        if (I.is_empty())
            continue;
        bigint lo = I.lo().to_int(), hi = I.hi().to_int();
        if (lo < hi) {
            segs.emplace_back(lo, hi);
        } else {
            segs.emplace_back(lo, M);
            segs.emplace_back(bigint(0), hi);
        }
    }
    std::sort(segs.begin(), segs.end());
    bigint reach = 0;
    for (auto const& [lo, hi] : segs) {
        if (lo > reach)
            return false;
        if (hi > reach)
            reach = hi;
    }
    return reach >= M;
}

void pin_bounds(ConflictLemma& L, FiEntry const& e, Assignment const& gamma) {
    if (e.interval.is_full())
        return;
    if (e.lo_sym)
        push_lit(L, ~cs::eq(*e.lo_sym, Poly(*e.lo_sym->value(gamma))));
    if (e.hi_sym)
        push_lit(L, ~cs::eq(*e.hi_sym, Poly(*e.hi_sym->value(gamma))));
}

void add_premises(ConflictLemma& L, FiEntry const& e) {
    if (e.source)
        push_lit(L, ~*e.source);
    for (auto const& s : e.side)
        push_lit(L, ~s);
    L.tags.insert(L.tags.end(), e.tags.begin(), e.tags.end());
}

// Mixed widths: bring every entry down to the narrowest width. Equations are re-derived
// on the low bits, other entries are projected; fails if the result leaves a gap.
std::optional<ConflictLemma> narrowed_lemma(ViableSet const& V, std::vector<size_t> const& cycle, unsigned b,
                                            Assignment const& gamma) {
    ConflictLemma L;
    std::vector<WInterval> Is;
    for (size_t id : cycle) {
        FiEntry const& e = V.entry(id);
        if (e.bits == b) {
            add_premises(L, e);
            pin_bounds(L, e, gamma);
            Is.push_back(e.interval);
            continue;
        }
        if (auto n = narrow_equation(e, b, gamma)) {
            add_premises(L, *n);
            Is.push_back(n->interval);
            continue;
        }
        Projection pr = project_lower(e.interval, b);
        if (pr.kind == Projection::none)
            return std::nullopt;
        add_premises(L, e);
        pin_bounds(L, e, gamma);
        Is.push_back(pr.kind == Projection::contradiction ? WInterval::full(b) : pr.forbidden);
    }
    if (!covers(Is, b))
        return std::nullopt;
    return L;
}

}

ConflictLemma conflict_lemma(ViableSet const& V, std::vector<size_t> const& cycle, Assignment const& gamma) {
    if (cycle.empty())
        throw usage_error("empty cycle");
    std::set<unsigned> widths;
    for (size_t id : cycle)
        widths.insert(V.entry(id).bits);
    ConflictLemma L;
    std::optional<ConflictLemma> narrowed;
    if (widths.size() > 1)
        narrowed = narrowed_lemma(V, cycle, *widths.begin(), gamma);
    if (narrowed) {
        L = std::move(*narrowed);
    } else {
        for (size_t id : cycle)
            add_premises(L, V.entry(id));
        if (widths.size() == 1 && cycle.size() > 1) {
            L.symbolic = true;
            for (size_t i = 0; i < cycle.size(); ++i) {
                FiEntry const& a = V.entry(cycle[i]);
                FiEntry const& b = V.entry(cycle[(i + 1) % cycle.size()]);
                push_lit(L, ~member(hi_poly(a), lo_poly(b), hi_poly(b)));
            }
        } else {
            for (size_t id : cycle)
                pin_bounds(L, V.entry(id), gamma);
        }
    }
    std::sort(L.tags.begin(), L.tags.end());
    L.tags.erase(std::unique(L.tags.begin(), L.tags.end()), L.tags.end());
    return L;
}

std::vector<FiEntry> propagate_assignment(std::vector<SignedConstraint> const& constraints, Assignment const& gamma) {
    std::vector<FiEntry> out;
    for (auto const& c : constraints) {
        std::set<Var> free;
        for (Var v : c.vars())
            if (!gamma.is_assigned(v))
                free.insert(v);
        for (Var v : free)
            if (auto e = extract_interval(v, c, gamma))
                out.push_back(std::move(*e));
    }
    return out;
}

}
