#include "polysat/slices.h"

#include <algorithm>
#include <set>

namespace polysat {

std::string Slice::to_string(VarNamer const& names) const {
    return names(var) + "[" + std::to_string(hi) + ":" + std::to_string(lo) + "]";
}

namespace {

void add_reasons(std::vector<Reason>& dst, std::vector<Reason> const& src) {
    for (Reason r : src)
        if (std::find(dst.begin(), dst.end(), r) == dst.end())
            dst.push_back(r);
}

}

int SliceGraph::new_node(Var v, unsigned hi, unsigned lo, int parent) {
    int id = static_cast<int>(m_nodes.size());
    m_nodes.push_back(Node{v, hi, lo, parent, -1, -1, id, id});
    m_record.emplace_back();
    return id;
}

void SliceGraph::add_var(Var v, unsigned width) {
    if (width == 0)
        throw usage_error("slice variable width must be positive");
    if (has_var(v)) {
        if (this->width(v) != width)
            throw usage_error("slice variable re-added with a different width");
        return;
    }
    m_root[v] = new_node(v, width - 1, 0, -1);
}

std::vector<Var> SliceGraph::vars() const {
    std::vector<Var> r;
    for (auto const& [v, n] : m_root)
        r.push_back(v);
    std::sort(r.begin(), r.end());
    return r;
}

unsigned SliceGraph::width(Var v) const {
    auto it = m_root.find(v);
    if (it == m_root.end())
        throw usage_error("unknown slice variable");
    return m_nodes[it->second].hi + 1;
}

void SliceGraph::check(Slice const& s) const {
    if (!has_var(s.var))
        throw usage_error("unknown slice variable");
    if (s.lo > s.hi || s.hi >= width(s.var))
        throw usage_error("slice range out of bounds");
}

int SliceGraph::find(int n) {
    while (m_nodes[n].uf != n) {
        m_nodes[n].uf = m_nodes[m_nodes[n].uf].uf;
        n = m_nodes[n].uf;
    }
    return n;
}

std::vector<int> SliceGraph::members(int n) {
    std::vector<int> r{n};
    for (int m = m_nodes[n].next; m != n; m = m_nodes[m].next)
        r.push_back(m);
    return r;
}

void SliceGraph::merge(int a, int b, std::vector<SliceEq>& implied, std::optional<std::vector<Reason>>& conflict) {
    int ra = find(a), rb = find(b);
    if (ra == rb)
        return;
    auto va = leaf_value(a);
    auto vb = leaf_value(b);
    if (va && vb && va->value != vb->value) {
        std::vector<Reason> rs = va->reasons;
        add_reasons(rs, vb->reasons);
        conflict = rs;
        return;
    }
    auto ma = members(a), mb = members(b);
    for (int x : ma)
        for (int y : mb)
            implied.push_back(SliceEq{slice_of(x), slice_of(y)});
    if (ma.size() < mb.size())
        std::swap(ra, rb);
    m_nodes[rb].uf = ra;
    std::swap(m_nodes[a].next, m_nodes[b].next);
    if (!m_record[ra] && m_record[rb])
        m_record[ra] = m_record[rb];
}

void SliceGraph::split(int n, unsigned pos, std::vector<SliceEq>& implied) {
    unsigned k = pos - m_nodes[n].lo;
    auto ms = members(n);
    for (int m : ms) {
        Node const nd = m_nodes[m];
        int lo = new_node(nd.var, nd.lo + k - 1, nd.lo, m);
        int hi = new_node(nd.var, nd.hi, nd.lo + k, m);
        m_nodes[m].child_lo = lo;
        m_nodes[m].child_hi = hi;
    }
    std::optional<std::vector<Reason>> conflict;
    for (size_t i = 1; i < ms.size(); ++i) {
        merge(m_nodes[ms[0]].child_lo, m_nodes[ms[i]].child_lo, implied, conflict);
        merge(m_nodes[ms[0]].child_hi, m_nodes[ms[i]].child_hi, implied, conflict);
    }
}

void SliceGraph::cut(Var v, unsigned pos, std::vector<SliceEq>& implied) {
    int n = m_root.at(v);
    if (pos == 0 || pos > m_nodes[n].hi)
        return;
    while (true) {
        if (is_leaf(n)) {
            split(n, pos, implied);
            return;
        }
        int hi = m_nodes[n].child_hi;
        if (pos == m_nodes[hi].lo)
            return;
        n = pos < m_nodes[hi].lo ? m_nodes[n].child_lo : hi;
    }
}

void SliceGraph::leaves(int n, unsigned hi, unsigned lo, std::vector<int>& out) {
    Node const& nd = m_nodes[n];
    if (nd.hi < lo || nd.lo > hi)
        return;
    if (is_leaf(n)) {
        out.push_back(n);
        return;
    }
    int cl = nd.child_lo, ch = nd.child_hi;
    leaves(cl, hi, lo, out);
    leaves(ch, hi, lo, out);
}

std::vector<int> SliceGraph::leaves_of(Slice const& s, std::vector<SliceEq>& implied) {
    cut(s.var, s.lo, implied);
    cut(s.var, s.hi + 1, implied);
    std::vector<int> out;
    leaves(m_root.at(s.var), s.hi, s.lo, out);
    return out;
}

std::optional<SliceGraph::Record> SliceGraph::leaf_value(int n) {
    for (int m : members(n)) {
        for (int a = m; a >= 0; a = m_nodes[a].parent) {
            auto const& rec = m_record[find(a)];
            if (rec) {
                Node const& an = m_nodes[a];
                Node const& mn = m_nodes[m];
                return Record{extract(rec->value, mn.hi - an.lo, mn.lo - an.lo), rec->reasons};
            }
        }
    }
    return std::nullopt;
}

void SliceGraph::refine(Slice const& a, Slice const& b, std::vector<int>& la, std::vector<int>& lb, std::vector<SliceEq>& implied) {
    cut(a.var, a.lo, implied);
    cut(a.var, a.hi + 1, implied);
    cut(b.var, b.lo, implied);
    cut(b.var, b.hi + 1, implied);
    while (true) {
        la.clear();
        lb.clear();
        leaves(m_root.at(a.var), a.hi, a.lo, la);
        leaves(m_root.at(b.var), b.hi, b.lo, lb);
        std::set<unsigned> oa, ob;
        for (int n : la)
            oa.insert(m_nodes[n].lo - a.lo);
        for (int n : lb)
            ob.insert(m_nodes[n].lo - b.lo);
        if (oa == ob)
            return;
        for (unsigned o : oa)
            if (!ob.count(o))
                cut(b.var, b.lo + o, implied);
        for (unsigned o : ob)
            if (!oa.count(o))
                cut(a.var, a.lo + o, implied);
    }
}

SliceEqResult SliceGraph::assert_slice_eq(Slice const& a, Slice const& b) {
    check(a);
    check(b);
    if (a.width() != b.width())
        throw usage_error("slice equality width mismatch");
    if (!m_scopes.empty())
        throw usage_error("slice equalities may only be asserted at base scope");
    SliceEqResult res;
    std::vector<int> la, lb;
    refine(a, b, la, lb, res.implied);
    for (size_t i = 0; i < la.size() && !res.conflict; ++i)
        merge(la[i], lb[i], res.implied, res.conflict);
    return res;
}

FixedResult SliceGraph::assert_fixed(Slice const& a, BvVal const& n, Reason reason) {
    check(a);
    if (n.width() != a.width())
        throw usage_error("fixed value width mismatch");
    FixedResult res;
    std::vector<SliceEq> ignored;
    auto la = leaves_of(a, ignored);
    std::vector<int> fresh;
    for (int l : la) {
        Node const nd = m_nodes[l];
        BvVal part = extract(n, nd.hi - a.lo, nd.lo - a.lo);
        auto cur = leaf_value(l);
        if (cur) {
            if (cur->value != part) {
                std::vector<Reason> rs{reason};
                add_reasons(rs, cur->reasons);
                res.conflict = rs;
                return res;
            }
            continue;
        }
        int r = find(l);
        m_record[r] = Record{part, {reason}};
        m_undo.push_back(r);
        fresh.push_back(l);
    }
    std::set<Var> touched;
    for (int l : fresh) {
        for (int m : members(l)) {
            auto v = leaf_value(m);
            res.implied.push_back(FixedSlice{slice_of(m), v->value, v->reasons});
            touched.insert(m_nodes[m].var);
        }
    }
    for (Var v : touched) {
        Slice full{v, width(v) - 1, 0};
        if (full == a)
            continue;
        if (auto f = fixed(full))
            res.implied.push_back(*f);
    }
    return res;
}

std::optional<FixedSlice> SliceGraph::fixed(Slice const& s) {
    check(s);
    std::vector<SliceEq> ignored;
    auto ls = leaves_of(s, ignored);
    std::optional<BvVal> acc;
    std::vector<Reason> reasons;
    for (int l : ls) {
        auto v = leaf_value(l);
        if (!v)
            return std::nullopt;
        acc = acc ? concat(v->value, *acc) : v->value;
        add_reasons(reasons, v->reasons);
    }
    return FixedSlice{s, *acc, reasons};
}

std::vector<FixedSlice> SliceGraph::fixed_prefix_info(Var x) {
    std::vector<FixedSlice> out;
    auto it = m_root.find(x);
    if (it == m_root.end())
        return out;
    std::vector<int> ls;
    leaves(it->second, m_nodes[it->second].hi, 0, ls);
    std::optional<FixedSlice> run;
    for (int l : ls) {
        auto v = leaf_value(l);
        if (!v) {
            if (run)
                out.push_back(*run);
            run.reset();
            continue;
        }
        if (!run) {
            run = FixedSlice{slice_of(l), v->value, v->reasons};
            continue;
        }
        run->slice.hi = m_nodes[l].hi;
        run->value = concat(v->value, run->value);
        add_reasons(run->reasons, v->reasons);
    }
    if (run)
        out.push_back(*run);
    return out;
}

bool SliceGraph::equal(Slice const& a, Slice const& b) {
    check(a);
    check(b);
    if (a.width() != b.width())
        return false;
    if (a == b)
        return true;
    std::vector<SliceEq> ignored;
    std::vector<int> la, lb;
    refine(a, b, la, lb, ignored);
    for (size_t i = 0; i < la.size(); ++i)
        if (find(la[i]) != find(lb[i]))
            return false;
    return true;
}

void SliceGraph::push() { m_scopes.push_back(m_undo.size()); }

void SliceGraph::pop(unsigned n) {
    if (n > m_scopes.size())
        throw usage_error("pop below base scope");
    size_t target = m_scopes[m_scopes.size() - n];
    m_scopes.resize(m_scopes.size() - n);
    while (m_undo.size() > target) {
        m_record[m_undo.back()].reset();
        m_undo.pop_back();
    }
}

}
