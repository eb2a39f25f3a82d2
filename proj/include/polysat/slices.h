// Equalities between bit-vector ranges and propagation of fixed values.
#pragma once

#include "polysat/bv.h"
#include "polysat/poly.h"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace polysat {

struct Slice {
    Var var = null_var;
    unsigned hi = 0;
    unsigned lo = 0;
    unsigned width() const { return hi - lo + 1; }
    friend bool operator==(Slice const& a, Slice const& b) { return a.var == b.var && a.hi == b.hi && a.lo == b.lo; }
    std::string to_string(VarNamer const& names = default_var_name) const;
};

// Opaque justification tag supplied by the caller.
using Reason = unsigned;

struct SliceEq {
    Slice a;
    Slice b;
};

struct FixedSlice {
    Slice slice;
    BvVal value;
    std::vector<Reason> reasons;
};

struct SliceEqResult {
    std::vector<SliceEq> implied;
    // Set when the merge joins classes holding different constants.
    std::optional<std::vector<Reason>> conflict;
};

struct FixedResult {
    std::vector<FixedSlice> implied;
    std::optional<std::vector<Reason>> conflict;
};

// Slices of a variable form a binary tree of cuts. Leaves are grouped into
// equivalence classes; all members of a class are split alike. Range
// equalities are permanent and only allowed at base scope; fixed values are
// scoped.
class SliceGraph {
    struct Node {
        Var var;
        unsigned hi, lo;
        int parent = -1;
        int child_lo = -1;
        int child_hi = -1;
        int uf;
        int next;
    };
    struct Record {
        BvVal value;
        std::vector<Reason> reasons;
    };

    std::vector<Node> m_nodes;
    std::unordered_map<Var, int> m_root;
    std::vector<std::optional<Record>> m_record;
    std::vector<int> m_undo;
    std::vector<size_t> m_scopes;

    int new_node(Var v, unsigned hi, unsigned lo, int parent);
    int find(int n);
    std::vector<int> members(int n);
    bool is_leaf(int n) const { return m_nodes[n].child_lo < 0; }
    void split(int n, unsigned pos, std::vector<SliceEq>& implied);
    void cut(Var v, unsigned pos, std::vector<SliceEq>& implied);
    void leaves(int n, unsigned hi, unsigned lo, std::vector<int>& out);
    std::vector<int> leaves_of(Slice const& s, std::vector<SliceEq>& implied);
    void refine(Slice const& a, Slice const& b, std::vector<int>& la, std::vector<int>& lb, std::vector<SliceEq>& implied);
    void merge(int a, int b, std::vector<SliceEq>& implied, std::optional<std::vector<Reason>>& conflict);
    std::optional<Record> leaf_value(int n);
    Slice slice_of(int n) const { return Slice{m_nodes[n].var, m_nodes[n].hi, m_nodes[n].lo}; }
    void check(Slice const& s) const;

public:
    void add_var(Var v, unsigned width);
    bool has_var(Var v) const { return m_root.count(v) != 0; }
    std::vector<Var> vars() const;
    unsigned width(Var v) const;

    SliceEqResult assert_slice_eq(Slice const& a, Slice const& b);
    FixedResult assert_fixed(Slice const& a, BvVal const& n, Reason reason);

    std::optional<FixedSlice> fixed(Slice const& s);
    // Maximal runs of fixed bits of x, low to high.
    std::vector<FixedSlice> fixed_prefix_info(Var x);
    bool equal(Slice const& a, Slice const& b);

    void push();
    void pop(unsigned n = 1);
    unsigned scope_level() const { return static_cast<unsigned>(m_scopes.size()); }
};

}
