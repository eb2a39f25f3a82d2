// Viable values of a single variable: forbidden-interval walk and conflict lemmas.
#pragma once

#include "polysat/fi.h"

#include <functional>
#include <optional>
#include <vector>

namespace polysat {

struct JStep {
    size_t id;
    unsigned bits;
};

// True iff the last step repeats an earlier one with no wider step in between.
bool is_conflict(std::vector<JStep> const& J);

// Result of testing a candidate against the constraints not yet turned into intervals.
struct Probe {
    enum Kind { ok, entry, stuck } kind = ok;
    std::optional<FiEntry> fi;
};
using ComputeInterval = std::function<Probe(BvVal const&)>;

struct QueryResult {
    enum Kind { found, conflict, stuck } kind = found;
    BvVal value;
    // Entry ids of the cycle, in walk order, when kind == conflict.
    std::vector<size_t> cycle;
    // Every step taken, including the repeated one.
    std::vector<JStep> walk;
};

// Clause: lits, or the negation of any tagged literal.
struct ConflictLemma {
    std::vector<SignedConstraint> lits;
    std::vector<Reason> tags;
    bool symbolic = false;
};

class ViableSet {
    Var m_var;
    unsigned m_width;
    std::vector<FiEntry> m_entries;
    std::vector<bool> m_dropped;
    BvVal m_last;

public:
    ViableSet(Var x, unsigned width, BvVal last);
    ViableSet(Var x, unsigned width) : ViableSet(x, width, BvVal::zero(width)) {}

    Var var() const { return m_var; }
    unsigned width() const { return m_width; }
    BvVal const& last() const { return m_last; }

    // Adds an entry; an entry already covered by one of the same width is not stored and the
    // covering id is returned. Stored entries covered by the new one are dropped.
    size_t add(FiEntry e);
    FiEntry const& entry(size_t id) const { return m_entries[id]; }
    size_t size() const { return m_entries.size(); }
    bool is_dropped(size_t id) const { return m_dropped[id]; }
    std::vector<size_t> active() const;

    // Algorithm 1.
    QueryResult query(ComputeInterval const& compute);
    QueryResult query() {
        return query([](BvVal const&) { return Probe{}; });
    }
};

// Candidate x0 lies in the entry's interval on the matching prefix.
bool entry_contains(FiEntry const& e, BvVal const& x0);
// Next candidate after leaving e, keeping bits above the prefix and carrying on wraparound.
BvVal lift_forward(FiEntry const& e, BvVal const& x0);

// t in [lo;hi[ as a constraint.
SignedConstraint member(Poly const& t, Poly const& lo, Poly const& hi);

ConflictLemma conflict_lemma(ViableSet const& V, std::vector<size_t> const& cycle, Assignment const& gamma);

// Intervals for other variables that become linear once gamma (which includes the new
// assignment) is applied. Only sample-independent extractions are used.
std::vector<FiEntry> propagate_assignment(std::vector<SignedConstraint> const& constraints, Assignment const& gamma);

}
