// CDCL search over constraint literals and variable assignments.
#pragma once

#include "polysat/constraint.h"
#include "polysat/slices.h"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace polysat {

// 2 * atom + (negated ? 1 : 0)
using Lit = uint32_t;
inline Lit neg(Lit l) { return l ^ 1u; }

enum class Verdict { sat, unsat, unknown };
char const* verdict_name(Verdict v);

struct Budget {
    double seconds = 60;
    uint64_t max_conflicts = 1000000;
};

struct SolverStats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    uint64_t restarts = 0;
    uint64_t viable_conflicts = 0;
    uint64_t saturation_lemmas = 0;
    uint64_t linearization_lemmas = 0;
    uint64_t bitblast_lemmas = 0;
    uint64_t eval_lemmas = 0;
};

class Solver {
    struct Impl;
    std::unique_ptr<Impl> m;

public:
    Solver();
    ~Solver();
    Solver(Solver const&) = delete;
    Solver& operator=(Solver const&) = delete;

    Var add_var(unsigned width, std::string name = "");
    unsigned var_width(Var x) const;
    size_t num_vars() const;
    std::string const& var_name(Var x) const;
    VarNamer namer() const;

    // Fresh propositional atom; returns its positive literal.
    Lit new_bool();
    // Literal of a constraint; constants map to the fixed true/false literal.
    Lit lit(SignedConstraint const& c);
    Lit true_lit() const;

    void add_clause(std::vector<Lit> const& c);
    void add_constraint_clause(std::vector<SignedConstraint> const& c);
    void assert_constraint(SignedConstraint const& c) { add_constraint_clause({c}); }
    // Range equality between variables; only before solving.
    void add_slice_eq(Slice const& a, Slice const& b);

    // One tab-separated record per event.
    void set_trace(std::ostream* out);
    void set_seed(uint64_t seed);

    Verdict solve(Budget const& budget = Budget());

    Assignment const& model() const;
    BvVal model_value(Var x) const;
    // Value of a literal in the final state (after sat).
    bool model_lit(Lit l) const;
    SolverStats const& stats() const;
};

}
