// Translation of parsed scripts into solver input, brute-force oracle and script execution.
#pragma once

#include "polysat/smtlib.h"
#include "polysat/solver.h"

#include <iosfwd>
#include <optional>

namespace polysat::smt {

struct Symbols {
    std::map<std::string, Var> bv;
    std::map<std::string, Lit> boolean;
};

// Declares every constant and asserts every assertion.
Symbols internalize(std::vector<Decl> const& decls, std::vector<TermRef> const& assertions, Solver& s);

Env model_env(std::vector<Decl> const& decls, Symbols const& syms, Solver const& s);

struct OracleResult {
    Verdict verdict;
    Env model;
};

// Exhaustive search; throws std::runtime_error when the declared bits exceed max_bits.
OracleResult oracle_solve(std::vector<Decl> const& decls, std::vector<TermRef> const& assertions, unsigned max_bits = 24);

// #x for widths divisible by 4, #b otherwise.
std::string format_value(BvVal const& v);
std::string format_model(std::vector<Decl> const& decls, Env const& env);

struct RunOptions {
    double timeout = 60;
    uint64_t max_conflicts = 1000000;
    std::ostream* trace = nullptr;
    bool oracle = false;
    unsigned oracle_bits = 24;
    uint64_t seed = 0;
};

// Executes commands in order, printing one verdict per check-sat. Returns the last verdict.
std::optional<Verdict> run_script(Script const& script, RunOptions const& opts, std::ostream& out);

}
