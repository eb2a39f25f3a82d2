// SMT-LIB2 subset for QF_BV: s-expression reader, typed terms, printer and evaluator.
#pragma once

#include "polysat/bv.h"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace polysat::smt {

class input_error : public std::runtime_error {
public:
    unsigned line, col;
    input_error(unsigned line, unsigned col, std::string const& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
};

struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    unsigned line = 0, col = 0;
};

std::vector<SExpr> read_sexprs(std::string const& text);

// Width 0 means Bool.
struct Sort {
    unsigned width = 0;
    bool is_bool() const { return width == 0; }
    friend bool operator==(Sort a, Sort b) { return a.width == b.width; }
    friend bool operator!=(Sort a, Sort b) { return a.width != b.width; }
};
std::string sort_string(Sort s);

enum class Op {
    bv_const, bool_const, var,
    bvadd, bvsub, bvmul, bvneg, bvudiv, bvurem, bvand, bvor, bvnot, bvshl, bvlshr, bvashr,
    bvule, bvult, bvuge, bvugt, bvsle, bvslt, bvsge, bvsgt, bvumulo, bvuaddo,
    eq, distinct, concat, extract, zero_extend,
    land, lor, lnot, implies, ite
};

struct Term;
using TermRef = std::shared_ptr<Term const>;

struct Term {
    Op op;
    Sort sort;
    std::vector<TermRef> args;
    BvVal value;
    bool bval = false;
    std::string name;
    // extract: hi, lo; zero_extend: amount in hi.
    unsigned hi = 0, lo = 0;
};

struct Decl {
    std::string name;
    Sort sort;
};

struct Command {
    enum Kind { set_logic, set_info, set_option, declare, assert_, check_sat, get_model, exit_ } kind;
    std::string text;
    Decl decl;
    TermRef term;
};

struct Script {
    std::vector<Command> commands;
    std::vector<Decl> decls;
};

Script parse(std::string const& text);
std::string print(Script const& s);
std::string print(TermRef const& t);

struct Value {
    bool b = false;
    BvVal v;
};
using Env = std::map<std::string, Value>;

Value eval(TermRef const& t, Env const& env);

}
