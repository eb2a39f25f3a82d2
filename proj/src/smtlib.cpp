#include "polysat/smtlib.h"

#include <cctype>
#include <functional>

namespace polysat::smt {

namespace {

bool is_simple_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string("~!@$%^&*_-+=<>.?/").find(c) != std::string::npos;
}

}

std::vector<SExpr> read_sexprs(std::string const& text) {
    size_t i = 0;
    unsigned line = 1, col = 1;
    auto advance = [&] {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    std::vector<SExpr> top;
    std::vector<SExpr> stack;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        if (c == ';') {
            while (i < text.size() && text[i] != '\n')
                advance();
            continue;
        }
        if (c == '(') {
            SExpr e;
            e.is_list = true;
            e.line = line;
            e.col = col;
            stack.push_back(std::move(e));
            advance();
            continue;
        }
        if (c == ')') {
            if (stack.empty())
                throw input_error(line, col, "unexpected ')'");
            SExpr e = std::move(stack.back());
            stack.pop_back();
            advance();
            (stack.empty() ? top : stack.back().items).push_back(std::move(e));
            continue;
        }
        SExpr a;
        a.line = line;
        a.col = col;
        if (c == '|' || c == '"') {
            char close = c;
            a.atom += c;
            advance();
            while (i < text.size() && text[i] != close) {
                a.atom += text[i];
                advance();
            }
            if (i >= text.size())
                throw input_error(a.line, a.col, close == '|' ? "unterminated quoted symbol" : "unterminated string");
            a.atom += close;
            advance();
        } else {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
                   text[i] != ')' && text[i] != ';') {
                if (text[i] != ':' && text[i] != '#' && !is_simple_char(text[i]))
                    throw input_error(line, col, std::string("unexpected character '") + text[i] + "'");
                a.atom += text[i];
                advance();
            }
        }
        (stack.empty() ? top : stack.back().items).push_back(std::move(a));
    }
    if (!stack.empty())
        throw input_error(stack.back().line, stack.back().col, "unbalanced '('");
    return top;
}

std::string sort_string(Sort s) {
    return s.is_bool() ? "Bool" : "(_ BitVec " + std::to_string(s.width) + ")";
}

namespace {

std::string sexpr_string(SExpr const& e) {
    if (!e.is_list)
        return e.atom;
    std::string s = "(";
    for (size_t i = 0; i < e.items.size(); ++i) {
        if (i)
            s += " ";
        s += sexpr_string(e.items[i]);
    }
    return s + ")";
}

[[noreturn]] void fail(SExpr const& e, std::string const& msg) { throw input_error(e.line, e.col, msg); }

std::string symbol_name(SExpr const& e) {
    if (e.is_list)
        fail(e, "expected a symbol");
    std::string s = e.atom;
    if (s.size() >= 2 && s.front() == '|')
        return s.substr(1, s.size() - 2);
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '#' || s[0] == ':' || s[0] == '"')
        fail(e, "expected a symbol, got '" + s + "'");
    return s;
}

unsigned numeral(SExpr const& e) {
    if (e.is_list || e.atom.empty())
        fail(e, "expected a numeral");
    for (char c : e.atom)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(e, "expected a numeral, got '" + e.atom + "'");
    if (e.atom.size() > 9)
        fail(e, "numeral too large");
    return static_cast<unsigned>(std::stoul(e.atom));
}

Sort parse_sort(SExpr const& e) {
    if (!e.is_list && e.atom == "Bool")
        return Sort{0};
    if (e.is_list && e.items.size() == 3 && !e.items[0].is_list && e.items[0].atom == "_" && !e.items[1].is_list &&
        e.items[1].atom == "BitVec") {
        unsigned w = numeral(e.items[2]);
        if (w == 0)
            fail(e.items[2], "bit-vector width must be positive");
        return Sort{w};
    }
    fail(e, "unsupported sort '" + sexpr_string(e) + "'");
}

TermRef mk(Op op, Sort s, std::vector<TermRef> args) {
    auto t = std::make_shared<Term>();
    t->op = op;
    t->sort = s;
    t->args = std::move(args);
    return t;
}

TermRef mk_bv(BvVal v) {
    auto t = std::make_shared<Term>();
    t->op = Op::bv_const;
    t->sort = Sort{v.width()};
    t->value = std::move(v);
    return t;
}

TermRef mk_bool(bool b) {
    auto t = std::make_shared<Term>();
    t->op = Op::bool_const;
    t->sort = Sort{0};
    t->bval = b;
    return t;
}

struct OpInfo {
    Op op;
    // 0 any arity >= 2, else exact.
    unsigned arity;
    enum Shape { bv_bv, bv_pred, bool_bool, special } shape;
};

std::map<std::string, OpInfo> const& op_table() {
    static std::map<std::string, OpInfo> const t = {
        {"bvadd", {Op::bvadd, 0, OpInfo::bv_bv}},     {"bvsub", {Op::bvsub, 0, OpInfo::bv_bv}},
        {"bvmul", {Op::bvmul, 0, OpInfo::bv_bv}},     {"bvneg", {Op::bvneg, 1, OpInfo::bv_bv}},
        {"bvudiv", {Op::bvudiv, 2, OpInfo::bv_bv}},   {"bvurem", {Op::bvurem, 2, OpInfo::bv_bv}},
        {"bvand", {Op::bvand, 0, OpInfo::bv_bv}},     {"bvor", {Op::bvor, 0, OpInfo::bv_bv}},
        {"bvnot", {Op::bvnot, 1, OpInfo::bv_bv}},     {"bvshl", {Op::bvshl, 2, OpInfo::bv_bv}},
        {"bvlshr", {Op::bvlshr, 2, OpInfo::bv_bv}},   {"bvashr", {Op::bvashr, 2, OpInfo::bv_bv}},
        {"bvule", {Op::bvule, 2, OpInfo::bv_pred}},   {"bvult", {Op::bvult, 2, OpInfo::bv_pred}},
        {"bvuge", {Op::bvuge, 2, OpInfo::bv_pred}},   {"bvugt", {Op::bvugt, 2, OpInfo::bv_pred}},
        {"bvsle", {Op::bvsle, 2, OpInfo::bv_pred}},   {"bvslt", {Op::bvslt, 2, OpInfo::bv_pred}},
        {"bvsge", {Op::bvsge, 2, OpInfo::bv_pred}},   {"bvsgt", {Op::bvsgt, 2, OpInfo::bv_pred}},
        {"bvumulo", {Op::bvumulo, 2, OpInfo::bv_pred}}, {"bvuaddo", {Op::bvuaddo, 2, OpInfo::bv_pred}},
        {"and", {Op::land, 0, OpInfo::bool_bool}},    {"or", {Op::lor, 0, OpInfo::bool_bool}},
        {"not", {Op::lnot, 1, OpInfo::bool_bool}},    {"=>", {Op::implies, 0, OpInfo::bool_bool}},
        {"=", {Op::eq, 0, OpInfo::special}},          {"distinct", {Op::distinct, 0, OpInfo::special}},
        {"concat", {Op::concat, 2, OpInfo::special}}, {"ite", {Op::ite, 3, OpInfo::special}},
    };
    return t;
}

char const* op_name(Op op) {
    for (auto const& [name, info] : op_table())
        if (info.op == op)
            return name.c_str();
    return "?";
}

class Parser {
    std::map<std::string, TermRef> m_globals;
    std::vector<std::map<std::string, TermRef>> m_lets;

    TermRef lookup(std::string const& n) const {
        for (auto it = m_lets.rbegin(); it != m_lets.rend(); ++it) {
            auto f = it->find(n);
            if (f != it->end())
                return f->second;
        }
        auto g = m_globals.find(n);
        return g == m_globals.end() ? nullptr : g->second;
    }

    TermRef literal(SExpr const& e) {
        std::string const& s = e.atom;
        if (s == "true" || s == "false")
            return mk_bool(s == "true");
        if (s.rfind("#b", 0) == 0) {
            if (s.size() == 2)
                fail(e, "empty binary constant");
            bigint v = 0;
            for (size_t i = 2; i < s.size(); ++i) {
                if (s[i] != '0' && s[i] != '1')
                    fail(e, "bad binary constant '" + s + "'");
                v = v * 2 + (s[i] - '0');
            }
            return mk_bv(BvVal::from_int(static_cast<unsigned>(s.size() - 2), v));
        }
        if (s.rfind("#x", 0) == 0) {
            if (s.size() == 2)
                fail(e, "empty hexadecimal constant");
            bigint v = 0;
            for (size_t i = 2; i < s.size(); ++i) {
                if (!std::isxdigit(static_cast<unsigned char>(s[i])))
                    fail(e, "bad hexadecimal constant '" + s + "'");
                char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
                v = v * 16 + (std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : c - 'a' + 10);
            }
            return mk_bv(BvVal::from_int(static_cast<unsigned>(4 * (s.size() - 2)), v));
        }
        if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0])))
            fail(e, "unsupported construct: untyped numeral '" + s + "'");
        std::string n = symbol_name(e);
        if (auto t = lookup(n))
            return t;
        fail(e, "unknown symbol '" + n + "'");
    }

    void expect_bv(SExpr const& e, TermRef const& t) {
        if (t->sort.is_bool())
            fail(e, "expected a bit-vector term");
    }
    void expect_bool(SExpr const& e, TermRef const& t) {
        if (!t->sort.is_bool())
            fail(e, "expected a Boolean term");
    }
    void expect_same(SExpr const& e, TermRef const& a, TermRef const& b) {
        if (a->sort != b->sort)
            fail(e, "sort mismatch: " + sort_string(a->sort) + " vs " + sort_string(b->sort));
    }

    TermRef indexed(SExpr const& e) {
        // ((_ extract h l) t), ((_ zero_extend k) t)
        SExpr const& head = e.items[0];
        if (head.items.size() < 2 || head.items[0].is_list || head.items[0].atom != "_" || head.items[1].is_list)
            fail(head, "unsupported construct '" + sexpr_string(head) + "'");
        std::string const& f = head.items[1].atom;
        if (f == "extract") {
            if (head.items.size() != 4 || e.items.size() != 2)
                fail(e, "extract expects two indices and one argument");
            unsigned h = numeral(head.items[2]), l = numeral(head.items[3]);
            TermRef a = term(e.items[1]);
            expect_bv(e.items[1], a);
            if (h < l || h >= a->sort.width)
                fail(e, "extract indices out of range");
            auto t = std::make_shared<Term>();
            t->op = Op::extract;
            t->sort = Sort{h - l + 1};
            t->args = {a};
            t->hi = h;
            t->lo = l;
            return t;
        }
        if (f == "zero_extend") {
            if (head.items.size() != 3 || e.items.size() != 2)
                fail(e, "zero_extend expects one index and one argument");
            unsigned k = numeral(head.items[2]);
            TermRef a = term(e.items[1]);
            expect_bv(e.items[1], a);
            if (k == 0)
                return a;
            auto t = std::make_shared<Term>();
            t->op = Op::zero_extend;
            t->sort = Sort{a->sort.width + k};
            t->args = {a};
            t->hi = k;
            return t;
        }
        fail(head, "unsupported construct '" + f + "'");
    }

    TermRef let(SExpr const& e) {
        if (e.items.size() != 3 || !e.items[1].is_list)
            fail(e, "malformed let");
        std::map<std::string, TermRef> frame;
        for (auto const& b : e.items[1].items) {
            if (!b.is_list || b.items.size() != 2)
                fail(b, "malformed let binding");
            frame[symbol_name(b.items[0])] = term(b.items[1]);
        }
        m_lets.push_back(std::move(frame));
        TermRef r = term(e.items[2]);
        m_lets.pop_back();
        return r;
    }

public:
    void declare(SExpr const& at, Decl const& d) {
        if (m_globals.count(d.name))
            fail(at, "duplicate declaration of '" + d.name + "'");
        auto t = std::make_shared<Term>();
        t->op = Op::var;
        t->sort = d.sort;
        t->name = d.name;
        m_globals[d.name] = t;
    }

    TermRef term(SExpr const& e) {
        if (!e.is_list)
            return literal(e);
        if (e.items.empty())
            fail(e, "empty term");
        SExpr const& head = e.items[0];
        if (head.is_list)
            return indexed(e);
        std::string const& f = head.atom;
        if (f == "_") {
            // (_ bvN w)
            if (e.items.size() != 3 || e.items[1].is_list || e.items[1].atom.rfind("bv", 0) != 0)
                fail(e, "unsupported construct '" + sexpr_string(e) + "'");
            std::string digits = e.items[1].atom.substr(2);
            if (digits.empty())
                fail(e.items[1], "bad bit-vector literal");
            bigint v = 0;
            for (char c : digits) {
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    fail(e.items[1], "bad bit-vector literal");
                v = v * 10 + (c - '0');
            }
            unsigned w = numeral(e.items[2]);
            if (w == 0)
                fail(e.items[2], "bit-vector width must be positive");
            return mk_bv(BvVal::from_int(w, v));
        }
        if (f == "let")
            return let(e);
        auto it = op_table().find(f);
        if (it == op_table().end())
            fail(head, "unsupported construct '" + f + "'");
        OpInfo info = it->second;
        std::vector<TermRef> args;
        for (size_t i = 1; i < e.items.size(); ++i)
            args.push_back(term(e.items[i]));
        size_t n = args.size();
        if (info.arity ? n != info.arity : n < 2)
            fail(e, std::string("wrong number of arguments to '") + f + "'");
        switch (info.shape) {
        case OpInfo::bv_bv: {
            for (size_t i = 0; i < n; ++i) {
                expect_bv(e.items[i + 1], args[i]);
                expect_same(e.items[i + 1], args[0], args[i]);
            }
            // left-associative chains become nested binary terms
            TermRef acc = args[0];
            if (n == 1)
                return mk(info.op, acc->sort, {acc});
            for (size_t i = 1; i < n; ++i)
                acc = mk(info.op, acc->sort, {acc, args[i]});
            return acc;
        }
        case OpInfo::bv_pred:
            expect_bv(e.items[1], args[0]);
            expect_same(e.items[2], args[0], args[1]);
            return mk(info.op, Sort{0}, args);
        case OpInfo::bool_bool:
            for (size_t i = 0; i < n; ++i)
                expect_bool(e.items[i + 1], args[i]);
            if (info.op == Op::implies) {
                TermRef acc = args[n - 1];
                for (size_t i = n - 1; i-- > 0;)
                    acc = mk(Op::implies, Sort{0}, {args[i], acc});
                return acc;
            }
            return mk(info.op, Sort{0}, args);
        case OpInfo::special:
            break;
        }
        if (info.op == Op::eq || info.op == Op::distinct) {
            for (size_t i = 1; i < n; ++i)
                expect_same(e.items[i + 1], args[0], args[i]);
            if (info.op == Op::distinct || n == 2)
                return mk(info.op, Sort{0}, args);
            std::vector<TermRef> parts;
            for (size_t i = 0; i + 1 < n; ++i)
                parts.push_back(mk(Op::eq, Sort{0}, {args[i], args[i + 1]}));
            return mk(Op::land, Sort{0}, parts);
        }
        if (info.op == Op::concat) {
            expect_bv(e.items[1], args[0]);
            expect_bv(e.items[2], args[1]);
            return mk(Op::concat, Sort{args[0]->sort.width + args[1]->sort.width}, args);
        }
        // ite
        expect_bool(e.items[1], args[0]);
        expect_same(e.items[3], args[1], args[2]);
        return mk(Op::ite, args[1]->sort, args);
    }
};

std::string quote_symbol(std::string const& n) {
    bool simple = !n.empty() && !std::isdigit(static_cast<unsigned char>(n[0]));
    for (char c : n)
        simple = simple && is_simple_char(c);
    return simple ? n : "|" + n + "|";
}

void print_term(TermRef const& t, std::string& out) {
    switch (t->op) {
    case Op::bv_const:
        out += t->value.width() % 4 == 0 ? "#x" + t->value.to_hex() : "#b" + t->value.to_bin();
        return;
    case Op::bool_const:
        out += t->bval ? "true" : "false";
        return;
    case Op::var:
        out += quote_symbol(t->name);
        return;
    case Op::extract:
        out += "((_ extract " + std::to_string(t->hi) + " " + std::to_string(t->lo) + ") ";
        print_term(t->args[0], out);
        out += ")";
        return;
    case Op::zero_extend:
        out += "((_ zero_extend " + std::to_string(t->hi) + ") ";
        print_term(t->args[0], out);
        out += ")";
        return;
    default:
        break;
    }
    out += "(";
    out += op_name(t->op);
    for (auto const& a : t->args) {
        out += " ";
        print_term(a, out);
    }
    out += ")";
}

}

Script parse(std::string const& text) {
    Script s;
    Parser p;
    for (auto const& e : read_sexprs(text)) {
        if (!e.is_list || e.items.empty() || e.items[0].is_list)
            fail(e, "expected a command");
        std::string const& c = e.items[0].atom;
        Command cmd;
        if (c == "set-logic" || c == "set-info" || c == "set-option") {
            cmd.kind = c == "set-logic" ? Command::set_logic : c == "set-info" ? Command::set_info : Command::set_option;
            if (cmd.kind == Command::set_logic && (e.items.size() != 2 || e.items[1].is_list))
                fail(e, "malformed set-logic");
            cmd.text = sexpr_string(e);
        } else if (c == "declare-const" || c == "declare-fun") {
            size_t expect = c == "declare-const" ? 3 : 4;
            if (e.items.size() != expect)
                fail(e, "malformed " + c);
            if (c == "declare-fun" && (!e.items[2].is_list || !e.items[2].items.empty()))
                fail(e.items[2], "unsupported construct: declare-fun with arguments");
            cmd.kind = Command::declare;
            cmd.decl = Decl{symbol_name(e.items[1]), parse_sort(e.items[expect - 1])};
            p.declare(e.items[1], cmd.decl);
            s.decls.push_back(cmd.decl);
        } else if (c == "assert") {
            if (e.items.size() != 2)
                fail(e, "malformed assert");
            cmd.kind = Command::assert_;
            cmd.term = p.term(e.items[1]);
            if (!cmd.term->sort.is_bool())
                fail(e.items[1], "assertion is not Boolean");
        } else if (c == "check-sat" || c == "get-model" || c == "exit") {
            if (e.items.size() != 1)
                fail(e, "malformed " + c);
            cmd.kind = c == "check-sat" ? Command::check_sat : c == "get-model" ? Command::get_model : Command::exit_;
        } else {
            fail(e.items[0], "unsupported command '" + c + "'");
        }
        s.commands.push_back(std::move(cmd));
    }
    return s;
}

std::string print(TermRef const& t) {
    std::string out;
    print_term(t, out);
    return out;
}

std::string print(Script const& s) {
    std::string out;
    for (auto const& c : s.commands) {
        switch (c.kind) {
        case Command::set_logic:
        case Command::set_info:
        case Command::set_option:
            out += c.text;
            break;
        case Command::declare:
            out += "(declare-fun " + quote_symbol(c.decl.name) + " () " + sort_string(c.decl.sort) + ")";
            break;
        case Command::assert_:
            out += "(assert " + print(c.term) + ")";
            break;
        case Command::check_sat:
            out += "(check-sat)";
            break;
        case Command::get_model:
            out += "(get-model)";
            break;
        case Command::exit_:
            out += "(exit)";
            break;
        }
        out += "\n";
    }
    return out;
}

Value eval(TermRef const& t, Env const& env) {
    auto bv = [&](size_t i) { return eval(t->args[i], env).v; };
    auto bo = [&](size_t i) { return eval(t->args[i], env).b; };
    Value r;
    auto B = [&](bool b) {
        r.b = b;
        return r;
    };
    auto V = [&](BvVal v) {
        r.v = std::move(v);
        return r;
    };
    switch (t->op) {
    case Op::bv_const:
        return V(t->value);
    case Op::bool_const:
        return B(t->bval);
    case Op::var: {
        auto it = env.find(t->name);
        if (it == env.end())
            throw std::logic_error("unbound variable " + t->name);
        return it->second;
    }
    case Op::bvadd:
        return V(add(bv(0), bv(1)));
    case Op::bvsub:
        return V(sub(bv(0), bv(1)));
    case Op::bvmul:
        return V(mul(bv(0), bv(1)));
    case Op::bvneg:
        return V(neg(bv(0)));
    case Op::bvudiv:
        return V(udiv(bv(0), bv(1)));
    case Op::bvurem:
        return V(urem(bv(0), bv(1)));
    case Op::bvand:
        return V(band(bv(0), bv(1)));
    case Op::bvor:
        return V(bor(bv(0), bv(1)));
    case Op::bvnot:
        return V(bnot(bv(0)));
    case Op::bvshl:
        return V(shl(bv(0), bv(1)));
    case Op::bvlshr:
        return V(lshr(bv(0), bv(1)));
    case Op::bvashr:
        return V(ashr(bv(0), bv(1)));
    case Op::bvule:
        return B(ule(bv(0), bv(1)));
    case Op::bvult:
        return B(ult(bv(0), bv(1)));
    case Op::bvuge:
        return B(ule(bv(1), bv(0)));
    case Op::bvugt:
        return B(ult(bv(1), bv(0)));
    case Op::bvsle:
        return B(sle(bv(0), bv(1)));
    case Op::bvslt:
        return B(slt(bv(0), bv(1)));
    case Op::bvsge:
        return B(sle(bv(1), bv(0)));
    case Op::bvsgt:
        return B(slt(bv(1), bv(0)));
    case Op::bvumulo:
        return B(ovfl_mul(bv(0), bv(1)));
    case Op::bvuaddo:
        return B(ovfl_add(bv(0), bv(1)));
    case Op::eq:
        if (t->args[0]->sort.is_bool())
            return B(bo(0) == bo(1));
        return B(bv(0) == bv(1));
    case Op::distinct: {
        std::vector<Value> vs;
        for (size_t i = 0; i < t->args.size(); ++i)
            vs.push_back(eval(t->args[i], env));
        bool isb = t->args[0]->sort.is_bool();
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j)
                if (isb ? vs[i].b == vs[j].b : vs[i].v == vs[j].v)
                    return B(false);
        return B(true);
    }
    case Op::concat:
        return V(concat(bv(0), bv(1)));
    case Op::extract:
        return V(extract(bv(0), t->hi, t->lo));
    case Op::zero_extend:
        return V(zext(bv(0), t->hi));
    case Op::land:
        for (size_t i = 0; i < t->args.size(); ++i)
            if (!bo(i))
                return B(false);
        return B(true);
    case Op::lor:
        for (size_t i = 0; i < t->args.size(); ++i)
            if (bo(i))
                return B(true);
        return B(false);
    case Op::lnot:
        return B(!bo(0));
    case Op::implies:
        return B(!bo(0) || bo(1));
    case Op::ite:
        return eval(t->args[bo(0) ? 1 : 2], env);
    }
    throw std::logic_error("bad term");
}

}
