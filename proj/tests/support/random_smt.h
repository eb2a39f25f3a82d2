// Random QF_BV scripts over a few equal-width constants.
#pragma once

#include <random>
#include <string>

namespace polysat::check {

class RandomScript {
    std::mt19937_64& m_rng;
    unsigned m_w;
    unsigned m_nv;

    unsigned pick(unsigned n) { return static_cast<unsigned>(m_rng() % n); }

    std::string constant() {
        std::string s = "#b";
        for (unsigned i = 0; i < m_w; ++i)
            s += pick(2) ? '1' : '0';
        return s;
    }

    std::string leaf() { return pick(3) ? "v" + std::to_string(pick(m_nv)) : constant(); }

    std::string term(unsigned depth) {
        if (depth == 0 || pick(3) == 0)
            return leaf();
        static char const* const un[] = {"bvneg", "bvnot"};
        static char const* const bin[] = {"bvadd", "bvsub", "bvmul", "bvmul", "bvand", "bvor", "bvshl",
                                          "bvlshr", "bvashr", "bvudiv", "bvurem"};
        unsigned k = pick(16);
        if (k < 2)
            return std::string("(") + un[k] + " " + term(depth - 1) + ")";
        if (k == 2 && m_w >= 2) {
            unsigned e = 1 + pick(m_w - 1);
            return "((_ zero_extend " + std::to_string(e) + ") ((_ extract " + std::to_string(m_w - 1 - e) + " 0) " +
                   term(depth - 1) + "))";
        }
        if (k == 3 && m_w >= 2) {
            unsigned hi = pick(m_w - 1);
            return "(concat ((_ extract " + std::to_string(hi) + " 0) " + term(depth - 1) + ") ((_ extract " +
                   std::to_string(m_w - 1) + " " + std::to_string(hi + 1) + ") " + term(depth - 1) + "))";
        }
        return std::string("(") + bin[pick(11)] + " " + term(depth - 1) + " " + term(depth - 1) + ")";
    }

    std::string atom() {
        static char const* const preds[] = {"bvule", "bvult", "bvuge", "bvugt", "bvsle", "bvslt", "bvsge",
                                            "bvsgt", "=", "=", "distinct", "bvumulo", "bvuaddo"};
        return std::string("(") + preds[pick(13)] + " " + term(2) + " " + term(2) + ")";
    }

    std::string formula() {
        unsigned k = pick(10);
        if (k == 0)
            return "(not " + atom() + ")";
        if (k == 1)
            return "(or " + atom() + " " + atom() + ")";
        return atom();
    }

public:
    RandomScript(std::mt19937_64& rng, unsigned w, unsigned nv) : m_rng(rng), m_w(w), m_nv(nv) {}

    std::string script(unsigned nc) {
        std::string s;
        for (unsigned i = 0; i < m_nv; ++i)
            s += "(declare-const v" + std::to_string(i) + " (_ BitVec " + std::to_string(m_w) + "))\n";
        for (unsigned i = 0; i < nc; ++i)
            s += "(assert " + formula() + ")\n";
        return s + "(check-sat)\n";
    }
};

}
