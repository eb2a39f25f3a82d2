// Half-open wrapping intervals [lo;hi[ over Z/2^w.
#pragma once

#include "polysat/bv.h"

#include <ostream>
#include <string>

namespace polysat {

class WInterval {
    BvVal m_lo;
    BvVal m_hi;
    bool m_full = false;

public:
    WInterval() = default;
    WInterval(BvVal lo, BvVal hi);

    static WInterval full(unsigned width);
    static WInterval empty(unsigned width) { return WInterval(BvVal::zero(width), BvVal::zero(width)); }

    unsigned width() const { return m_lo.width(); }
    BvVal const& lo() const { return m_lo; }
    BvVal const& hi() const { return m_hi; }
    bool is_full() const { return m_full; }
    bool is_empty() const { return !m_full && m_lo == m_hi; }

    bool contains(BvVal const& t) const;
    // Number of members; 2^w for the full interval.
    bigint length() const;
    // True if every member of other is a member of this.
    bool contains(WInterval const& other) const;
    WInterval complement() const;

    std::string to_string() const;

    friend bool operator==(WInterval const& a, WInterval const& b) {
        return a.m_full == b.m_full && a.m_lo == b.m_lo && a.m_hi == b.m_hi;
    }
    friend bool operator!=(WInterval const& a, WInterval const& b) { return !(a == b); }
};

// First value at or after x0, moving upward with wraparound, that is not in I.
BvVal forward(BvVal const& x0, WInterval const& I);

std::ostream& operator<<(std::ostream& out, WInterval const& I);

}
