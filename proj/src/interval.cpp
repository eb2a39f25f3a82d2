#include "polysat/interval.h"

namespace polysat {

WInterval::WInterval(BvVal lo, BvVal hi) : m_lo(std::move(lo)), m_hi(std::move(hi)) {
    if (m_lo.width() != m_hi.width())
        throw usage_error("interval bound width mismatch");
}

WInterval WInterval::full(unsigned width) {
    WInterval r(BvVal::zero(width), BvVal::zero(width));
    r.m_full = true;
    return r;
}

bool WInterval::contains(BvVal const& t) const {
    if (t.width() != width())
        throw usage_error("interval membership width mismatch");
    if (m_full)
        return true;
    return ult(t - m_lo, m_hi - m_lo);
}

bigint WInterval::length() const {
    if (m_full)
        return BvVal::modulus(width());
    return (m_hi - m_lo).to_int();
}

bool WInterval::contains(WInterval const& other) const {
    if (other.width() != width())
        throw usage_error("interval width mismatch");
    if (m_full || other.is_empty())
        return true;
    if (other.m_full)
        return false;
    if (is_empty())
        return false;
    // other = [a;b[ inside [lo;hi[: a is a member and the offset of b-1 from lo is below hi-lo.
    BvVal len = m_hi - m_lo;
    BvVal a = other.m_lo - m_lo;
    BvVal last = other.m_hi - BvVal::one(width()) - m_lo;
    return ult(a, len) && ult(last, len) && ule(a, last);
}

WInterval WInterval::complement() const {
    if (m_full)
        return empty(width());
    if (is_empty())
        return full(width());
    return WInterval(m_hi, m_lo);
}

std::string WInterval::to_string() const {
    if (m_full)
        return "full (" + std::to_string(width()) + " bits)";
    return "[" + m_lo.to_string() + " ; " + m_hi.to_string() + "[ (" + std::to_string(width()) + " bits)";
}

BvVal forward(BvVal const& x0, WInterval const& I) {
    if (I.is_full())
        throw usage_error("forward on a full interval");
    if (!I.contains(x0))
        throw usage_error("forward from a non-member");
    return I.hi();
}

std::ostream& operator<<(std::ostream& out, WInterval const& I) { return out << I.to_string(); }

}
