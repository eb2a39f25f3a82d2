#include "polysat/bv.h"

#include <sstream>

namespace polysat {

namespace {

void check_width(unsigned w) {
    if (w == 0)
        throw usage_error("bit-vector width must be at least 1");
}

void same_width(BvVal const& a, BvVal const& b) {
    if (a.width() != b.width())
        throw usage_error("bit-vector width mismatch: " + std::to_string(a.width()) + " vs " + std::to_string(b.width()));
}

bigint low_mask(unsigned w) { return (bigint(1) << w) - 1; }

}

BvVal::BvVal(unsigned width, uint64_t v) : m_width(width) {
    check_width(width);
    if (small())
        m_small = v & mask64(width);
    else
        m_big = v;
}

BvVal BvVal::from_int(unsigned width, bigint const& v) {
    check_width(width);
    BvVal r;
    r.m_width = width;
    bigint m = mod(v, modulus(width));
    if (r.small())
        r.m_small = static_cast<uint64_t>(m);
    else
        r.m_big = m;
    return r;
}

BvVal BvVal::max(unsigned width) {
    check_width(width);
    if (width <= 64)
        return BvVal(width, ~uint64_t(0));
    return from_int(width, low_mask(width));
}

BvVal BvVal::pow2(unsigned width, unsigned k) {
    check_width(width);
    if (k >= width)
        return zero(width);
    if (width <= 64)
        return BvVal(width, uint64_t(1) << k);
    return from_int(width, bigint(1) << k);
}

bigint BvVal::to_int() const { return small() ? bigint(m_small) : m_big; }

uint64_t BvVal::to_u64() const {
    if (small())
        return m_small;
    if (m_big > bigint(~uint64_t(0)))
        throw usage_error("value does not fit in 64 bits");
    return static_cast<uint64_t>(m_big);
}

bool BvVal::fits_u64() const { return small() || m_big <= bigint(~uint64_t(0)); }

bool BvVal::is_zero() const { return small() ? m_small == 0 : m_big.is_zero(); }
bool BvVal::is_one() const { return small() ? m_small == 1 : m_big == 1; }
bool BvVal::is_max() const { return small() ? m_small == mask64(m_width) : m_big == low_mask(m_width); }
bool BvVal::is_odd() const { return small() ? (m_small & 1) : bit_test(m_big, 0); }

std::string BvVal::to_string() const { return small() ? std::to_string(m_small) : m_big.str(); }

std::string BvVal::to_hex() const {
    std::string s;
    bigint v = to_int();
    for (unsigned i = 0; i < (m_width + 3) / 4; ++i) {
        unsigned d = static_cast<unsigned>(v & 15);
        s.push_back("0123456789abcdef"[d]);
        v >>= 4;
    }
    return std::string(s.rbegin(), s.rend());
}

std::string BvVal::to_bin() const {
    std::string s(m_width, '0');
    for (unsigned i = 0; i < m_width; ++i)
        if (polysat::bit(*this, i))
            s[m_width - 1 - i] = '1';
    return s;
}

bool operator==(BvVal const& a, BvVal const& b) {
    if (a.m_width != b.m_width)
        return false;
    return a.small() ? a.m_small == b.m_small : a.m_big == b.m_big;
}

bool operator<(BvVal const& a, BvVal const& b) {
    if (a.m_width != b.m_width)
        return a.m_width < b.m_width;
    return a.small() ? a.m_small < b.m_small : a.m_big < b.m_big;
}

size_t BvVal::hash() const {
    size_t h = std::hash<unsigned>()(m_width) * 0x9e3779b97f4a7c15ull;
    if (small())
        return h ^ std::hash<uint64_t>()(m_small);
    return h ^ boost::multiprecision::hash_value(m_big);
}

BvVal add(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (a.small())
        return BvVal(a.m_width, a.m_small + b.m_small);
    return BvVal::from_int(a.m_width, a.m_big + b.m_big);
}

BvVal sub(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (a.small())
        return BvVal(a.m_width, a.m_small - b.m_small);
    return BvVal::from_int(a.m_width, a.m_big - b.m_big);
}

BvVal mul(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (a.small())
        return BvVal(a.m_width, a.m_small * b.m_small);
    return BvVal::from_int(a.m_width, a.m_big * b.m_big);
}

BvVal neg(BvVal const& a) {
    if (a.small())
        return BvVal(a.m_width, uint64_t(0) - a.m_small);
    return BvVal::from_int(a.m_width, -a.m_big);
}

bool ult(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    return a.small() ? a.m_small < b.m_small : a.m_big < b.m_big;
}

BvVal udiv(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (b.is_zero())
        return BvVal::max(a.width());
    if (a.fits_u64() && b.fits_u64() && a.width() <= 64)
        return BvVal(a.width(), a.to_u64() / b.to_u64());
    return BvVal::from_int(a.width(), a.to_int() / b.to_int());
}

BvVal urem(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (b.is_zero())
        return a;
    if (a.width() <= 64)
        return BvVal(a.width(), a.to_u64() % b.to_u64());
    return BvVal::from_int(a.width(), a.to_int() % b.to_int());
}

bool ule(BvVal const& a, BvVal const& b) { return !ult(b, a); }

bool slt(BvVal const& a, BvVal const& b) {
    BvVal off = BvVal::pow2(a.width(), a.width() - 1);
    return ult(a + off, b + off);
}

bool sle(BvVal const& a, BvVal const& b) { return !slt(b, a); }

bool ovfl_mul(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (a.width() <= 32)
        return (a.to_u64() * b.to_u64()) >> a.width() != 0;
    return a.to_int() * b.to_int() >= BvVal::modulus(a.width());
}

bool ovfl_add(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (a.width() <= 63)
        return (a.to_u64() + b.to_u64()) >> a.width() != 0;
    return a.to_int() + b.to_int() >= BvVal::modulus(a.width());
}

unsigned parity(BvVal const& a) {
    if (a.is_zero())
        return a.width();
    if (a.width() <= 64)
        return static_cast<unsigned>(__builtin_ctzll(a.to_u64()));
    return static_cast<unsigned>(lsb(a.to_int()));
}

unsigned msb_index(BvVal const& a) {
    if (a.is_zero())
        return 0;
    if (a.width() <= 64)
        return 64 - static_cast<unsigned>(__builtin_clzll(a.to_u64()));
    return static_cast<unsigned>(msb(a.to_int())) + 1;
}

BvVal extract(BvVal const& a, unsigned h, unsigned l) {
    if (l > h || h >= a.width())
        throw usage_error("extract indices out of range");
    unsigned w = h - l + 1;
    if (a.width() <= 64)
        return BvVal(w, a.to_u64() >> l);
    return BvVal::from_int(w, a.to_int() >> l);
}

BvVal concat(BvVal const& hi, BvVal const& lo) {
    unsigned w = hi.width() + lo.width();
    if (w <= 64)
        return BvVal(w, (hi.to_u64() << lo.width()) | lo.to_u64());
    return BvVal::from_int(w, (hi.to_int() << lo.width()) | lo.to_int());
}

bool bit(BvVal const& a, unsigned i) {
    if (i >= a.width())
        throw usage_error("bit index out of range");
    if (a.width() <= 64)
        return (a.to_u64() >> i) & 1;
    return bit_test(a.to_int(), i);
}

BvVal zext(BvVal const& a, unsigned extra) {
    if (extra == 0)
        return a;
    return concat(BvVal::zero(extra), a);
}

BvVal band(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (a.width() <= 64)
        return BvVal(a.width(), a.to_u64() & b.to_u64());
    return BvVal::from_int(a.width(), a.to_int() & b.to_int());
}

BvVal bor(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (a.width() <= 64)
        return BvVal(a.width(), a.to_u64() | b.to_u64());
    return BvVal::from_int(a.width(), a.to_int() | b.to_int());
}

BvVal bnot(BvVal const& a) { return sub(neg(a), BvVal::one(a.width())); }

BvVal shl(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (b.to_int() >= a.width())
        return BvVal::zero(a.width());
    unsigned k = static_cast<unsigned>(b.to_u64());
    if (a.width() <= 64)
        return BvVal(a.width(), k >= 64 ? 0 : a.to_u64() << k);
    return BvVal::from_int(a.width(), a.to_int() << k);
}

BvVal lshr(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    if (b.to_int() >= a.width())
        return BvVal::zero(a.width());
    unsigned k = static_cast<unsigned>(b.to_u64());
    if (a.width() <= 64)
        return BvVal(a.width(), k >= 64 ? 0 : a.to_u64() >> k);
    return BvVal::from_int(a.width(), a.to_int() >> k);
}

BvVal ashr(BvVal const& a, BvVal const& b) {
    same_width(a, b);
    unsigned w = a.width();
    bool sign = bit(a, w - 1);
    if (b.to_int() >= w)
        return sign ? BvVal::max(w) : BvVal::zero(w);
    unsigned k = static_cast<unsigned>(b.to_u64());
    BvVal r = lshr(a, b);
    if (sign && k > 0) {
        // fill the top k bits
        BvVal fill = sub(BvVal::zero(w), BvVal::pow2(w, w - k));
        r = bor(r, fill);
    }
    return r;
}

BvVal inverse(BvVal const& a) {
    if (!a.is_odd())
        throw usage_error("inverse of an even value");
    // Newton iteration: each step doubles the number of correct low bits.
    BvVal x = a;
    BvVal two = BvVal(a.width(), 2);
    for (unsigned bits = 3; bits < a.width(); bits *= 2)
        x = x * (two - a * x);
    return x;
}

BvVal odd_part(BvVal const& a) {
    if (a.is_zero())
        return a;
    unsigned k = parity(a);
    if (a.width() <= 64)
        return BvVal(a.width(), a.to_u64() >> k);
    return BvVal::from_int(a.width(), a.to_int() >> k);
}

std::ostream& operator<<(std::ostream& out, BvVal const& v) { return out << v.to_string(); }

bigint floor_div(bigint const& a, bigint const& b) {
    bigint q = a / b;
    bigint r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

bigint ceil_div(bigint const& a, bigint const& b) {
    bigint q = a / b;
    bigint r = a % b;
    if (r != 0 && ((r < 0) == (b < 0)))
        ++q;
    return q;
}

bigint mod(bigint const& a, bigint const& m) {
    bigint r = a % m;
    if (r < 0)
        r += m;
    return r;
}

}
