// Bit-vector values in Z/2^w.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace polysat {

using bigint = boost::multiprecision::cpp_int;

class usage_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Values of width <= 64 live in m_small; wider values use m_big.
class BvVal {
    unsigned m_width = 1;
    uint64_t m_small = 0;
    bigint m_big;

    bool small() const { return m_width <= 64; }
    static uint64_t mask64(unsigned w) { return w >= 64 ? ~uint64_t(0) : ((uint64_t(1) << w) - 1); }

public:
    BvVal() = default;
    BvVal(unsigned width, uint64_t v);

    static BvVal from_int(unsigned width, bigint const& v);
    static BvVal zero(unsigned width) { return BvVal(width, 0); }
    static BvVal one(unsigned width) { return BvVal(width, 1); }
    static BvVal max(unsigned width);
    static BvVal pow2(unsigned width, unsigned k);
    static bigint modulus(unsigned width) { return bigint(1) << width; }

    unsigned width() const { return m_width; }
    bigint to_int() const;
    // Only valid when the value fits in 64 bits.
    uint64_t to_u64() const;
    bool fits_u64() const;

    bool is_zero() const;
    bool is_one() const;
    bool is_max() const;
    bool is_odd() const;

    std::string to_string() const;
    std::string to_hex() const;
    std::string to_bin() const;

    friend bool operator==(BvVal const& a, BvVal const& b);
    friend bool operator!=(BvVal const& a, BvVal const& b) { return !(a == b); }
    // Total order: by width, then unsigned value.
    friend bool operator<(BvVal const& a, BvVal const& b);

    size_t hash() const;

    friend BvVal add(BvVal const& a, BvVal const& b);
    friend BvVal sub(BvVal const& a, BvVal const& b);
    friend BvVal mul(BvVal const& a, BvVal const& b);
    friend BvVal neg(BvVal const& a);
    friend bool ult(BvVal const& a, BvVal const& b);
};

BvVal add(BvVal const& a, BvVal const& b);
BvVal sub(BvVal const& a, BvVal const& b);
BvVal mul(BvVal const& a, BvVal const& b);
BvVal neg(BvVal const& a);
BvVal udiv(BvVal const& a, BvVal const& b);
BvVal urem(BvVal const& a, BvVal const& b);

bool ult(BvVal const& a, BvVal const& b);
bool ule(BvVal const& a, BvVal const& b);
bool slt(BvVal const& a, BvVal const& b);
bool sle(BvVal const& a, BvVal const& b);

bool ovfl_mul(BvVal const& a, BvVal const& b);
bool ovfl_add(BvVal const& a, BvVal const& b);

unsigned parity(BvVal const& a);
unsigned msb_index(BvVal const& a);

BvVal extract(BvVal const& a, unsigned h, unsigned l);
BvVal concat(BvVal const& hi, BvVal const& lo);
bool bit(BvVal const& a, unsigned i);
BvVal zext(BvVal const& a, unsigned extra);

BvVal band(BvVal const& a, BvVal const& b);
BvVal bor(BvVal const& a, BvVal const& b);
BvVal bnot(BvVal const& a);
BvVal shl(BvVal const& a, BvVal const& b);
BvVal lshr(BvVal const& a, BvVal const& b);
BvVal ashr(BvVal const& a, BvVal const& b);

// Multiplicative inverse of an odd value.
BvVal inverse(BvVal const& a);
// a = odd * 2^k: returns odd part.
BvVal odd_part(BvVal const& a);

inline BvVal operator+(BvVal const& a, BvVal const& b) { return add(a, b); }
inline BvVal operator-(BvVal const& a, BvVal const& b) { return sub(a, b); }
inline BvVal operator*(BvVal const& a, BvVal const& b) { return mul(a, b); }
inline BvVal operator-(BvVal const& a) { return neg(a); }

std::ostream& operator<<(std::ostream& out, BvVal const& v);

// Mathematical floor/ceil division on integers.
bigint floor_div(bigint const& a, bigint const& b);
bigint ceil_div(bigint const& a, bigint const& b);
// Non-negative residue.
bigint mod(bigint const& a, bigint const& m);

}

template <>
struct std::hash<polysat::BvVal> {
    size_t operator()(polysat::BvVal const& v) const { return v.hash(); }
};
