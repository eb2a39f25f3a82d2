// Forbidden-interval extraction.
#pragma once

#include "polysat/constraint.h"
#include "polysat/interval.h"
#include "polysat/slices.h"

#include <optional>
#include <string>
#include <vector>

namespace polysat {

// source && side => x[bits-1:0] not in interval.
struct FiEntry {
    Var var = null_var;
    unsigned bits = 0;
    WInterval interval;
    // Symbolic bounds over the full width; present only when bits equals the variable width.
    std::optional<Poly> lo_sym;
    std::optional<Poly> hi_sym;
    std::optional<SignedConstraint> source;
    std::vector<SignedConstraint> side;
    // Caller-supplied justifications, e.g. literals fixing a sub-slice.
    std::vector<Reason> tags;
    // Set when source and eq_side imply 2^eq_shift * x = eq_rhs.
    std::optional<Poly> eq_rhs;
    unsigned eq_shift = 0;
    std::vector<SignedConstraint> eq_side;

    std::string to_string(VarNamer const& names = default_var_name) const;
};

// For an entry with equation data: x[b-1:0] is forbidden everywhere except the value fixed by the
// equation; the side condition only mentions the low bits of eq_rhs. Requires b <= w - eq_shift.
std::optional<FiEntry> narrow_equation(FiEntry const& e, unsigned b, Assignment const& gamma);

// Closed integer range; nullopt encodes the full domain.
struct IntRange {
    bigint lo;
    bigint hi;
};

// Fixed sub-slice x[h:l] = n. When x0 disagrees: x[h:0] not in [2^l(n+1); 2^l n[.
std::optional<FiEntry> from_fixed_bits(Var x, BvVal const& x0, FixedSlice const& fixed);

// Upper end of the maximal x-range around x0 with a*x mod m in [l, h] (integer view).
// nullopt: no upper bound, i.e. the full domain.
std::optional<bigint> drift_upper(bigint const& a, bigint const& x0, bigint const& l, bigint const& h, bigint const& m);
// Both ends; lower end via x_l = -f(-x0, a, -h, -l, m).
std::optional<IntRange> from_general_coeff(BvVal const& a, BvVal const& x0, bigint const& l, bigint const& h);
// No-overflow core range used as the starting point of the drift procedure.
IntRange general_coeff_core(BvVal const& a, BvVal const& x0, bigint const& l, bigint const& h);

struct Deltas {
    bigint dh;
    bigint dl;
};
// Safe distances above and below x0 for one signed embedding of the coefficients
// (p - 2^w when p_neg, r - 2^w when r_neg).
Deltas diff_coeff_deltas(BvVal const& p, BvVal const& q, BvVal const& r, BvVal const& s, BvVal const& x0, bool strict,
                         bool p_neg, bool r_neg);
// Range of x around x0 where p*x+q > r*x+s (>= when strict) keeps holding.
IntRange from_diff_coeffs(BvVal const& p, BvVal const& q, BvVal const& r, BvVal const& s, BvVal const& x0, bool strict);

// a*x not in [l;h[ (a nonzero) as a forbidden interval on a prefix of x.
struct MultipleResult {
    enum Kind { none, full, interval } kind = none;
    unsigned bits = 0;
    WInterval forbidden;
};
MultipleResult forbid_multiple(BvVal const& a, WInterval const& I, BvVal const& x0);

// Forbidden interval for x from a constraint linear in x that is violated at x0.
// All variables other than x must be assigned in gamma.
std::optional<FiEntry> extract_interval(Var x, SignedConstraint const& c, Assignment const& gamma, BvVal const& x0);
// Same, restricted to the cases whose interval does not depend on a sample point.
std::optional<FiEntry> extract_interval(Var x, SignedConstraint const& c, Assignment const& gamma);

// Projections for x = y ++ z, |z| = v, from x not in I.
struct Projection {
    enum Kind { none, interval, contradiction } kind = none;
    WInterval forbidden;
};
// Projection onto the upper part y, no value known for z.
Projection project_upper(WInterval const& I, unsigned v);
// Projection onto the lower part z, no value known for y.
Projection project_lower(WInterval const& I, unsigned v);
// Projection onto y with z = n.
Projection project_upper_fixed(WInterval const& I, unsigned v, BvVal const& n);
// Projection onto z with y = n.
Projection project_lower_fixed(WInterval const& I, unsigned v, BvVal const& n);

}
