#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <string>

namespace skirental {

/// Exact rational arithmetic for costs and ratios. Shares of a group pass
/// (G/L) and the threshold values G/(M-l) are rational in the integer inputs,
/// so ledgers and closed-form ratios stay exact until presentation.
using rat = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline bool is_integer(const rat& r) { return denominator(r) == 1; }

/// Smallest integer >= r.
inline bigint ceil_rat(const rat& r) {
    bigint q = numerator(r) / denominator(r);
    if (numerator(r) > 0 && numerator(r) % denominator(r) != 0) ++q;
    return q;
}

inline bigint floor_rat(const rat& r) {
    bigint q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && numerator(r) % denominator(r) != 0) --q;
    return q;
}

inline long long to_ll(const bigint& v) { return static_cast<long long>(v); }

inline double to_double(const rat& r) { return static_cast<double>(r); }

/// Round r to `digits` decimals, half to even, and format with a fixed number
/// of decimals. Exact: no float intermediary.
inline std::string format_fixed(const rat& r, int digits) {
    bigint scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    rat scaled = r * scale;
    bigint lo = floor_rat(scaled);
    rat frac = scaled - rat(lo);
    bigint rounded;
    if (frac > rat(1, 2)) {
        rounded = lo + 1;
    } else if (frac < rat(1, 2)) {
        rounded = lo;
    } else {
        rounded = (lo % 2 == 0) ? lo : lo + 1;
    }
    bool neg = rounded < 0;
    if (neg) rounded = -rounded;
    std::string units = bigint(rounded / scale).str();
    std::string cents = bigint(rounded % scale).str();
    cents.insert(cents.begin(), digits - cents.size(), '0');
    return (neg ? "-" : "") + units + (digits > 0 ? "." + cents : "");
}

/// Same rounding for doubles; ties on the scaled value resolve to even so
/// repeated runs produce identical bytes.
inline std::string format_fixed(double v, int digits) {
    rat r(v);
    return format_fixed(r, digits);
}

}  // namespace skirental
