#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace forge {

// All measure arithmetic in this library is exact. Floats appear only where
// irrational values are unavoidable (square roots, concave transforms).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

[[nodiscard]] inline double to_double(const Rat& r) {
    return r.convert_to<double>();
}

[[nodiscard]] inline Int num(const Rat& r) { return numerator(r); }
[[nodiscard]] inline Int den(const Rat& r) { return denominator(r); }

[[nodiscard]] inline std::string rat_str(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

// Floor of a/b for arbitrary signs (cpp_int division truncates toward zero).
[[nodiscard]] inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

[[nodiscard]] inline Int rat_floor(const Rat& r) { return floor_div(num(r), den(r)); }

// Nearest integer, ties resolved toward the smaller value.
[[nodiscard]] inline Int round_half_down(const Rat& r) {
    // smallest integer q with q >= r - 1/2, i.e. ceil(r - 1/2)
    const Rat shifted = r - Rat(1, 2);
    Int f = rat_floor(shifted);
    if (Rat(f) == shifted) return f;  // exact tie: stay at the smaller point
    return f + 1;
}

[[nodiscard]] inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Parses "p/q", plain integers and decimal literals ("-0.25") exactly.
[[nodiscard]] Rat rat_parse(const std::string& text);

}  // namespace forge
