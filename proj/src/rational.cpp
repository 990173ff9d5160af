#include "thetalat/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace thetalat {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 bits of mantissa make m * 2^53 an exact integer.
    Int num = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(num);
    if (exp >= 0) {
        r *= Rat(Int(1) << exp);
    } else {
        r /= Rat(Int(1) << (-exp));
    }
    return r;
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/" + denominator(r).str();
    }
    return s;
}

Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    // gcd(p1/q1, p2/q2) = gcd(p1*q2, p2*q1) / (q1*q2)
    Int n = gcd(numerator(a) * denominator(b), numerator(b) * denominator(a));
    return Rat(n, denominator(a) * denominator(b));
}

}  // namespace thetalat
