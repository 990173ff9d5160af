#pragma once

#include <string>

namespace thetalat {

// Outcome of a numeric inequality check. Interval-valued inputs (covering
// radius) may leave a bound undecidable without being violated.
enum class Verdict { verified, verified_up_to_bound, violated, not_applicable };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::verified_up_to_bound: return "verified_up_to_bound";
        case Verdict::violated: return "violated";
        case Verdict::not_applicable: return "not_applicable";
    }
    return "?";
}

// lhs <= rhs up to the default audit slack.
inline Verdict check_le(double lhs, double rhs, double tol = 1e-9) {
    double slack = tol * std::max(1.0, rhs >= 0 ? rhs : -rhs);
    return lhs <= rhs + slack ? Verdict::verified : Verdict::violated;
}

}  // namespace thetalat
