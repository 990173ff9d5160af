#pragma once

// Compensated (Neumaier) summation. The accumulator width is selected once
// per process from THETALAT_PRECISION ("double" or "extended"); extended uses
// the 80-bit long double on x86.

#include <cstdlib>
#include <cstring>

namespace thetalat {

inline bool use_extended_precision() {
    static const bool extended = [] {
        const char* env = std::getenv("THETALAT_PRECISION");
        return env != nullptr && std::strcmp(env, "extended") == 0;
    }();
    return extended;
}

template <typename T>
class CompensatedSumT {
public:
    void add(T x) {
        T t = sum_ + x;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_ = 0;
    T comp_ = 0;
};

// Runtime-switched accumulator.
class CompensatedSum {
public:
    CompensatedSum() : extended_(use_extended_precision()) {}
    void add(double x) {
        if (extended_) {
            ext_.add(static_cast<long double>(x));
        } else {
            dbl_.add(x);
        }
    }
    double value() const {
        return extended_ ? static_cast<double>(ext_.value()) : dbl_.value();
    }

private:
    bool extended_;
    CompensatedSumT<double> dbl_;
    CompensatedSumT<long double> ext_;
};

}  // namespace thetalat
