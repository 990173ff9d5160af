#pragma once

// Deterministic lattice-point enumeration: ball censuses with exact rational
// norms, shortest vectors, successive minima, covering-radius bounds.

#include "thetalat/lattice.hpp"
#include "thetalat/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace thetalat {

struct EnumOptions {
    std::uint64_t budget = 100000000;  // point cap before BudgetExceeded
    int threads = 1;                   // 0 = hardware concurrency
    bool witnesses = false;            // collect coordinate vectors
};

struct EnumerationReport {
    Rat radius_sq;                          // the bound x (core units)
    std::uint64_t count = 0;                // including the origin
    std::map<Rat, std::uint64_t> histogram; // exact squared norm -> multiplicity
    std::vector<std::vector<long>> witnesses;
};

// Exact census of {v in E : |v|^2 <= x}. The bound x is in effective units;
// for a twisted lattice it is mapped to core units through the floating
// scale (exactness is guaranteed at twist 0).
EnumerationReport enumerate_ball(const Lattice& l, const Rat& x, const EnumOptions& opt = {});

struct Minimum {
    double value = 0.0;        // lambda_1 (effective units)
    Rat norm_sq_core;          // exact squared norm of the witness (core units)
    std::vector<long> witness; // lexicographically smallest among the shortest
};

Minimum first_minimum(const Lattice& l, const EnumOptions& opt = {});

struct SuccessiveMinima {
    std::vector<double> values;             // lambda_1 <= ... <= lambda_n
    std::vector<Rat> norms_sq_core;         // exact squared norms (core units)
    std::vector<std::vector<long>> witnesses;
};

SuccessiveMinima successive_minima(const Lattice& l, const EnumOptions& opt = {});

double h0_ar(const Lattice& l, const Rat& x, const EnumOptions& opt = {});

struct CoveringRadiusBounds {
    double lo = 0.0;
    double hi = 0.0;
    bool exact = false;  // rank 1 and diagonal Gram give the closed form
};

CoveringRadiusBounds covering_radius_bounds(const Lattice& l, const EnumOptions& opt = {});

// Float census around an arbitrary real center (used by the theta audits; no
// exact re-check is possible at irrational centers). Returns squared
// distances (core units) of all v with |v - x|^2 <= bound.
std::vector<double> enumerate_around(const Lattice& l, const std::vector<double>& center,
                                     double bound_core, const EnumOptions& opt = {});

}  // namespace thetalat
