#pragma once

// Korkin-Zolotarev (HKZ) reduction by recursive shortest-vector extraction
// and minimal-norm lifting, plus sum-map operator norms and the
// reduction-theoretic transference bound.

#include "thetalat/enumeration.hpp"
#include "thetalat/lattice.hpp"
#include "thetalat/verdict.hpp"

#include <vector>

namespace thetalat {

struct ReducedBasis {
    IntMat basis;                     // columns v_1..v_n, |det| = 1; v_1 realizes lambda_1
    std::vector<double> norms;        // |v_i| (effective units)
    std::vector<double> gs_norms;     // Gram-Schmidt lengths |b_i*|
    std::vector<Rat> norms_sq_core;   // exact squared norms (core units)
    std::vector<Rat> gs_norms_sq_core;
};

ReducedBasis hkz_reduce(const Lattice& l, const EnumOptions& opt = {});

enum class HermiteVariant { hermite, minkowski };

// (4/3)^((n-1)/2) or 2 v_n^{-1/n}.
double hermite_constant_bound(std::size_t n, HermiteVariant variant);

// (4/3)^(n(n-1)/2), as the exact rational (for exact product comparisons).
Rat hkz_product_bound_sq(std::size_t n);  // D(n)^2

struct SumMapNorms {
    double delta;         // slope defect, = -(1/n) log |det of the normalized map|
    double log_norm;      // log |Sigma|
    double log_inv_norm;  // log |Sigma^{-1}|
    double log_det_norm;  // log |Lambda^n Sigma|
};

// `lines` columns must form a Z-basis of E (|det| = 1), each spanning one of
// the rank-1 summands.
SumMapNorms sum_map_norms(const Lattice& l, const IntMat& lines);

struct TransferenceCheck {
    double lhs_lo = 0.0;  // |log R_cov + log lambda_1(dual)| interval
    double lhs_hi = 0.0;
    double bound = 0.0;   // E(n)
    Verdict verdict = Verdict::not_applicable;
    bool rank1_edge_case = false;
};

TransferenceCheck reduction_transference_check(const Lattice& l, const EnumOptions& opt = {});

}  // namespace thetalat
