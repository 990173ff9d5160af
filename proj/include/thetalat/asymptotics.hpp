#pragma once

// Saddle-point asymptotics for A_n(E): the vertical-line and residue/contour
// representations, their leading-order estimates, eta detection for
// arithmetic spectra, discretization of continuous densities, and the
// convergence/maximum-modulus checks.

#include "thetalat/thermo.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace thetalat {

enum class AsymptoticVariant { poincare, darwin_fowler };

struct AsymptoticEstimate {
    int n = 0;
    double log_estimate = 0.0;  // n S + log prefactor - (1/2) log(2 pi beta^2 Psi'' n)
    double prefactor = 1.0;     // 1, or eta beta / (1 - e^{-eta beta})
    double beta = 0.0;
    double entropy = 0.0;
    AsymptoticVariant variant = AsymptoticVariant::poincare;
};

// Largest eta with all energies in eta N (unit times the gcd of the exact
// energy indices); nullopt when no exact energies are attached.
std::optional<double> detect_eta(const DiscreteMeasure& m);

AsymptoticEstimate poincare_estimate(const ThermoProfile& p, double energy, int n);
AsymptoticEstimate df_estimate(const ThermoProfile& p, double eta, double energy, int n);

struct ContourResult {
    double value = 0.0;      // may overflow to inf for large n; see log_value
    double log_value = 0.0;
    double imag_ratio = 0.0; // |imaginary part| / |real part|, diagnostic
    int panels = 0;
};

// (1/2pi) integral over one period of the Darwin-Fowler integrand; exact for
// arithmetic spectra when n E / eta is an integer.
ContourResult df_contour(const DiscreteMeasure& m, double energy, int n, int initial_panels = 8);

// Discretization of a continuous energy density: atom at k eta carries
// mu([(k-1) eta, k eta)), by panel-doubling quadrature per bin.
DiscreteMeasure discretize(const std::function<double(double)>& density, double eta,
                           double support_hi, double beta_lo, bool infinite_mass);

struct ConvergenceRow {
    int n;
    double log_an_over_n;
    double entropy;
    double gap;              // entropy - log_an_over_n (>= 0, Chernoff direction)
    double ratio_exact_df;   // A_n / df_estimate, when df applies
};

std::vector<ConvergenceRow> convergence_report(const DiscreteMeasure& m, double energy,
                                               const std::vector<int>& n_list, int threads = 1);

// |Z(beta + i t)| < Z(beta) strictly for t inside the period, equality at
// multiples of 2 pi / eta.
std::vector<AuditLine> zmax_check(const DiscreteMeasure& m, double beta, int t_samples = 64);

// Machine checks of the Laplace-method hypotheses for the Darwin-Fowler
// integrand: boundedness, the quadratic dip with alpha = Psi''(beta)/2, and
// the strict maximum at t = 0 within one period.
std::vector<AuditLine> laplace_conditions_check(const DiscreteMeasure& m, double energy);

}  // namespace thetalat
