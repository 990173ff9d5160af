#pragma once

// Certified theta-series evaluation and the theta invariants h^0, h^1,
// Poisson-Riemann-Roch, tail machinery, and the numeric inequality audits.

#include "thetalat/enumeration.hpp"
#include "thetalat/lattice.hpp"
#include "thetalat/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace thetalat {

struct AuditLine {
    std::string name;  // inequality anchor, e.g. "Eq-BR"
    double lhs = 0.0;
    double rhs = 0.0;
    Verdict verdict = Verdict::not_applicable;
    std::string detail;
};

struct ThetaValue {
    double t = 0.0;
    double value = 0.0;
    double log_value = 0.0;
    double truncation_error_bound = 0.0;  // certified absolute bound on the omitted tail
    bool used_poisson = false;
};

struct ThetaOptions {
    double tolerance = 1e-12;  // absolute, on the theta value
    bool allow_poisson = true;
    EnumOptions enum_opt;
};

// Sum over v of exp(-pi t |x - v|^2); center coordinates are in the lattice
// basis (default 0). t < 1 with x = 0 routes through the functional equation.
ThetaValue theta(const Lattice& l, double t, const std::vector<double>& center = {},
                 const ThetaOptions& opt = {});

double h0_theta(const Lattice& l, const ThetaOptions& opt = {});
double h1_theta(const Lattice& l, const ThetaOptions& opt = {});
double prr_residual(const Lattice& l, const ThetaOptions& opt = {});

// beta(r) = r exp(-(r^2 - 1)/2), a decreasing homeomorphism [1,inf) -> (0,1].
double banaszczyk_beta(double r_tilde);
double beta_inverse(double y);

// Gaussian-mass tail versus the certified bound at radius r = sqrt(n/2pi) * r_tilde.
struct TailCheck {
    double tail = 0.0;   // measured sum over |v - x| >= r (upper estimate)
    double bound = 0.0;  // beta(r_tilde)^n * theta(1)
    Verdict verdict = Verdict::not_applicable;
};

TailCheck tail_bound_check(const Lattice& l, const std::vector<double>& center, double r_tilde,
                           const ThetaOptions& opt = {});

// theta_x(1) + theta(1) >= 2 / covol.
AuditLine centered_mass_check(const Lattice& l, const std::vector<double>& center,
                              const ThetaOptions& opt = {});

std::vector<AuditLine> transference_audit(const Lattice& l, const EnumOptions& opt = {});
std::vector<AuditLine> comparison_audit(const Lattice& l, const ThetaOptions& opt = {});

// Subadditivity along the admissible sequence generated by f1, plus the
// submodularity of h^0_theta over the modules spanned by f1 and f2.
std::vector<AuditLine> structure_audit(const Lattice& l, const IntMat& f1, const IntMat& f2,
                                       const ThetaOptions& opt = {});

// h^0_theta(a (+) b) = h^0_theta(a) + h^0_theta(b).
AuditLine direct_sum_additivity_check(const Lattice& a, const Lattice& b,
                                      const ThetaOptions& opt = {});

struct AsymptoteCheck {
    std::vector<double> t_values;
    std::vector<double> epsilon;  // log theta(t) + (n/2) log t - deg
    bool reached_tolerance = false;
    bool monotone = true;
};

AsymptoteCheck theta_asymptote_check(const Lattice& l, double target = 1e-8,
                                     const ThetaOptions& opt = {});

}  // namespace thetalat
