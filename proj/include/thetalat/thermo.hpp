#pragma once

// Thermodynamic formalism over discrete energy measures: partition function,
// characteristic function, mean energy, entropy via Legendre duality, exact
// A_n(E) by coefficient convolution, and the bound/limit check suites.

#include "thetalat/lattice.hpp"
#include "thetalat/rational.hpp"
#include "thetalat/theta.hpp"
#include "thetalat/verdict.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace thetalat {

// The pushforward H_* mu of an energy measure: finitely many atoms, sorted by
// strictly increasing energy. Truncations of infinite-mass measures carry the
// flag of their parent plus the beta domain on which the truncation was
// certified.
struct DiscreteMeasure {
    struct Atom {
        double energy;
        double weight;
    };
    std::vector<Atom> atoms;

    // Present when the energies are exact rational multiples of `unit`:
    // energy[i] = unit * exact_energies[i].
    std::optional<double> unit;
    std::vector<Rat> exact_energies;

    bool total_mass_infinite = false;  // condition declared by the constructor
    double beta_lo = 0.0;              // profile certified for beta >= beta_lo
    double tail_bound = 0.0;           // certified bound on the omitted Z-mass at beta_lo
    double energy_cover = 0.0;         // atom list is complete below this energy
                                       // (0 = up to the last atom)

    double h_min() const;
    double min_weight() const;  // mu(E_min)
    void validate() const;      // sorted, positive weights, exact/float agreement
};

struct ThermoPoint {
    double z;       // Z(beta)
    double psi;     // log Z
    double u;       // -Psi'
    double var;     // Psi''
};

// Evaluator bundle over beta in [beta_lo, infinity).
class ThermoProfile {
public:
    static ThermoProfile from_measure(const DiscreteMeasure& m);
    static ThermoProfile closed_form(std::function<ThermoPoint(double)> eval, double h_min,
                                     double min_weight, double beta_lo = 0.0);

    ThermoPoint at(double beta) const;  // throws DomainError below beta_lo
    double z(double beta) const { return at(beta).z; }
    double psi(double beta) const { return at(beta).psi; }
    double u(double beta) const { return at(beta).u; }
    double psi_second(double beta) const { return at(beta).var; }

    double beta_lo() const { return beta_lo_; }
    double h_min() const { return h_min_; }
    double min_weight() const { return min_weight_; }

private:
    std::function<ThermoPoint(double)> eval_;
    double beta_lo_ = 0.0;
    double h_min_ = 0.0;
    double min_weight_ = 0.0;
};

struct EntropySolve {
    double energy = 0.0;
    double beta = 0.0;      // S'(E) = U^{-1}(E)
    double entropy = 0.0;   // S(E) = Psi(beta) + beta E
    int iterations = 0;
    double residual = 0.0;  // |U(beta) - E|
};

// Lattice energy measure (pi |v|^2, multiplicity), truncated with the tail
// certified at beta_min. `cover_energy` forces the atom list to reach at
// least that energy (needed when the measure feeds the A_n convolution).
DiscreteMeasure from_lattice(const Lattice& l, double beta_min, double tolerance = 1e-13,
                             const EnumOptions& opt = {}, double cover_energy = 0.0);

// Counting measure on (k + 1/2) h nu, truncated for beta >= beta_min.
DiscreteMeasure builtin_oscillator(double planck, double freq, double beta_min = 0.05);

// Counting measure on N (atoms (k, 1)), truncated for beta >= beta_min.
DiscreteMeasure builtin_geometric(double beta_min = 0.05);

ThermoProfile builtin_gaussian(std::size_t dim, double mass);
ThermoProfile builtin_flat_torus(const Lattice& f, double mass);

ThermoProfile profile(const DiscreteMeasure& m);

EntropySolve entropy(const ThermoProfile& p, double energy, double tolerance = 1e-10);

// Psi(beta') + beta' E - S(E), non-negative, zero exactly at beta' = S'(E).
double legendre_residual(const ThermoProfile& p, double energy, double beta_prime);

// Exact A_n(E): log of the n-fold convolution mass at average energy <= E.
// Requires exact energies; `energy` is rounded to the admissible grid point
// floor(n E / eta) when within 1e-6 relative, else NotInNE.
double log_an_exact(const DiscreteMeasure& m, double energy, int n, int threads = 1);

// Window count log mu^n{ H_n/n in (e_lo, e_hi) } by the same convolution;
// each boundary may be made inclusive.
double log_window_exact(const DiscreteMeasure& m, double e_lo, double e_hi, int n,
                        bool inclusive_lo = false, bool inclusive_hi = false, int threads = 1);

// The stable ball-count invariant: S(pi x) for the lattice measure.
EntropySolve h0_ar_tilde(const Lattice& l, double x, const EnumOptions& opt = {});

ThermoProfile product(const ThermoProfile& a, const ThermoProfile& b);

struct SecondLawCheck {
    double entropy_product = 0.0;   // S(E) of the product system
    double grid_max = 0.0;          // max over splits of S1(E1) + S2(E - E1)
    double maximizer_e1 = 0.0;
    double predicted_e1 = 0.0;      // U1(beta) at beta = S'(E)
    Verdict verdict = Verdict::not_applicable;
};

SecondLawCheck second_law_check(const ThermoProfile& p1, const ThermoProfile& p2, double energy,
                                int grid_points = 64);

std::vector<AuditLine> bounds_suite(const DiscreteMeasure& m, double energy, int n_cap,
                                    double epsilon, int threads = 1);

struct ZeroTemperatureRow {
    double beta;
    double u_gap;         // U(beta) - H_min
    double beta_u_gap;    // beta * (U - H_min)
    double heat_capacity; // beta^2 Psi''
    double entropy_gap;   // S(U(beta)) - log mu(E_min)
};

std::vector<ZeroTemperatureRow> zero_temperature_report(const ThermoProfile& p,
                                                        const std::vector<double>& betas);

}  // namespace thetalat
