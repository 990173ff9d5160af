#include "thetalat/asymptotics.hpp"

#include "thetalat/errors.hpp"
#include "thetalat/summation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace thetalat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 16-point Gauss-Legendre nodes/weights on [-1, 1], by Newton on P_16.
struct GaussLegendre16 {
    double node[16];
    double weight[16];
    GaussLegendre16() {
        const int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            node[i] = -x;
            node[n - 1 - i] = x;
            weight[i] = weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre16& gl16() {
    static const GaussLegendre16 g;
    return g;
}

// Composite GL-16 with deterministic panel-ordered summation.
template <typename F>
std::complex<double> composite_gl(const F& f, double a, double b, int panels) {
    const auto& g = gl16();
    CompensatedSum re, im;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        for (int i = 0; i < 16; ++i) {
            double t = lo + 0.5 * h * (g.node[i] + 1.0);
            std::complex<double> v = f(t);
            re.add(0.5 * h * g.weight[i] * v.real());
            im.add(0.5 * h * g.weight[i] * v.imag());
        }
    }
    return {re.value(), im.value()};
}

struct IndexedSpectrum {
    std::vector<long> index;
    std::vector<double> weight;
    double eta;
};

IndexedSpectrum indexed_spectrum(const DiscreteMeasure& m) {
    if (!m.unit || m.exact_energies.empty())
        throw NotArithmetic("measure has no exact arithmetic energies");
    Rat g = 0;
    for (const Rat& e : m.exact_energies) g = rat_gcd(g, e);
    if (g == 0) g = 1;
    IndexedSpectrum s;
    s.eta = *m.unit * to_double(g);
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        Rat idx = m.exact_energies[i] / g;
        if (denominator(idx) != 1) throw NotArithmetic("energy indices are not integral");
        s.index.push_back(numerator(idx).convert_to<long>());
        s.weight.push_back(m.atoms[i].weight);
    }
    return s;
}

// log Z(beta + i t) relative to the ground index, as a complex number:
// log Z = -(beta + it) eta k0 + log sum_k w_k e^{-(beta+it) eta (k - k0)}.
std::complex<double> log_z_complex(const IndexedSpectrum& s, double beta, double t) {
    std::complex<double> sbeta(beta, t);
    long k0 = s.index.front();
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < s.index.size(); ++i) {
        double de = s.eta * (s.index[i] - k0);
        acc += s.weight[i] * std::exp(-sbeta * de);
    }
    return std::log(acc) - sbeta * (s.eta * k0);
}

double pref_log(double beta, double var, int n) {
    return -0.5 * std::log(2.0 * M_PI * beta * beta * var * n);
}

}  // namespace

std::optional<double> detect_eta(const DiscreteMeasure& m) {
    if (!m.unit || m.exact_energies.empty()) return std::nullopt;
    Rat g = 0;
    for (const Rat& e : m.exact_energies) g = rat_gcd(g, e);
    if (g == 0) return std::nullopt;
    return *m.unit * to_double(g);
}

AsymptoticEstimate poincare_estimate(const ThermoProfile& p, double energy, int n) {
    EntropySolve s = entropy(p, energy);
    AsymptoticEstimate est;
    est.n = n;
    est.beta = s.beta;
    est.entropy = s.entropy;
    est.prefactor = 1.0;
    est.variant = AsymptoticVariant::poincare;
    est.log_estimate = n * s.entropy + pref_log(s.beta, p.psi_second(s.beta), n);
    return est;
}

AsymptoticEstimate df_estimate(const ThermoProfile& p, double eta, double energy, int n) {
    double grid = n * energy / eta;
    if (std::fabs(grid - std::round(grid)) > 1e-9 * std::max(1.0, std::fabs(grid)))
        throw NotInNE("df_estimate: n E / eta is not an integer; nearest admissible E' = " +
                      std::to_string(eta * std::floor(grid) / n));
    EntropySolve s = entropy(p, energy);
    AsymptoticEstimate est;
    est.n = n;
    est.beta = s.beta;
    est.entropy = s.entropy;
    est.prefactor = eta * s.beta / (1.0 - std::exp(-eta * s.beta));
    est.variant = AsymptoticVariant::darwin_fowler;
    est.log_estimate =
        n * s.entropy + std::log(est.prefactor) + pref_log(s.beta, p.psi_second(s.beta), n);
    return est;
}

ContourResult df_contour(const DiscreteMeasure& m, double energy, int n, int initial_panels) {
    IndexedSpectrum s = indexed_spectrum(m);
    double grid = n * energy / s.eta;
    if (std::fabs(grid - std::round(grid)) > 1e-9 * std::max(1.0, std::fabs(grid)))
        throw NotInNE("df_contour: n E / eta is not an integer");

    // The representation is exact for every beta > 0; the saddle is only the
    // best-conditioned choice, so fall back when E sits outside U's range.
    ThermoProfile p = profile(m);
    double beta;
    try {
        beta = entropy(p, energy).beta;
    } catch (const std::runtime_error&) {
        beta = 1.0;
    }
    double eta = s.eta;
    double ref = n * (p.psi(beta) + beta * energy);  // scales the integrand to O(1)

    auto integrand = [&](double t) {
        std::complex<double> sbeta(beta, t);
        std::complex<double> logf = log_z_complex(s, beta, t) + energy * sbeta;
        std::complex<double> g = eta / (1.0 - std::exp(-eta * sbeta));
        return g * std::exp(static_cast<double>(n) * logf - ref);
    };

    double a = -M_PI / eta, b = M_PI / eta;
    int panels = std::max(2, initial_panels);
    std::complex<double> prev = composite_gl(integrand, a, b, panels);
    for (;;) {
        panels *= 2;
        if (panels > 1 << 16) throw QuadratureNotConverged("df_contour: panel cap reached");
        std::complex<double> cur = composite_gl(integrand, a, b, panels);
        if (std::abs(cur - prev) <= 1e-9 * std::abs(cur)) {
            ContourResult r;
            double scaled = cur.real() / (2.0 * M_PI);
            r.log_value = ref + std::log(scaled);
            r.value = std::exp(r.log_value);
            r.imag_ratio = std::fabs(cur.imag()) / std::max(std::fabs(cur.real()), 1e-300);
            r.panels = panels;
            return r;
        }
        prev = cur;
    }
}

DiscreteMeasure discretize(const std::function<double(double)>& density, double eta,
                           double support_hi, double beta_lo, bool infinite_mass) {
    if (!(eta > 0) || !(support_hi > eta)) throw DomainError("discretize: bad bin parameters");
    DiscreteMeasure m;
    m.unit = eta;
    long bins = static_cast<long>(std::ceil(support_hi / eta));
    for (long k = 1; k <= bins; ++k) {
        double lo = (k - 1) * eta, hi = k * eta;
        // Substituting E = lo + u^2 removes the integrable power singularity
        // that kinetic densities carry at the left edge of the first bin.
        auto sub = [&](double u) {
            return std::complex<double>(2.0 * u * density(lo + u * u), 0.0);
        };
        double ulim = std::sqrt(hi - lo);
        int panels = 1;
        double prev = composite_gl(sub, 0.0, ulim, panels).real();
        double w = prev;
        for (;;) {
            panels *= 2;
            if (panels > 1 << 15)
                throw QuadratureNotConverged("discretize: bin quadrature did not settle");
            double cur = composite_gl(sub, 0.0, ulim, panels).real();
            if (std::fabs(cur - prev) <= std::max(1e-14, 1e-9 * std::fabs(cur))) {
                w = cur;
                break;
            }
            prev = cur;
        }
        if (w > 0) {
            m.atoms.push_back({k * eta, w});
            m.exact_energies.push_back(Rat(k));
        }
    }
    m.total_mass_infinite = infinite_mass;
    m.beta_lo = beta_lo;
    m.validate();
    return m;
}

std::vector<ConvergenceRow> convergence_report(const DiscreteMeasure& m, double energy,
                                               const std::vector<int>& n_list, int threads) {
    ThermoProfile p = profile(m);
    EntropySolve sol = entropy(p, energy);
    std::optional<double> eta = detect_eta(m);
    std::vector<ConvergenceRow> rows;
    for (int n : n_list) {
        ConvergenceRow r;
        r.n = n;
        r.log_an_over_n = log_an_exact(m, energy, n, threads) / n;
        r.entropy = sol.entropy;
        r.gap = sol.entropy - r.log_an_over_n;
        r.ratio_exact_df = std::numeric_limits<double>::quiet_NaN();
        if (eta) {
            double grid = n * energy / *eta;
            if (std::fabs(grid - std::round(grid)) <= 1e-9 * std::max(1.0, std::fabs(grid))) {
                AsymptoticEstimate est = df_estimate(p, *eta, energy, n);
                r.ratio_exact_df = std::exp(n * r.log_an_over_n - est.log_estimate);
            }
        }
        rows.push_back(r);
    }
    return rows;
}

std::vector<AuditLine> zmax_check(const DiscreteMeasure& m, double beta, int t_samples) {
    IndexedSpectrum s = indexed_spectrum(m);
    double period = 2.0 * M_PI / s.eta;
    double z0 = std::exp(log_z_complex(s, beta, 0.0).real());
    std::vector<AuditLine> lines;

    AuditLine strict;
    strict.name = "Lem-Zmax-strict";
    double worst = kNegInf;
    double worst_t = 0.0;
    for (int i = 1; i < t_samples; ++i) {
        double t = period * i / t_samples;
        double mod = std::exp(log_z_complex(s, beta, t).real());
        if (mod > worst) {
            worst = mod;
            worst_t = t;
        }
    }
    strict.lhs = worst;
    strict.rhs = z0;
    strict.detail = "max off-period modulus at t = " + std::to_string(worst_t);
    strict.verdict = worst < z0 * (1.0 - 1e-12) ? Verdict::verified : Verdict::violated;
    lines.push_back(strict);

    AuditLine periodic;
    periodic.name = "Lem-Zmax-period";
    double zp = std::exp(log_z_complex(s, beta, period).real());
    periodic.lhs = zp;
    periodic.rhs = z0;
    periodic.verdict =
        std::fabs(zp - z0) <= 1e-9 * z0 ? Verdict::verified : Verdict::violated;
    lines.push_back(periodic);
    return lines;
}

std::vector<AuditLine> laplace_conditions_check(const DiscreteMeasure& m, double energy) {
    IndexedSpectrum s = indexed_spectrum(m);
    ThermoProfile p = profile(m);
    EntropySolve sol = entropy(p, energy);
    double beta = sol.beta;
    double var = p.psi_second(beta);
    std::vector<AuditLine> lines;

    auto log_f = [&](double t) {
        std::complex<double> sb(beta, t);
        return log_z_complex(s, beta, t) + energy * sb;
    };

    // L1: the integrand is bounded over one period.
    AuditLine l1;
    l1.name = "Cond-L1";
    double sup = kNegInf;
    for (int i = 0; i <= 64; ++i) {
        double t = -M_PI / s.eta + 2.0 * M_PI / s.eta * i / 64.0;
        sup = std::max(sup, log_f(t).real());
    }
    l1.lhs = sup;
    l1.rhs = log_f(0.0).real() + 1e-9;
    l1.verdict = std::isfinite(sup) ? check_le(l1.lhs, l1.rhs) : Verdict::violated;
    lines.push_back(l1);

    // L2: quadratic dip F(t)/F(0) = 1 - alpha t^2 + o(t^2), alpha = Psi''/2.
    AuditLine l2;
    l2.name = "Cond-L2";
    double h = 0.05 * std::min(1.0 / std::sqrt(std::max(var, 1e-12)), M_PI / s.eta);
    auto alpha_fit = [&](double step) {
        return -(log_f(step).real() - log_f(0.0).real()) / (step * step);
    };
    double alpha = alpha_fit(h / 2.0);
    l2.lhs = alpha;
    l2.rhs = 0.5 * var;
    l2.detail = "finite-difference alpha vs Psi''/2";
    l2.verdict = std::fabs(alpha - 0.5 * var) <= 0.05 * std::fabs(0.5 * var)
                     ? Verdict::verified
                     : Verdict::violated;
    lines.push_back(l2);

    // L3: strict maximum of |F| at t = 0 within the period.
    AuditLine l3;
    l3.name = "Cond-L3";
    bool strict = true;
    for (int i = 1; i < 64; ++i) {
        double t = M_PI / s.eta * i / 64.0;
        if (log_f(t).real() >= log_f(0.0).real() - 1e-12) strict = false;
        if (log_f(-t).real() >= log_f(0.0).real() - 1e-12) strict = false;
    }
    l3.verdict = strict ? Verdict::verified : Verdict::violated;
    lines.push_back(l3);
    return lines;
}

}  // namespace thetalat
