// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "thetalat/asymptotics.hpp"
#include "thetalat/audit.hpp"
#include "thetalat/json_io.hpp"
#include "thetalat/reduction.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace thetalat;

namespace {

int failures = 0;

void run(int number, const std::string& name, double time_limit_s,
         const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0 && secs > time_limit_s) {
        ok = false;
        detail += " [time limit " + std::to_string(time_limit_s) + "s exceeded]";
    }
    std::printf("%s %2d %-34s %6.1fs  %s\n", ok ? "PASS" : "FAIL", number, name.c_str(), secs,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double log_binomial_tail(int n, int cap) {
    long double sum = 0.0L, c = 1.0L;
    for (int k = 0; k <= cap; ++k) {
        sum += c;
        c = c * (n - k) / (k + 1);
    }
    return static_cast<double>(std::log(sum));
}

}  // namespace

int main() {
    // 1. HKZ product bound, exact rational comparison.
    run(1, "hkz-product-bound", 60.0, [](std::string& detail) {
        for (std::size_t n = 2; n <= 6; ++n) {
            auto corpus = make_corpus(1000 + n, n, 50, 4);
            Rat bound_sq = hkz_product_bound_sq(n);
            for (const Lattice& l : corpus) {
                ReducedBasis rb = hkz_reduce(l);
                Rat prod = 1;
                for (const Rat& q : rb.norms_sq_core) prod *= q;
                if (!(prod <= bound_sq * l.core_det())) {
                    detail = "violation at rank " + std::to_string(n);
                    return false;
                }
                if (abs(rb.basis.det()) != 1) {
                    detail = "non-unimodular basis";
                    return false;
                }
            }
        }
        detail = "250 lattices, ranks 2..6";
        return true;
    });

    // 2. Minkowski bound on lambda_1 plus the volume-constant asymptotic.
    run(2, "minkowski-first-minimum", 60.0, [](std::string& detail) {
        for (std::size_t n = 2; n <= 6; ++n) {
            auto corpus = make_corpus(1000 + n, n, 4, 4);
            double c = hermite_constant_bound(n, HermiteVariant::minkowski);
            for (const Lattice& l : corpus) {
                double lam = first_minimum(l).value;
                if (lam > c * std::pow(covolume(l), 1.0 / n) * (1 + 1e-9)) {
                    detail = "bound violated at rank " + std::to_string(n);
                    return false;
                }
            }
        }
        double ratio = hermite_constant_bound(400, HermiteVariant::minkowski) /
                       std::sqrt(2.0 * 400 / (std::exp(1.0) * M_PI));
        detail = "C(400) ratio " + std::to_string(ratio);
        return ratio >= 0.98 && ratio <= 1.02;
    });

    // 3. Poisson functional equation, both sides summed directly.
    run(3, "poisson-functional-equation", 30.0, [](std::string& detail) {
        ThetaOptions direct;
        direct.allow_poisson = false;
        direct.enum_opt.threads = 0;
        double worst = 0.0;
        for (std::size_t n = 1; n <= 5; ++n) {
            auto corpus = make_corpus(2000 + n, n, 2, 2);
            for (const Lattice& l : corpus) {
                double logdet = std::log(to_double(l.core_det()));
                for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                    double lhs = theta(l, t, {}, direct).value;
                    double rhs = std::exp(-0.5 * logdet - 0.5 * n * std::log(t)) *
                                 theta(dual(l), 1.0 / t, {}, direct).value;
                    worst = std::max(worst, std::fabs(lhs - rhs) / lhs);
                }
            }
        }
        detail = "worst relative residual " + std::to_string(worst);
        return worst < 1e-9;
    });

    // 4. Poisson-Riemann-Roch on the corpus including twists.
    run(4, "poisson-riemann-roch", 60.0, [](std::string& detail) {
        double worst = 0.0;
        for (std::size_t n = 1; n <= 4; ++n) {
            auto corpus = make_corpus(3000 + n, n, 3, 3);
            for (const Lattice& l : corpus) {
                for (double t : {-1.0, 0.0, 1.0}) {
                    worst = std::max(worst, std::fabs(prr_residual(twist(l, t))));
                }
            }
        }
        detail = "worst |h0 - h1 - deg| = " + std::to_string(worst);
        return worst < 1e-9;
    });

    // 5. Banaszczyk transference, interval-aware, plus the orthogonal
    //    closed-form equality cases.
    run(5, "banaszczyk-transference", 120.0, [](std::string& detail) {
        for (std::size_t n = 1; n <= 4; ++n) {
            auto corpus = make_corpus(4000 + n, n, 4, 3);
            for (const Lattice& l : corpus) {
                for (const AuditLine& line : transference_audit(l)) {
                    if (line.verdict == Verdict::violated) {
                        detail = line.name + " violated at rank " + std::to_string(n);
                        return false;
                    }
                }
            }
        }
        // lambda_i(E) lambda_{n+1-i}(dual) = 1 exactly in the closed forms
        OrthogonalLattice o({1.25, 0.5, 0.0, -0.75});
        for (std::size_t i = 0; i < 4; ++i) {
            double log_prod = -o.degrees[i] + o.degrees[i];  // cancels exactly
            if (std::exp(log_prod) != 1.0) {
                detail = "orthogonal equality case broke";
                return false;
            }
        }
        detail = "ranks 1..4 verified";
        return true;
    });

    // 6. Comparison bounds plus the rank-1 spot values.
    run(6, "theta-vs-count-comparison", 120.0, [](std::string& detail) {
        for (std::size_t n = 1; n <= 4; ++n) {
            auto corpus = make_corpus(5000 + n, n, 3, 3);
            for (const Lattice& l : corpus) {
                for (const AuditLine& line : comparison_audit(l)) {
                    if (line.verdict == Verdict::violated) {
                        detail = line.name + " violated at rank " + std::to_string(n);
                        return false;
                    }
                }
            }
        }
        if (enumerate_ball(Lattice::standard(1), Rat(1)).count != 3) {
            detail = "h0_Ar(Z) is not log 3";
            return false;
        }
        ThetaValue tv = theta(Lattice::standard(1), 1.0);
        double spot = 1.0;
        for (int k = 1; k <= 6; ++k) spot += 2.0 * std::exp(-M_PI * k * k);
        if (tv.truncation_error_bound >= 1e-12 ||
            std::fabs(tv.log_value - std::log(spot)) > 1e-12) {
            detail = "rank-1 theta spot value off";
            return false;
        }
        detail = "corpus bounds + spot values hold";
        return true;
    });

    // 7. Legendre duality: closed form for the geometric measure, round trip
    //    for lattice measures of rank <= 3.
    run(7, "legendre-duality", 120.0, [](std::string& detail) {
        ThermoProfile geo = profile(builtin_geometric(0.02));
        for (double e : {0.5, 1.0, 2.0}) {
            double closed = (1.0 + e) * std::log(1.0 + e) - e * std::log(e);
            if (std::fabs(entropy(geo, e).entropy - closed) > 1e-8) {
                detail = "geometric closed form missed at E = " + std::to_string(e);
                return false;
            }
        }
        double worst = 0.0;
        for (std::size_t n = 1; n <= 3; ++n) {
            auto corpus = make_corpus(6000 + n, n, 1, 2);
            for (const Lattice& l : corpus) {
                ThermoProfile p = profile(from_lattice(l, 0.15));
                for (double beta : {0.3, 0.6, 1.0, 2.0}) {
                    // Psi(beta) = max_E (S(E) - beta E): coarse grid + refine
                    double lo = p.h_min() + 1e-6, hi = p.u(0.16);
                    double best = -1e300, best_e = lo;
                    for (int i = 1; i < 200; ++i) {
                        double e = lo + (hi - lo) * i / 200.0;
                        double v = entropy(p, e).entropy - beta * e;
                        if (v > best) {
                            best = v;
                            best_e = e;
                        }
                    }
                    double a = std::max(lo, best_e - (hi - lo) / 200.0);
                    double b = std::min(hi, best_e + (hi - lo) / 200.0);
                    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
                    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
                    auto f = [&](double e) { return entropy(p, e).entropy - beta * e; };
                    double f1 = f(x1), f2 = f(x2);
                    for (int it = 0; it < 120; ++it) {
                        if (f1 < f2) {
                            a = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = a + phi * (b - a);
                            f2 = f(x2);
                        } else {
                            b = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = b - phi * (b - a);
                            f1 = f(x1);
                        }
                    }
                    worst = std::max(worst, std::fabs(std::max(f1, f2) - p.psi(beta)));
                }
            }
        }
        detail = "round-trip residual " + std::to_string(worst);
        return worst < 1e-6;
    });

    // 8. Convergence of the stable count for Z at x = 1.
    run(8, "stable-count-convergence", 120.0, [](std::string& detail) {
        Lattice z = Lattice::standard(1);
        DiscreteMeasure m = from_lattice(z, 0.1, 1e-13, {}, 258.0 * M_PI);
        EntropySolve s = entropy(profile(m), M_PI);
        double prev = -1e300;
        for (int k = 1; k <= 256; k *= 2) {
            double v = log_an_exact(m, M_PI, k) / k;
            if (v < prev - 1e-10) {
                detail = "sequence dipped at k = " + std::to_string(k);
                return false;
            }
            if (v > s.entropy + 1e-9) {
                detail = "Chernoff direction violated at k = " + std::to_string(k);
                return false;
            }
            prev = v;
        }
        double gap = s.entropy - prev;
        detail = "gap at k = 256: " + std::to_string(gap);
        return gap >= -1e-9 && gap < 0.02;
    });

    // 9. Darwin-Fowler asymptotics and the contour integral.
    run(9, "darwin-fowler", 60.0, [](std::string& detail) {
        DiscreteMeasure m;
        m.unit = 1.0;
        m.atoms = {{0.0, 1.0}, {1.0, 1.0}};
        m.exact_energies = {Rat(0), Rat(1)};
        m.validate();
        AsymptoticEstimate est = df_estimate(profile(m), 1.0, 0.25, 400);
        double exact = log_binomial_tail(400, 100);
        double ratio = std::exp(exact - est.log_estimate);
        if (std::fabs(ratio - 1.0) >= 0.05) {
            detail = "A_400 ratio " + std::to_string(ratio);
            return false;
        }
        ContourResult c = df_contour(m, 0.5, 10);
        double dp = std::exp(log_an_exact(m, 0.5, 10));
        detail = "ratio " + std::to_string(ratio) + ", contour vs DP " +
                 std::to_string(c.value / dp);
        return std::fabs(c.value / dp - 1.0) < 1e-6;
    });

    // 10. Poincare estimate against the exact gaussian ball volume.
    run(10, "poincare-gaussian", 30.0, [](std::string& detail) {
        ThermoProfile g = builtin_gaussian(1, 1.0 / (2.0 * M_PI));
        AsymptoticEstimate est = poincare_estimate(g, 1.0, 200);
        double exact = 0.5 * 200 * std::log(200.0) - std::lgamma(101.0);
        double ratio = std::exp(exact - est.log_estimate);
        detail = "ratio " + std::to_string(ratio);
        return std::fabs(ratio - 1.0) < 0.02;
    });

    // 11. Planck energy of the quantum oscillator.
    run(11, "planck-oscillator", 30.0, [](std::string& detail) {
        ThermoProfile p = profile(builtin_oscillator(1.0, 1.0, 0.05));
        double worst = 0.0;
        for (double beta = 0.1; beta <= 10.0 + 1e-9; beta += 0.01) {
            double closed = 0.5 + std::exp(-beta) / (1.0 - std::exp(-beta));
            worst = std::max(worst, std::fabs(p.u(beta) - closed));
        }
        detail = "worst |U - Planck| = " + std::to_string(worst);
        return worst < 1e-12;
    });

    // 12. Second law for Z (+) twist(Z, 1) at x = 1.
    run(12, "second-law-split", 60.0, [](std::string& detail) {
        ThermoProfile p1 = profile(from_lattice(Lattice::standard(1), 0.05));
        ThermoProfile p2 = profile(from_lattice(twist(Lattice::standard(1), 1.0), 0.05));
        SecondLawCheck c = second_law_check(p1, p2, M_PI, 128);
        double split_err = std::fabs(c.grid_max - c.entropy_product);
        double max_err = std::fabs(c.maximizer_e1 - c.predicted_e1);
        detail = "split error " + std::to_string(split_err) + ", maximizer error " +
                 std::to_string(max_err);
        return split_err < 1e-6 && max_err < 1e-6;
    });

    // 13. Third law: oscillator and Z-lattice at beta = 50.
    run(13, "third-law", 30.0, [](std::string& detail) {
        for (int which = 0; which < 2; ++which) {
            ThermoProfile p = which == 0 ? profile(builtin_oscillator(1.0, 1.0, 0.05))
                                         : profile(from_lattice(Lattice::standard(1), 0.3));
            auto rows = zero_temperature_report(p, {50.0});
            if (rows[0].beta_u_gap >= 1e-6 || std::fabs(rows[0].entropy_gap) >= 1e-6 ||
                rows[0].heat_capacity >= 1e-6) {
                detail = which == 0 ? "oscillator limit off" : "lattice limit off";
                return false;
            }
        }
        detail = "beta (U - H_min), S - log w, beta^2 Psi'' all below 1e-6";
        return true;
    });

    // 14. Determinism across worker counts.
    run(14, "thread-determinism", 60.0, [](std::string& detail) {
        auto corpus = make_corpus(14, 3, 2, 3);
        for (const Lattice& l : corpus) {
            EnumOptions one, four;
            one.threads = 1;
            four.threads = 4;
            one.witnesses = four.witnesses = true;
            EnumerationReport a = enumerate_ball(l, Rat(40), one);
            EnumerationReport b = enumerate_ball(l, Rat(40), four);
            if (a.count != b.count || a.histogram != b.histogram || a.witnesses != b.witnesses) {
                detail = "census differs across thread counts";
                return false;
            }
        }
        DiscreteMeasure m = from_lattice(Lattice::standard(2), 0.4, 1e-13, {}, 40.0 * M_PI);
        for (int n : {8, 24}) {
            if (log_an_exact(m, M_PI, n, 1) != log_an_exact(m, M_PI, n, 4)) {
                detail = "DP differs across thread counts";
                return false;
            }
        }
        detail = "census and DP bit-identical for 1 and 4 workers";
        return true;
    });

    std::printf("%d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
