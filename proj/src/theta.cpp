#include "thetalat/theta.hpp"

#include "thetalat/errors.hpp"
#include "thetalat/summation.hpp"

#include <algorithm>
#include <cmath>

namespace thetalat {

namespace {

// Direct summation of sum_v exp(-pi t |v|^2) on an untwisted core Gram,
// with the tail certified through beta(r)^n: the mass outside radius
// sqrt(n/(2 pi t)) r is at most beta(r)^n * theta(t).
ThetaValue theta_direct(const Lattice& core, double t, double tol, const EnumOptions& eopt) {
    std::size_t n = core.rank();
    ThetaValue tv;
    tv.t = t;
    if (n == 0) {
        tv.value = 1.0;
        tv.log_value = 0.0;
        return tv;
    }
    double r_tilde = 1.5;
    for (;;) {
        double radius_sq = r_tilde * r_tilde * n / (2.0 * M_PI * t);
        EnumerationReport rep = enumerate_ball(core, rat_from_double(radius_sq), eopt);
        CompensatedSum sum;
        for (const auto& [nsq, mult] : rep.histogram)
            sum.add(static_cast<double>(mult) * std::exp(-M_PI * t * to_double(nsq)));
        double partial = sum.value();
        double b = std::pow(banaszczyk_beta(r_tilde), static_cast<double>(n));
        if (b < 0.5) {
            double tail = b / (1.0 - b) * partial;
            if (tail <= tol) {
                tv.value = partial;
                tv.log_value = std::log(partial);
                tv.truncation_error_bound = tail;
                return tv;
            }
        }
        r_tilde += std::max(0.5, 0.3 * r_tilde);
        if (r_tilde > 60.0) throw ToleranceUnreachable("theta: radius cap reached before certification");
    }
}

ThetaValue theta_centered(const Lattice& core, double t, const std::vector<double>& center,
                          double tol, const EnumOptions& eopt) {
    std::size_t n = core.rank();
    // Tail at the shifted center is controlled by beta(r)^n * theta(t) at 0.
    ThetaValue origin = theta_direct(core, t, tol * 0.5, eopt);
    double r_tilde = 1.5;
    for (;;) {
        double b = std::pow(banaszczyk_beta(r_tilde), static_cast<double>(n));
        double tail = b * origin.value;
        if (tail <= tol) {
            double radius_sq = r_tilde * r_tilde * n / (2.0 * M_PI * t);
            std::vector<double> norms = enumerate_around(core, center, radius_sq, eopt);
            CompensatedSum sum;
            for (double nsq : norms) sum.add(std::exp(-M_PI * t * nsq));
            ThetaValue tv;
            tv.t = t;
            tv.value = sum.value();
            tv.log_value = std::log(tv.value);
            tv.truncation_error_bound = tail + origin.truncation_error_bound;
            return tv;
        }
        r_tilde += std::max(0.5, 0.3 * r_tilde);
        if (r_tilde > 60.0) throw ToleranceUnreachable("theta: radius cap reached before certification");
    }
}

Lattice untwisted_core(const Lattice& l) { return twist(l, -l.twist()); }

}  // namespace

ThetaValue theta(const Lattice& l, double t, const std::vector<double>& center,
                 const ThetaOptions& opt) {
    if (!(t > 0.0)) throw OutOfDomain("theta: t must be positive");
    std::size_t n = l.rank();
    double t_core = t * std::exp(-2.0 * l.twist());
    Lattice core = untwisted_core(l);

    if (!center.empty()) {
        if (center.size() != n) throw OutOfDomain("theta: center size != rank");
        ThetaValue tv = theta_centered(core, t_core, center, opt.tolerance, opt.enum_opt);
        tv.t = t;
        return tv;
    }
    if (opt.allow_poisson && t_core < 1.0 && n > 0) {
        // theta(t) = covol^{-1} t^{-n/2} theta_dual(1/t)
        double log_scale = -0.5 * std::log(to_double(core.core_det()))
                           - 0.5 * static_cast<double>(n) * std::log(t_core);
        double scale = std::exp(log_scale);
        double dual_tol = opt.tolerance / std::max(scale, 1.0);
        ThetaValue dv = theta_direct(Lattice::from_gram(core.gram().inverse()), 1.0 / t_core,
                                     dual_tol, opt.enum_opt);
        ThetaValue tv;
        tv.t = t;
        tv.value = scale * dv.value;
        tv.log_value = log_scale + dv.log_value;
        tv.truncation_error_bound = scale * dv.truncation_error_bound;
        tv.used_poisson = true;
        return tv;
    }
    ThetaValue tv = theta_direct(core, t_core, opt.tolerance, opt.enum_opt);
    tv.t = t;
    return tv;
}

double h0_theta(const Lattice& l, const ThetaOptions& opt) { return theta(l, 1.0, {}, opt).log_value; }

double h1_theta(const Lattice& l, const ThetaOptions& opt) { return h0_theta(dual(l), opt); }

double prr_residual(const Lattice& l, const ThetaOptions& opt) {
    return h0_theta(l, opt) - h1_theta(l, opt) - arakelov_degree(l);
}

double banaszczyk_beta(double r_tilde) {
    if (r_tilde < 1.0) throw OutOfDomain("banaszczyk_beta: argument below 1");
    return r_tilde * std::exp(-0.5 * (r_tilde * r_tilde - 1.0));
}

double beta_inverse(double y) {
    if (!(y > 0.0) || y > 1.0) throw OutOfDomain("beta_inverse: value outside (0, 1]");
    if (y == 1.0) return 1.0;
    double lo = 1.0, hi = 10.0;
    while (banaszczyk_beta(hi) > y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw OutOfDomain("beta_inverse: bracket overflow");
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (banaszczyk_beta(mid) > y ? lo : hi) = mid;
    }
    // Newton polish; beta'(r) = (1 - r^2) exp(-(r^2-1)/2)
    double r = 0.5 * (lo + hi);
    for (int i = 0; i < 6; ++i) {
        double f = banaszczyk_beta(r) - y;
        double df = (1.0 - r * r) * std::exp(-0.5 * (r * r - 1.0));
        if (df == 0.0) break;
        double step = f / df;
        double next = r - step;
        if (next < 1.0) next = 1.0;
        r = next;
    }
    return r;
}

TailCheck tail_bound_check(const Lattice& l, const std::vector<double>& center, double r_tilde,
                           const ThetaOptions& opt) {
    if (r_tilde < 1.0) throw OutOfDomain("tail_bound_check: r_tilde below 1");
    std::size_t n = l.rank();
    Lattice core = untwisted_core(l);
    double t_core = std::exp(-2.0 * l.twist());  // the t = 1 check in effective units
    std::vector<double> x = center.empty() ? std::vector<double>(n, 0.0) : center;

    ThetaValue total = theta_centered(core, t_core, x, opt.tolerance, opt.enum_opt);
    double r_sq = r_tilde * r_tilde * n / (2.0 * M_PI * t_core);
    std::vector<double> inner = enumerate_around(core, x, r_sq, opt.enum_opt);
    CompensatedSum below;
    double r_eff = r_tilde * r_tilde * n / (2.0 * M_PI);  // threshold in effective units
    for (double nsq : inner) {
        if (nsq * std::exp(-2.0 * l.twist()) < r_eff) below.add(std::exp(-M_PI * t_core * nsq));
    }
    TailCheck tc;
    tc.tail = total.value - below.value() + total.truncation_error_bound;
    double b = std::pow(banaszczyk_beta(r_tilde), static_cast<double>(n));
    tc.bound = b * theta(l, 1.0, {}, opt).value;
    tc.verdict = check_le(tc.tail, tc.bound);
    return tc;
}

AuditLine centered_mass_check(const Lattice& l, const std::vector<double>& center,
                              const ThetaOptions& opt) {
    AuditLine line;
    line.name = "Eq-PoissonGaussineqmoins";
    double tx = theta(l, 1.0, center, opt).value;
    double t0 = theta(l, 1.0, {}, opt).value;
    line.lhs = 2.0 / covolume(l);
    line.rhs = tx + t0;
    line.verdict = check_le(line.lhs, line.rhs);
    return line;
}

std::vector<AuditLine> transference_audit(const Lattice& l, const EnumOptions& opt) {
    std::size_t n = l.rank();
    if (n == 0) throw ZeroRank("transference_audit of a rank-0 lattice");
    std::vector<AuditLine> lines;
    double nn = static_cast<double>(n);

    SuccessiveMinima sm = successive_minima(l, opt);
    SuccessiveMinima smd = successive_minima(dual(l), opt);
    for (std::size_t i = 0; i < n; ++i) {
        AuditLine a;
        a.name = "Eq-Blambda-" + std::to_string(i + 1);
        a.lhs = sm.values[i] * smd.values[n - 1 - i];
        a.rhs = nn;
        a.verdict = check_le(a.lhs, a.rhs);
        lines.push_back(a);
    }

    CoveringRadiusBounds rc = covering_radius_bounds(l, opt);
    double lam_dual = smd.values[0];
    auto interval_le = [](double lo, double hi, double bound) {
        if (hi <= bound + 1e-9 * std::max(1.0, bound)) return Verdict::verified;
        if (lo > bound + 1e-9 * std::max(1.0, bound)) return Verdict::violated;
        return Verdict::verified_up_to_bound;
    };

    AuditLine br;
    br.name = "Eq-BR";
    br.lhs = rc.hi * lam_dual;
    br.rhs = nn / 2.0;
    br.verdict = interval_le(rc.lo * lam_dual, rc.hi * lam_dual, br.rhs);
    lines.push_back(br);

    double t_n = beta_inverse(std::pow(3.0, -1.0 / nn));
    AuditLine brr;
    brr.name = "Eq-BRraf";
    brr.lhs = rc.hi * lam_dual;
    brr.rhs = t_n * t_n * nn / (2.0 * M_PI);
    brr.verdict = interval_le(rc.lo * lam_dual, rc.hi * lam_dual, brr.rhs);
    lines.push_back(brr);

    // If both normalized quantities exceed 1, beta(R)^n + 2 beta(lam)^n >= 1.
    AuditLine bb;
    bb.name = "Lem-betabeta";
    double scale = std::sqrt(nn / (2.0 * M_PI));
    double lam_t = lam_dual / scale;
    double r_lo = rc.lo / scale, r_hi = rc.hi / scale;
    if (lam_t > 1.0 && r_lo > 1.0) {
        double lhs = 1.0;
        double rhs_worst = std::pow(banaszczyk_beta(r_hi), nn) + 2.0 * std::pow(banaszczyk_beta(lam_t), nn);
        double rhs_best = std::pow(banaszczyk_beta(r_lo), nn) + 2.0 * std::pow(banaszczyk_beta(lam_t), nn);
        bb.lhs = lhs;
        bb.rhs = rhs_worst;
        if (rhs_worst >= lhs - 1e-9) {
            bb.verdict = Verdict::verified;
        } else if (rhs_best < lhs - 1e-9) {
            bb.verdict = Verdict::violated;
        } else {
            bb.verdict = Verdict::verified_up_to_bound;
        }
    } else {
        bb.detail = "hypothesis min(lambda, R) > 1 not established";
        bb.verdict = Verdict::not_applicable;
    }
    lines.push_back(bb);
    return lines;
}

std::vector<AuditLine> comparison_audit(const Lattice& l, const ThetaOptions& opt) {
    std::size_t n = l.rank();
    if (n == 0) throw ZeroRank("comparison_audit of a rank-0 lattice");
    double nn = static_cast<double>(n);
    std::vector<AuditLine> lines;

    double h0t = h0_theta(l, opt);
    double h0a = h0_ar(l, Rat(1), opt.enum_opt);
    double diff = h0t - h0a;

    AuditLine lo;
    lo.name = "Eq-ineqhonhot-lo";
    lo.lhs = -M_PI;
    lo.rhs = diff;
    lo.verdict = check_le(lo.lhs, lo.rhs);
    lines.push_back(lo);

    AuditLine hi;
    hi.name = "Eq-ineqhonhot-hi";
    hi.lhs = diff;
    hi.rhs = 0.5 * nn * std::log(nn) + std::log(1.0 / (1.0 - 1.0 / (2.0 * M_PI)));
    hi.verdict = check_le(hi.lhs, hi.rhs);
    lines.push_back(hi);

    // h0_Ar at x = n/(2 pi) against h0_theta, with C(n) on the low side.
    double x = nn / (2.0 * M_PI);
    double h0a_x = h0_ar(l, rat_from_double(x), opt.enum_opt);
    double cn = std::log(nn / 2.0) + (1.0 + nn / 2.0) * std::log(1.0 + 2.0 / nn);
    double d2 = h0a_x - h0t;

    AuditLine plo;
    plo.name = "Prop-honhonthot-lo";
    plo.lhs = -cn;
    plo.rhs = d2;
    plo.verdict = check_le(plo.lhs, plo.rhs);
    lines.push_back(plo);

    AuditLine phi;
    phi.name = "Prop-honhonthot-hi";
    phi.lhs = d2;
    phi.rhs = nn / 2.0;
    phi.verdict = check_le(phi.lhs, phi.rhs);
    lines.push_back(phi);

    // Monotonicity of log theta and of log theta + (n/2) log t on a grid.
    std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 4.0};
    bool dec_ok = true, inc_ok = true;
    double prev_log = 0.0, prev_mix = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double lt = theta(l, grid[i], {}, opt).log_value;
        double mix = lt + 0.5 * nn * std::log(grid[i]);
        if (i > 0) {
            if (lt > prev_log + 1e-9) dec_ok = false;
            if (mix < prev_mix - 1e-9) inc_ok = false;
        }
        prev_log = lt;
        prev_mix = mix;
    }
    AuditLine dec;
    dec.name = "Lem-VarBanas-decreasing";
    dec.verdict = dec_ok ? Verdict::verified : Verdict::violated;
    lines.push_back(dec);
    AuditLine inc;
    inc.name = "Lem-VarBanas-increasing";
    inc.verdict = inc_ok ? Verdict::verified : Verdict::violated;
    lines.push_back(inc);
    return lines;
}

std::vector<AuditLine> structure_audit(const Lattice& l, const IntMat& f1, const IntMat& f2,
                                       const ThetaOptions& opt) {
    std::vector<AuditLine> lines;

    AdmissibleSequence seq = sub_quotient(l, f1);
    AuditLine sub;
    sub.name = "Eq-ineqsumdir";
    sub.lhs = h0_theta(l, opt);
    sub.rhs = h0_theta(seq.sub, opt) + h0_theta(seq.quotient, opt);
    sub.verdict = check_le(sub.lhs, sub.rhs);
    lines.push_back(sub);

    // Submodularity over the spans of f1 and f2 with restricted norms.
    IntMat b1 = column_span_basis(f1);
    IntMat b2 = column_span_basis(f2);
    IntMat inter = module_intersection(b1, b2);
    IntMat joined(l.rank(), b1.cols() + b2.cols());
    for (std::size_t i = 0; i < l.rank(); ++i) {
        for (std::size_t j = 0; j < b1.cols(); ++j) joined.at(i, j) = b1.at(i, j);
        for (std::size_t j = 0; j < b2.cols(); ++j) joined.at(i, b1.cols() + j) = b2.at(i, j);
    }
    auto h0_of = [&](const IntMat& gens) {
        if (gens.cols() == 0) return 0.0;  // the zero module: theta = 1
        return h0_theta(restrict_to(l, gens), opt);
    };
    AuditLine rsd;
    rsd.name = "Thm-RSD";
    rsd.lhs = h0_of(b1) + h0_of(b2);
    rsd.rhs = h0_of(inter) + h0_of(joined);
    rsd.verdict = check_le(rsd.lhs, rsd.rhs);
    lines.push_back(rsd);
    return lines;
}

AuditLine direct_sum_additivity_check(const Lattice& a, const Lattice& b, const ThetaOptions& opt) {
    AuditLine line;
    line.name = "Eq-hotsum";
    line.lhs = h0_theta(direct_sum(a, b), opt);
    line.rhs = h0_theta(a, opt) + h0_theta(b, opt);
    double resid = std::fabs(line.lhs - line.rhs);
    line.detail = "residual " + std::to_string(resid);
    line.verdict = resid < 1e-9 ? Verdict::verified : Verdict::violated;
    return line;
}

AsymptoteCheck theta_asymptote_check(const Lattice& l, double target, const ThetaOptions& opt) {
    AsymptoteCheck ac;
    double nn = static_cast<double>(l.rank());
    double deg = arakelov_degree(l);
    double t = 1.0;
    double prev = 0.0;
    for (int i = 0; i < 24; ++i) {
        double eps = theta(l, t, {}, opt).log_value + 0.5 * nn * std::log(t) - deg;
        ac.t_values.push_back(t);
        ac.epsilon.push_back(eps);
        if (i > 0 && std::fabs(eps) > std::fabs(prev) + 1e-15) ac.monotone = false;
        prev = eps;
        if (std::fabs(eps) < target) {
            ac.reached_tolerance = true;
            break;
        }
        t *= 0.5;
    }
    return ac;
}

}  // namespace thetalat
