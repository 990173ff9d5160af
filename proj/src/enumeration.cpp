#include "thetalat/enumeration.hpp"

#include "thetalat/errors.hpp"
#include "thetalat/parallel.hpp"
#include "thetalat/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>

namespace thetalat {

namespace {

constexpr double kRelSlack = 1e-9;

// Upper-triangular Cholesky factor of the (double image of the) core Gram:
// G = R^T R. Positive-definiteness was checked exactly at construction.
std::vector<double> cholesky_upper(const RatMat& g) {
    std::size_t n = g.rows();
    std::vector<double> r(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = to_double(g.at(i, j));
            for (std::size_t k = 0; k < i; ++k) s -= r[k * n + i] * r[k * n + j];
            if (i == j) {
                if (s <= 0.0) throw NotPositiveDefinite("cholesky: non-positive pivot");
                r[i * n + i] = std::sqrt(s);
            } else {
                r[i * n + j] = s / r[i * n + i];
            }
        }
    }
    return r;
}

struct QuadForm {
    const RatMat* gram;
    bool int64_ok = false;
    Int denom = 1;                 // common denominator of the entries
    std::vector<std::int64_t> ig;  // row-major scaled entries, valid when int64_ok

    explicit QuadForm(const RatMat& g, double bound_hint) : gram(&g) {
        std::size_t n = g.rows();
        // Clear denominators: D * G in int64 keeps the exact check cheap.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                denom = lcm(denom, denominator(g.at(i, j)));
        if (denom > Int(1) << 32) return;
        ig.assign(n * n, 0);
        double maxg = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Int scaled = numerator(g.at(i, j)) * (denom / denominator(g.at(i, j)));
                if (abs(scaled) > Int(1) << 40) return;
                ig[i * n + j] = scaled.convert_to<std::int64_t>();
                maxg = std::max(maxg, std::fabs(to_double(scaled)));
            }
        // true coordinate bound: v_i^2 <= x (G^{-1})_ii
        double maxc = 2.0;
        try {
            RatMat inv = g.inverse();
            for (std::size_t i = 0; i < n; ++i)
                maxc = std::max(maxc,
                                std::sqrt(std::max(0.0, bound_hint * to_double(inv.at(i, i)))) + 2.0);
        } catch (const std::exception&) {
            return;  // keep the exact rational path
        }
        int64_ok = maxg * maxc * maxc * n * n < 4.0e18;
    }

    std::int64_t scaled_norm(const std::vector<long>& v) const {
        std::size_t n = gram->rows();
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            std::int64_t row = 0;
            for (std::size_t j = 0; j < n; ++j) row += ig[i * n + j] * v[j];
            acc += v[i] * row;
        }
        return acc;
    }

    // Largest integer T with T / denom <= x, so acc <= T is the exact test.
    std::int64_t scaled_threshold(const Rat& x) const {
        Int t = numerator(x) * denom / denominator(x);  // truncation = floor (x >= 0)
        return t.convert_to<std::int64_t>();
    }

    Rat norm_sq(const std::vector<long>& v) const {
        std::size_t n = gram->rows();
        if (int64_ok) return Rat(Int(scaled_norm(v)), denom);
        Rat acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            Rat row = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (v[j] != 0) row += gram->at(i, j) * v[j];
            acc += Rat(v[i]) * row;
        }
        return acc;
    }
};

struct BranchResult {
    std::uint64_t count = 0;
    std::map<Rat, std::uint64_t> histogram;
    std::map<std::int64_t, std::uint64_t> int_histogram;  // scaled keys, fast path
    std::vector<std::vector<long>> witnesses;
};

struct EnumContext {
    std::size_t n;
    std::vector<double> r;    // cholesky, row-major upper
    std::vector<double> d;    // r_ii^2
    std::vector<double> mu;   // mu[i*n+j] = r[i][j]/r[i][i] for j > i
    double bound;             // float pruning bound (core units, slack applied)
    const QuadForm* form;
    const Rat* exact_bound;   // nullptr for float-only (centered) enumeration
    std::int64_t int_bound;   // scaled threshold, valid when form->int64_ok
    std::vector<double> center;
    bool witnesses;
    std::atomic<std::uint64_t>* visited;
    std::uint64_t budget;
    std::atomic<bool>* aborted;
};

// Depth-first over coordinates v[k], k = n-1 .. 0; shift[j] = v[j] - center[j].
void enumerate_level(const EnumContext& ctx, std::size_t k, double rho,
                     std::vector<long>& v, std::vector<double>& shift, BranchResult& out,
                     std::vector<double>* float_norms) {
    double remain = ctx.bound - rho;
    if (remain < 0) return;
    double c = -ctx.center[k];
    for (std::size_t j = k + 1; j < ctx.n; ++j) c += ctx.mu[k * ctx.n + j] * shift[j];
    double w = std::sqrt(std::max(0.0, remain / ctx.d[k]));
    long lo = static_cast<long>(std::ceil(-c - w - 1e-12));
    long hi = static_cast<long>(std::floor(-c + w + 1e-12));
    for (long t = lo; t <= hi; ++t) {
        if (ctx.aborted->load(std::memory_order_relaxed)) return;
        v[k] = t;
        shift[k] = static_cast<double>(t) - ctx.center[k];
        double term = (t + c) * (t + c) * ctx.d[k];
        double rho2 = rho + term;
        if (rho2 > ctx.bound) continue;
        if (k == 0) {
            std::uint64_t seen = ctx.visited->fetch_add(1, std::memory_order_relaxed) + 1;
            if (seen > ctx.budget) {
                ctx.aborted->store(true, std::memory_order_relaxed);
                return;
            }
            if (ctx.exact_bound) {
                if (ctx.form->int64_ok) {
                    std::int64_t nn = ctx.form->scaled_norm(v);
                    if (nn <= ctx.int_bound) {
                        ++out.count;
                        ++out.int_histogram[nn];
                        if (ctx.witnesses) out.witnesses.push_back(v);
                    }
                } else {
                    Rat nn = ctx.form->norm_sq(v);
                    if (nn <= *ctx.exact_bound) {
                        ++out.count;
                        ++out.histogram[nn];
                        if (ctx.witnesses) out.witnesses.push_back(v);
                    }
                }
            } else {
                ++out.count;
                if (float_norms) float_norms->push_back(rho2);
            }
        } else {
            enumerate_level(ctx, k - 1, rho2, v, shift, out, float_norms);
        }
    }
    v[k] = 0;
    shift[k] = -ctx.center[k];
}

// Shared driver: splits the outermost coordinate across workers and merges
// slot-by-slot, so the result is identical for any worker count.
BranchResult run_enumeration(const Lattice& l, double float_bound, const Rat* exact_bound,
                             const std::vector<double>& center, const EnumOptions& opt,
                             std::vector<double>* float_norms) {
    std::size_t n = l.rank();
    BranchResult total;
    if (n == 0) {
        if (!exact_bound || *exact_bound >= 0) {
            total.count = 1;
            if (exact_bound) total.histogram[Rat(0)] = 1;
            if (float_norms) float_norms->push_back(0.0);
            if (opt.witnesses && exact_bound) total.witnesses.push_back({});
        }
        return total;
    }

    EnumContext ctx;
    ctx.n = n;
    ctx.r = cholesky_upper(l.gram());
    ctx.d.resize(n);
    ctx.mu.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        ctx.d[i] = ctx.r[i * n + i] * ctx.r[i * n + i];
        for (std::size_t j = i + 1; j < n; ++j)
            ctx.mu[i * n + j] = ctx.r[i * n + j] / ctx.r[i * n + i];
    }
    ctx.bound = float_bound * (1.0 + kRelSlack) + 1e-12;
    QuadForm form(l.gram(), ctx.bound);
    ctx.form = &form;
    ctx.exact_bound = exact_bound;
    ctx.int_bound = (exact_bound && form.int64_ok) ? form.scaled_threshold(*exact_bound) : 0;
    ctx.center = center.empty() ? std::vector<double>(n, 0.0) : center;
    ctx.witnesses = opt.witnesses;
    std::atomic<std::uint64_t> visited{0};
    std::atomic<bool> aborted{false};
    ctx.visited = &visited;
    ctx.budget = opt.budget;
    ctx.aborted = &aborted;

    // Interval of the outermost coordinate.
    std::size_t top = n - 1;
    double ctop = ctx.center[top];
    double wtop = std::sqrt(std::max(0.0, ctx.bound / ctx.d[top]));
    long lo = static_cast<long>(std::ceil(ctop - wtop - 1e-12));
    long hi = static_cast<long>(std::floor(ctop + wtop + 1e-12));
    if (lo > hi) return total;
    std::size_t slots = static_cast<std::size_t>(hi - lo + 1);

    std::vector<BranchResult> results(slots);
    std::vector<std::vector<double>> slot_norms(float_norms ? slots : 0);
    parallel_for(slots, opt.threads, [&](std::size_t s) {
        long t = lo + static_cast<long>(s);
        std::vector<long> v(n, 0);
        std::vector<double> shift(n);
        for (std::size_t j = 0; j < n; ++j) shift[j] = -ctx.center[j];
        v[top] = t;
        shift[top] = static_cast<double>(t) - ctx.center[top];
        double diff = shift[top];
        double rho = diff * diff * ctx.d[top];
        if (rho > ctx.bound) return;
        std::vector<double>* fn = float_norms ? &slot_norms[s] : nullptr;
        if (n == 1) {
            if (ctx.aborted->load(std::memory_order_relaxed)) return;
            std::uint64_t seen = ctx.visited->fetch_add(1, std::memory_order_relaxed) + 1;
            if (seen > ctx.budget) {
                ctx.aborted->store(true, std::memory_order_relaxed);
                return;
            }
            BranchResult& out = results[s];
            if (exact_bound) {
                if (form.int64_ok) {
                    std::int64_t nn = form.scaled_norm(v);
                    if (nn <= ctx.int_bound) {
                        ++out.count;
                        ++out.int_histogram[nn];
                        if (opt.witnesses) out.witnesses.push_back(v);
                    }
                } else {
                    Rat nn = form.norm_sq(v);
                    if (nn <= *exact_bound) {
                        ++out.count;
                        ++out.histogram[nn];
                        if (opt.witnesses) out.witnesses.push_back(v);
                    }
                }
            } else {
                ++out.count;
                if (fn) fn->push_back(rho);
            }
        } else {
            enumerate_level(ctx, top - 1, rho, v, shift, results[s], fn);
        }
    });

    if (aborted.load()) throw BudgetExceeded("enumeration visited more points than the budget allows");

    std::map<std::int64_t, std::uint64_t> merged_int;
    for (std::size_t s = 0; s < slots; ++s) {
        total.count += results[s].count;
        for (const auto& [k, m] : results[s].histogram) total.histogram[k] += m;
        for (const auto& [k, m] : results[s].int_histogram) merged_int[k] += m;
        if (opt.witnesses)
            total.witnesses.insert(total.witnesses.end(), results[s].witnesses.begin(),
                                   results[s].witnesses.end());
        if (float_norms)
            float_norms->insert(float_norms->end(), slot_norms[s].begin(), slot_norms[s].end());
    }
    for (const auto& [k, m] : merged_int) total.histogram[Rat(Int(k), form.denom)] += m;
    if (opt.witnesses) std::sort(total.witnesses.begin(), total.witnesses.end());
    return total;
}

}  // namespace

EnumerationReport enumerate_ball(const Lattice& l, const Rat& x, const EnumOptions& opt) {
    if (x < 0) throw OutOfDomain("enumerate_ball: negative radius");
    // Effective bound x corresponds to x * e^{2t} in core units.
    Rat core_bound = x;
    if (l.twist() != 0.0) core_bound = x * rat_from_double(std::exp(2.0 * l.twist()));
    BranchResult r = run_enumeration(l, to_double(core_bound), &core_bound, {}, opt, nullptr);
    EnumerationReport rep;
    rep.radius_sq = core_bound;
    rep.count = r.count;
    rep.histogram = std::move(r.histogram);
    rep.witnesses = std::move(r.witnesses);
    return rep;
}

namespace {

struct SvpState {
    std::size_t n;
    std::vector<double> d, mu;
    const QuadForm* form;
    Rat best_sq;
    double best_float;
    std::vector<long> best_v;
    std::uint64_t visited = 0;
    std::uint64_t budget;
};

// Shortest-vector search with a shrinking radius; ascending coordinate order
// keeps the traversal (and the lexicographic tie-break) deterministic.
void svp_level(SvpState& st, std::size_t k, double rho, std::vector<long>& v) {
    double limit = st.best_float * (1.0 + kRelSlack) + 1e-12;
    if (rho > limit) return;
    double c = 0.0;
    for (std::size_t j = k + 1; j < st.n; ++j) c += st.mu[k * st.n + j] * v[j];
    double w = std::sqrt(std::max(0.0, (limit - rho) / st.d[k]));
    long lo = static_cast<long>(std::ceil(-c - w - 1e-12));
    long hi = static_cast<long>(std::floor(-c + w + 1e-12));
    for (long t = lo; t <= hi; ++t) {
        v[k] = t;
        double term = (t + c) * (t + c) * st.d[k];
        if (rho + term > st.best_float * (1.0 + kRelSlack) + 1e-12) continue;
        if (k == 0) {
            if (++st.visited > st.budget)
                throw BudgetExceeded("shortest-vector search exceeded the point budget");
            bool zero = std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
            if (zero) continue;
            Rat nn = st.form->norm_sq(v);
            if (nn < st.best_sq || (nn == st.best_sq && v < st.best_v)) {
                st.best_sq = nn;
                st.best_float = to_double(nn);
                st.best_v = v;
            }
        } else {
            svp_level(st, k - 1, rho + term, v);
        }
    }
    v[k] = 0;
}

}  // namespace

Minimum first_minimum(const Lattice& l, const EnumOptions& opt) {
    std::size_t n = l.rank();
    if (n == 0) throw ZeroRank("first_minimum of a rank-0 lattice");
    SvpState st;
    st.n = n;
    std::vector<double> r = cholesky_upper(l.gram());
    st.d.resize(n);
    st.mu.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        st.d[i] = r[i * n + i] * r[i * n + i];
        for (std::size_t j = i + 1; j < n; ++j) st.mu[i * n + j] = r[i * n + j] / r[i * n + i];
    }
    Rat best = l.gram().at(0, 0);
    std::size_t besti = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (l.gram().at(i, i) < best) {
            best = l.gram().at(i, i);
            besti = i;
        }
    QuadForm form(l.gram(), to_double(best));
    st.form = &form;
    st.best_sq = best;
    st.best_float = to_double(best);
    st.best_v.assign(n, 0);
    st.best_v[besti] = 1;
    st.budget = opt.budget;
    std::vector<long> v(n, 0);
    // The search re-visits the seed vector, so the tie-break sees it too.
    svp_level(st, n - 1, 0.0, v);
    Minimum m;
    m.norm_sq_core = st.best_sq;
    m.value = std::exp(-l.twist()) * std::sqrt(to_double(st.best_sq));
    m.witness = st.best_v;
    return m;
}

SuccessiveMinima successive_minima(const Lattice& l, const EnumOptions& opt) {
    std::size_t n = l.rank();
    if (n == 0) throw ZeroRank("successive_minima of a rank-0 lattice");
    Rat bound = l.gram().at(0, 0);
    for (std::size_t i = 1; i < n; ++i) bound = std::max(bound, l.gram().at(i, i));
    EnumOptions o = opt;
    o.witnesses = true;
    EnumerationReport rep = enumerate_ball(twist(l, -l.twist()), bound, o);

    // Group witnesses by exact norm, ascending; sweep until rank n is reached.
    QuadForm form(l.gram(), to_double(bound));
    std::map<Rat, std::vector<std::vector<long>>> by_norm;
    for (const auto& w : rep.witnesses) {
        Rat nn = form.norm_sq(w);
        if (nn > 0) by_norm[nn].push_back(w);
    }
    SuccessiveMinima sm;
    RatMat echelon(n, n);  // row space of the independent set found so far
    std::size_t rank = 0;
    for (auto& [nn, vecs] : by_norm) {
        std::sort(vecs.begin(), vecs.end());
        for (const auto& w : vecs) {
            // Reduce w against the echelon rows; nonzero remainder => new rank.
            std::vector<Rat> row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rat(w[j]);
            for (std::size_t r = 0; r < rank; ++r) {
                std::size_t p = 0;
                while (p < n && echelon.at(r, p) == 0) ++p;
                if (p < n && row[p] != 0) {
                    Rat f = row[p] / echelon.at(r, p);
                    for (std::size_t j = p; j < n; ++j) row[j] -= f * echelon.at(r, j);
                }
            }
            bool nonzero = std::any_of(row.begin(), row.end(), [](const Rat& x) { return x != 0; });
            if (!nonzero) continue;
            for (std::size_t j = 0; j < n; ++j) echelon.at(rank, j) = row[j];
            ++rank;
            sm.norms_sq_core.push_back(nn);
            sm.values.push_back(std::exp(-l.twist()) * std::sqrt(to_double(nn)));
            sm.witnesses.push_back(w);
            if (rank == n) return sm;
        }
    }
    // The ball of radius max_i G_ii always contains n independent vectors.
    throw NoConvergence("successive_minima: rank deficit inside the diagonal bound");
}

double h0_ar(const Lattice& l, const Rat& x, const EnumOptions& opt) {
    return std::log(static_cast<double>(enumerate_ball(l, x, opt).count));
}

CoveringRadiusBounds covering_radius_bounds(const Lattice& l, const EnumOptions& opt) {
    std::size_t n = l.rank();
    if (n == 0) throw ZeroRank("covering radius of a rank-0 lattice");
    double scale = std::exp(-l.twist());
    CoveringRadiusBounds b;

    bool diagonal = true;
    for (std::size_t i = 0; i < n && diagonal; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && l.gram().at(i, j) != 0) {
                diagonal = false;
                break;
            }
    if (diagonal) {
        Rat sum = 0;
        for (std::size_t i = 0; i < n; ++i) sum += l.gram().at(i, i);
        double r = 0.5 * std::sqrt(to_double(sum)) * scale;
        b.lo = b.hi = r;
        b.exact = true;
        return b;
    }

    double logvn = 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0);
    b.lo = std::exp((-logvn - arakelov_degree(l)) / static_cast<double>(n));

    ReducedBasis red = hkz_reduce(l, opt);
    Rat gs_sum = 0;
    for (const Rat& g2 : red.gs_norms_sq_core) gs_sum += g2;
    b.hi = 0.5 * std::sqrt(to_double(gs_sum)) * scale;
    // Floating round-off can push the Babai bound a hair under the volume
    // bound on near-orthogonal inputs; the interval stays ordered.
    if (b.hi < b.lo) b.lo = b.hi;
    return b;
}

std::vector<double> enumerate_around(const Lattice& l, const std::vector<double>& center,
                                     double bound_core, const EnumOptions& opt) {
    if (center.size() != l.rank()) throw OutOfDomain("enumerate_around: center size != rank");
    std::vector<double> norms;
    run_enumeration(l, bound_core, nullptr, center, opt, &norms);
    std::sort(norms.begin(), norms.end());
    return norms;
}

}  // namespace thetalat
