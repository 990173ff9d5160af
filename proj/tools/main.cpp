// Command-line front door: file I/O, corpus generation, audit orchestration,
// and plot-data emission. Machine-readable results go to stdout, logs to
// stderr.

#include "thetalat/asymptotics.hpp"
#include "thetalat/audit.hpp"
#include "thetalat/errors.hpp"
#include "thetalat/json_io.hpp"
#include "thetalat/parallel.hpp"
#include "thetalat/reduction.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace tl = thetalat;

namespace {

struct GlobalFlags {
    double tol = 1e-9;
    std::uint64_t budget = 100000000;
    int threads = 0;  // 0 = auto
    std::uint64_t seed = 1;
};

tl::EnumOptions enum_opts(const GlobalFlags& g) {
    tl::EnumOptions eo;
    eo.budget = g.budget;
    eo.threads = g.threads == 0 ? 0 : g.threads;
    return eo;
}

tl::DiscreteMeasure load_measure(const std::string& measure_file, const std::string& builtin,
                                 const std::string& lattice_file, double beta_min, double planck,
                                 double freq, double cover, const GlobalFlags& g) {
    if (!measure_file.empty()) return tl::measure_from_json(tl::read_json_file(measure_file));
    if (builtin == "oscillator") return tl::builtin_oscillator(planck, freq, beta_min);
    if (builtin == "geometric") return tl::builtin_geometric(beta_min);
    if (!lattice_file.empty()) {
        tl::Lattice l = tl::lattice_from_json(tl::read_json_file(lattice_file));
        return tl::from_lattice(l, beta_min, 1e-13, enum_opts(g), cover);
    }
    throw CLI::ValidationError("need --measure, --builtin, or --lattice");
}

int emit_audit(const std::vector<tl::AuditItem>& items) {
    for (const auto& it : items) {
        tl::Json j = tl::audit_line_to_json(it.line);
        j["lattice"] = it.lattice_index;
        std::cout << j.dump() << "\n";
    }
    return tl::any_violated(items) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"theta invariants and thermodynamic formalism of Euclidean lattices"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_option("--tol", g.tol, "audit tolerance");
    app.add_option("--budget", g.budget, "enumeration point cap");
    app.add_option("--threads", g.threads, "worker threads (0 = auto)");
    app.add_option("--seed", g.seed, "RNG seed");

    // invariants
    auto* inv = app.add_subcommand("invariants", "classical and theta invariants of a lattice");
    std::string inv_file;
    double inv_x = 1.0;
    inv->add_option("--lattice", inv_file, "lattice JSON file")->required();
    inv->add_option("--x", inv_x, "ball radius^2 for the point count");

    // reduce
    auto* red = app.add_subcommand("reduce", "HKZ-reduced basis");
    std::string red_file;
    red->add_option("--lattice", red_file)->required();

    // theta
    auto* th = app.add_subcommand("theta", "certified theta value");
    std::string th_file;
    double th_t = 1.0;
    std::string th_center;
    th->add_option("--lattice", th_file)->required();
    th->add_option("--t", th_t, "argument t > 0");
    th->add_option("--center", th_center, "comma-separated center coordinates");

    // entropy
    auto* en = app.add_subcommand("entropy", "Legendre entropy S(E) of a measure");
    std::string en_measure, en_builtin, en_lattice, en_grid_e, en_grid_beta;
    double en_e = 1.0, en_beta_min = 0.05, en_planck = 1.0, en_freq = 1.0;
    en->add_option("--measure", en_measure);
    en->add_option("--builtin", en_builtin)->check(CLI::IsMember({"oscillator", "geometric"}));
    en->add_option("--lattice", en_lattice);
    en->add_option("--E", en_e)->required();
    en->add_option("--beta-min", en_beta_min);
    en->add_option("--planck", en_planck);
    en->add_option("--freq", en_freq);
    en->add_option("--grid-e", en_grid_e, "lo:hi:count, emit CSV rows E,S,beta");
    en->add_option("--grid-beta", en_grid_beta, "lo:hi:count, emit CSV rows beta,Psi,U");

    // an
    auto* an = app.add_subcommand("an", "exact A_n(E) by coefficient convolution");
    std::string an_measure, an_builtin, an_lattice;
    int an_n = 1;
    double an_e = 1.0, an_beta_min = 0.05;
    an->add_option("--measure", an_measure);
    an->add_option("--builtin", an_builtin)->check(CLI::IsMember({"oscillator", "geometric"}));
    an->add_option("--lattice", an_lattice);
    an->add_option("--n", an_n)->required();
    an->add_option("--E", an_e)->required();
    an->add_option("--beta-min", an_beta_min);

    // asymptotic
    auto* as = app.add_subcommand("asymptotic", "saddle-point estimate of A_n(E)");
    std::string as_measure, as_builtin, as_lattice, as_variant = "df";
    int as_n = 100;
    double as_e = 1.0, as_beta_min = 0.05;
    bool as_contour = false;
    as->add_option("--measure", as_measure);
    as->add_option("--builtin", as_builtin)->check(CLI::IsMember({"oscillator", "geometric"}));
    as->add_option("--lattice", as_lattice);
    as->add_option("--n", as_n)->required();
    as->add_option("--E", as_e)->required();
    as->add_option("--variant", as_variant)->check(CLI::IsMember({"df", "poincare"}));
    as->add_option("--beta-min", as_beta_min);
    as->add_flag("--contour", as_contour, "also evaluate the contour integral");

    // audit
    auto* au = app.add_subcommand("audit", "inequality audit over a corpus");
    std::string au_suite, au_lattice, au_dir;
    std::size_t au_rank = 3, au_count = 5;
    long au_bound = 3;
    au->add_option("suite", au_suite, "transference | comparison | structure | thermo")
        ->required();
    au->add_option("--lattice", au_lattice, "single lattice JSON file");
    au->add_option("--corpus-dir", au_dir, "directory of lattice JSON files");
    au->add_option("--rank", au_rank);
    au->add_option("--count", au_count);
    au->add_option("--entry-bound", au_bound);

    // corpus
    auto* co = app.add_subcommand("corpus", "generate seeded random integral lattices");
    std::string co_out = ".";
    std::size_t co_rank = 3, co_count = 5;
    long co_bound = 3;
    co->add_option("--out", co_out, "output directory")->required();
    co->add_option("--rank", co_rank);
    co->add_option("--count", co_count);
    co->add_option("--entry-bound", co_bound);

    // converge
    auto* cv = app.add_subcommand("converge", "(1/n) log A_n(E) against S(E)");
    std::string cv_measure, cv_builtin, cv_lattice, cv_ns = "10,20,40", cv_format = "csv";
    double cv_e = 1.0, cv_beta_min = 0.05;
    cv->add_option("--measure", cv_measure);
    cv->add_option("--builtin", cv_builtin)->check(CLI::IsMember({"oscillator", "geometric"}));
    cv->add_option("--lattice", cv_lattice);
    cv->add_option("--E", cv_e)->required();
    cv->add_option("--n", cv_ns, "comma-separated n values");
    cv->add_option("--beta-min", cv_beta_min);
    cv->add_option("--format", cv_format)->check(CLI::IsMember({"json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*inv) {
            tl::Lattice l = tl::lattice_from_json(tl::read_json_file(inv_file));
            tl::Json j;
            j["rank"] = l.rank();
            j["covolume"] = tl::covolume(l);
            j["degree"] = tl::arakelov_degree(l);
            j["slope"] = tl::slope(l);
            tl::SuccessiveMinima sm = tl::successive_minima(l, enum_opts(g));
            j["minima"] = sm.values;
            tl::CoveringRadiusBounds rc = tl::covering_radius_bounds(l, enum_opts(g));
            j["covering_radius"] = {{"lo", rc.lo}, {"hi", rc.hi}, {"exact", rc.exact}};
            j["h0_ar"] = tl::h0_ar(l, tl::rat_from_double(inv_x), enum_opts(g));
            j["h0_theta"] = tl::h0_theta(l);
            j["h1_theta"] = tl::h1_theta(l);
            j["prr_residual"] = tl::prr_residual(l);
            std::cout << j.dump(2) << "\n";
        } else if (*red) {
            tl::Lattice l = tl::lattice_from_json(tl::read_json_file(red_file));
            tl::ReducedBasis rb = tl::hkz_reduce(l, enum_opts(g));
            std::cout << tl::reduced_to_json(rb, l).dump(2) << "\n";
        } else if (*th) {
            tl::Lattice l = tl::lattice_from_json(tl::read_json_file(th_file));
            std::vector<double> center;
            if (!th_center.empty()) {
                std::stringstream ss(th_center);
                std::string tok;
                while (std::getline(ss, tok, ',')) center.push_back(std::stod(tok));
            }
            tl::ThetaOptions to;
            to.enum_opt = enum_opts(g);
            std::cout << tl::theta_to_json(tl::theta(l, th_t, center, to)).dump(2) << "\n";
        } else if (*en) {
            tl::DiscreteMeasure m =
                load_measure(en_measure, en_builtin, en_lattice, en_beta_min, en_planck, en_freq,
                             0.0, g);
            tl::ThermoProfile p = tl::profile(m);
            auto parse_grid = [](const std::string& spec) {
                double lo, hi;
                int count;
                if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 2)
                    throw CLI::ValidationError("grid must be lo:hi:count");
                return std::tuple{lo, hi, count};
            };
            if (!en_grid_e.empty()) {
                auto [lo, hi, count] = parse_grid(en_grid_e);
                std::cout << "E,S,beta\n";
                for (int i = 0; i < count; ++i) {
                    double e = lo + (hi - lo) * i / (count - 1);
                    tl::EntropySolve s = tl::entropy(p, e);
                    std::cout << e << "," << s.entropy << "," << s.beta << "\n";
                }
            } else if (!en_grid_beta.empty()) {
                auto [lo, hi, count] = parse_grid(en_grid_beta);
                std::cout << "beta,Psi,U\n";
                for (int i = 0; i < count; ++i) {
                    double b = lo + (hi - lo) * i / (count - 1);
                    tl::ThermoPoint pt = p.at(b);
                    std::cout << b << "," << pt.psi << "," << pt.u << "\n";
                }
            } else {
                std::cout << tl::entropy_to_json(tl::entropy(p, en_e)).dump(2) << "\n";
            }
        } else if (*an) {
            tl::DiscreteMeasure m = load_measure(an_measure, an_builtin, an_lattice, an_beta_min,
                                                 1.0, 1.0, an_e * an_n, g);
            double log_an = tl::log_an_exact(m, an_e, an_n, tl::resolve_threads(g.threads));
            tl::EntropySolve s = tl::entropy(tl::profile(m), an_e);
            tl::Json j;
            j["log_an"] = log_an;
            j["log_an_over_n"] = log_an / an_n;
            j["S"] = s.entropy;
            std::cout << j.dump(2) << "\n";
        } else if (*as) {
            tl::DiscreteMeasure m = load_measure(as_measure, as_builtin, as_lattice, as_beta_min,
                                                 1.0, 1.0, as_e * as_n, g);
            tl::ThermoProfile p = tl::profile(m);
            tl::Json j;
            if (as_variant == "poincare") {
                j = tl::estimate_to_json(tl::poincare_estimate(p, as_e, as_n));
            } else {
                auto eta = tl::detect_eta(m);
                if (!eta) throw tl::NotArithmetic("measure has no arithmetic unit");
                j = tl::estimate_to_json(tl::df_estimate(p, *eta, as_e, as_n));
            }
            if (as_contour) {
                tl::ContourResult c = tl::df_contour(m, as_e, as_n);
                j["contour"] = {{"value", c.value},
                                {"log_value", c.log_value},
                                {"imag_ratio", c.imag_ratio},
                                {"panels", c.panels}};
            }
            std::cout << j.dump(2) << "\n";
        } else if (*au) {
            std::vector<tl::Lattice> corpus;
            if (!au_lattice.empty()) {
                corpus.push_back(tl::lattice_from_json(tl::read_json_file(au_lattice)));
            } else if (!au_dir.empty()) {
                std::vector<std::filesystem::path> files;
                for (const auto& e : std::filesystem::directory_iterator(au_dir))
                    if (e.path().extension() == ".json") files.push_back(e.path());
                std::sort(files.begin(), files.end());
                for (const auto& f : files)
                    corpus.push_back(tl::lattice_from_json(tl::read_json_file(f.string())));
            } else {
                corpus = tl::make_corpus(g.seed, au_rank, au_count, au_bound);
            }
            tl::AuditOptions ao;
            ao.tolerance = g.tol;
            ao.threads = tl::resolve_threads(g.threads);
            ao.budget = g.budget;
            return emit_audit(tl::run_audit_suite(au_suite, corpus, ao));
        } else if (*co) {
            std::filesystem::create_directories(co_out);
            std::vector<tl::Lattice> corpus = tl::make_corpus(g.seed, co_rank, co_count, co_bound);
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                char name[64];
                std::snprintf(name, sizeof(name), "lattice_%03zu.json", i);
                tl::write_json_file((std::filesystem::path(co_out) / name).string(),
                                    tl::lattice_to_json(corpus[i]));
                std::cout << (std::filesystem::path(co_out) / name).string() << "\n";
            }
        } else if (*cv) {
            std::vector<int> ns;
            {
                std::stringstream ss(cv_ns);
                std::string tok;
                while (std::getline(ss, tok, ',')) ns.push_back(std::stoi(tok));
            }
            int max_n = *std::max_element(ns.begin(), ns.end());
            tl::DiscreteMeasure m = load_measure(cv_measure, cv_builtin, cv_lattice, cv_beta_min,
                                                 1.0, 1.0, cv_e * max_n, g);
            auto rows = tl::convergence_report(m, cv_e, ns, tl::resolve_threads(g.threads));
            if (cv_format == "csv") {
                std::cout << "n,log_an_over_n,S,gap,ratio_exact_df\n";
                for (const auto& r : rows)
                    std::cout << r.n << "," << r.log_an_over_n << "," << r.entropy << "," << r.gap
                              << "," << r.ratio_exact_df << "\n";
            } else {
                tl::Json j = tl::Json::array();
                for (const auto& r : rows) {
                    tl::Json row;
                    row["n"] = r.n;
                    row["log_an_over_n"] = r.log_an_over_n;
                    row["S"] = r.entropy;
                    row["gap"] = r.gap;
                    row["ratio_exact_df"] = r.ratio_exact_df;
                    j.push_back(row);
                }
                std::cout << j.dump(2) << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
