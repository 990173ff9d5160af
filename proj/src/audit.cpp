#include "thetalat/audit.hpp"

#include "thetalat/errors.hpp"
#include "thetalat/parallel.hpp"
#include "thetalat/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace thetalat {

std::vector<Lattice> make_corpus(std::uint64_t seed, std::size_t rank, std::size_t count,
                                 long entry_bound) {
    if (rank == 0 || entry_bound <= 0) throw DomainError("make_corpus: bad parameters");
    std::mt19937_64 rng(seed);
    auto draw = [&]() -> long {
        return static_cast<long>(rng() % (2 * entry_bound + 1)) - entry_bound;
    };
    std::vector<Lattice> out;
    while (out.size() < count) {
        IntMat b(rank, rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j) b.at(i, j) = draw();
        if (b.det() == 0) continue;
        RatMat br = b.to_rat();
        out.push_back(Lattice::from_gram(br.transposed() * br));
    }
    return out;
}

namespace {

std::vector<AuditLine> thermo_suite(const Lattice& l, const AuditOptions& opt) {
    EnumOptions eo;
    eo.budget = opt.budget;
    eo.threads = 1;
    double energy = M_PI;  // x = 1
    double cover = energy * opt.thermo_n_cap;  // single atom may carry the full budget
    DiscreteMeasure m = from_lattice(l, 0.08, 1e-13, eo, cover);
    return bounds_suite(m, energy, opt.thermo_n_cap, 0.35, opt.threads);
}

std::vector<AuditLine> structure_suite(const Lattice& l, const AuditOptions& opt) {
    ThetaOptions to;
    to.enum_opt.budget = opt.budget;
    std::size_t n = l.rank();
    if (n < 2) return {};
    // Deterministic submodules: F1 = <e_1>, F2 = <e_1 + e_2>.
    IntMat f1(n, 1), f2(n, 1);
    f1.at(0, 0) = 1;
    f2.at(0, 0) = 1;
    f2.at(1, 0) = 1;
    return structure_audit(l, f1, f2, to);
}

}  // namespace

std::vector<AuditItem> run_audit_suite(const std::string& suite,
                                       const std::vector<Lattice>& corpus,
                                       const AuditOptions& opt) {
    std::vector<std::vector<AuditLine>> per_lattice(corpus.size());
    parallel_for(corpus.size(), opt.threads, [&](std::size_t i) {
        EnumOptions eo;
        eo.budget = opt.budget;
        eo.threads = 1;  // parallelism lives at the corpus level here
        ThetaOptions to;
        to.enum_opt = eo;
        if (suite == "transference") {
            per_lattice[i] = transference_audit(corpus[i], eo);
        } else if (suite == "comparison") {
            per_lattice[i] = comparison_audit(corpus[i], to);
        } else if (suite == "structure") {
            per_lattice[i] = structure_suite(corpus[i], opt);
        } else if (suite == "thermo") {
            per_lattice[i] = thermo_suite(corpus[i], opt);
        } else {
            throw DomainError("unknown audit suite: " + suite);
        }
    });
    std::vector<AuditItem> items;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (const auto& line : per_lattice[i]) items.push_back({i, line});
    return items;
}

bool any_violated(const std::vector<AuditItem>& items) {
    return std::any_of(items.begin(), items.end(),
                       [](const AuditItem& it) { return it.line.verdict == Verdict::violated; });
}

}  // namespace thetalat
