#pragma once

// Corpus generation and audit orchestration shared by the CLI and the
// acceptance suite.

#include "thetalat/lattice.hpp"
#include "thetalat/theta.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace thetalat {

// Random integral Gram B^T B with B uniform in [-entry_bound, entry_bound],
// singular draws rejected. Identical seeds give identical lattices on every
// platform (raw mt19937_64 output, no distribution adapters).
std::vector<Lattice> make_corpus(std::uint64_t seed, std::size_t rank, std::size_t count,
                                 long entry_bound);

struct AuditItem {
    std::size_t lattice_index;
    AuditLine line;
};

struct AuditOptions {
    double tolerance = 1e-9;
    int threads = 1;
    std::uint64_t budget = 100000000;
    int thermo_n_cap = 24;
};

// suite: "transference", "comparison", "structure", or "thermo".
std::vector<AuditItem> run_audit_suite(const std::string& suite,
                                       const std::vector<Lattice>& corpus,
                                       const AuditOptions& opt = {});

bool any_violated(const std::vector<AuditItem>& items);

}  // namespace thetalat
