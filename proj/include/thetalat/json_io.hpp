#pragma once

// Wire formats. Rationals travel as "p/q" strings and round-trip losslessly.

#include "thetalat/asymptotics.hpp"
#include "thetalat/enumeration.hpp"
#include "thetalat/lattice.hpp"
#include "thetalat/reduction.hpp"
#include "thetalat/theta.hpp"
#include "thetalat/thermo.hpp"

#include <json.hpp>

#include <string>

namespace thetalat {

using Json = nlohmann::ordered_json;

Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

Json orthogonal_to_json(const OrthogonalLattice& o);
OrthogonalLattice orthogonal_from_json(const Json& j);

Json report_to_json(const EnumerationReport& r);
EnumerationReport report_from_json(const Json& j);

Json measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const Json& j);

Json theta_to_json(const ThetaValue& tv);
Json entropy_to_json(const EntropySolve& s);
Json audit_line_to_json(const AuditLine& a);
Json estimate_to_json(const AsymptoticEstimate& e);
Json reduced_to_json(const ReducedBasis& rb, const Lattice& l);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace thetalat
