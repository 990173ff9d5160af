#include "thetalat/json_io.hpp"

#include "thetalat/errors.hpp"

#include <cmath>
#include <fstream>

namespace thetalat {

Json lattice_to_json(const Lattice& l) {
    Json j;
    j["rank"] = l.rank();
    Json gram = Json::array();
    for (std::size_t i = 0; i < l.rank(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < l.rank(); ++k) row.push_back(rat_to_string(l.gram().at(i, k)));
        gram.push_back(row);
    }
    j["gram"] = gram;
    if (l.twist() != 0.0) j["twist"] = l.twist();
    return j;
}

Lattice lattice_from_json(const Json& j) {
    std::size_t n = j.at("rank").get<std::size_t>();
    const Json& gram = j.at("gram");
    if (gram.size() != n) throw std::invalid_argument("lattice json: rank/gram mismatch");
    RatMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n) throw std::invalid_argument("lattice json: ragged gram");
        for (std::size_t k = 0; k < n; ++k) g.at(i, k) = parse_rat(gram[i][k].get<std::string>());
    }
    double twist = j.value("twist", 0.0);
    return Lattice::from_gram(std::move(g), twist);
}

Json orthogonal_to_json(const OrthogonalLattice& o) {
    Json j;
    j["degrees"] = o.degrees;
    return j;
}

OrthogonalLattice orthogonal_from_json(const Json& j) {
    return OrthogonalLattice(j.at("degrees").get<std::vector<double>>());
}

Json report_to_json(const EnumerationReport& r) {
    Json j;
    j["x"] = rat_to_string(r.radius_sq);
    j["count"] = r.count;
    Json hist = Json::array();
    for (const auto& [k, m] : r.histogram) hist.push_back(Json::array({rat_to_string(k), m}));
    j["histogram"] = hist;
    if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
    return j;
}

EnumerationReport report_from_json(const Json& j) {
    EnumerationReport r;
    r.radius_sq = parse_rat(j.at("x").get<std::string>());
    r.count = j.at("count").get<std::uint64_t>();
    for (const auto& e : j.at("histogram"))
        r.histogram[parse_rat(e[0].get<std::string>())] = e[1].get<std::uint64_t>();
    if (j.contains("witnesses")) r.witnesses = j["witnesses"].get<std::vector<std::vector<long>>>();
    return r;
}

Json measure_to_json(const DiscreteMeasure& m) {
    Json j;
    if (m.unit) {
        j["unit"] = *m.unit;
    } else {
        j["unit"] = nullptr;
    }
    Json atoms = Json::array();
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        Json a;
        if (m.unit) {
            a["e"] = rat_to_string(m.exact_energies[i]);
        } else {
            a["e"] = m.atoms[i].energy;
        }
        a["w"] = m.atoms[i].weight;
        atoms.push_back(a);
    }
    j["atoms"] = atoms;
    j["infinite_mass"] = m.total_mass_infinite;
    if (m.beta_lo > 0) j["beta_lo"] = m.beta_lo;
    if (m.tail_bound > 0) j["tail_bound"] = m.tail_bound;
    if (m.energy_cover > 0) j["energy_cover"] = m.energy_cover;
    return j;
}

DiscreteMeasure measure_from_json(const Json& j) {
    DiscreteMeasure m;
    if (j.contains("unit") && !j["unit"].is_null()) m.unit = j["unit"].get<double>();
    for (const auto& a : j.at("atoms")) {
        double w = a.at("w").get<double>();
        if (a.at("e").is_string()) {
            if (!m.unit) throw std::invalid_argument("measure json: exact energy without a unit");
            Rat idx = parse_rat(a["e"].get<std::string>());
            m.exact_energies.push_back(idx);
            m.atoms.push_back({*m.unit * to_double(idx), w});
        } else {
            m.atoms.push_back({a["e"].get<double>(), w});
        }
    }
    if (m.unit && m.exact_energies.size() != m.atoms.size())
        throw std::invalid_argument("measure json: mixed exact and float energies");
    m.total_mass_infinite = j.value("infinite_mass", false);
    m.beta_lo = j.value("beta_lo", 0.0);
    m.tail_bound = j.value("tail_bound", 0.0);
    m.energy_cover = j.value("energy_cover", 0.0);
    m.validate();
    return m;
}

Json theta_to_json(const ThetaValue& tv) {
    Json j;
    j["t"] = tv.t;
    j["value"] = tv.value;
    j["log_value"] = tv.log_value;
    j["tail_bound"] = tv.truncation_error_bound;
    j["used_poisson"] = tv.used_poisson;
    return j;
}

Json entropy_to_json(const EntropySolve& s) {
    Json j;
    j["E"] = s.energy;
    j["beta"] = s.beta;
    j["S"] = s.entropy;
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    return j;
}

Json audit_line_to_json(const AuditLine& a) {
    Json j;
    j["name"] = a.name;
    j["lhs"] = a.lhs;
    j["rhs"] = a.rhs;
    j["verdict"] = to_string(a.verdict);
    if (!a.detail.empty()) j["detail"] = a.detail;
    return j;
}

Json estimate_to_json(const AsymptoticEstimate& e) {
    Json j;
    j["n"] = e.n;
    j["log_estimate"] = e.log_estimate;
    j["prefactor"] = e.prefactor;
    j["beta"] = e.beta;
    j["S"] = e.entropy;
    j["variant"] = e.variant == AsymptoticVariant::poincare ? "poincare" : "darwin_fowler";
    return j;
}

Json reduced_to_json(const ReducedBasis& rb, const Lattice& l) {
    Json j;
    std::size_t n = rb.basis.rows();
    Json basis = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < n; ++k) row.push_back(rb.basis.at(i, k).convert_to<long long>());
        basis.push_back(row);
    }
    j["basis"] = basis;
    j["norms"] = rb.norms;
    j["gs_norms"] = rb.gs_norms;
    double dn = std::pow(4.0 / 3.0, n * (n - 1) / 2.0);
    double bound = dn * covolume(l);
    double prod = 1.0;
    for (double v : rb.norms) prod *= v;
    j["bound"] = bound;
    j["ratio"] = prod / bound;
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace thetalat
