#include "thetalat/lattice.hpp"

#include "thetalat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

namespace thetalat {

Lattice Lattice::from_gram(RatMat gram, double twist) {
    if (gram.rows() != gram.cols()) throw NotSymmetric("gram matrix must be square");
    if (!gram.is_symmetric()) throw NotSymmetric("gram matrix must be symmetric");
    for (const Rat& m : gram.leading_principal_minors()) {
        if (m <= 0) throw NotPositiveDefinite("leading principal minor <= 0");
    }
    return Lattice(std::move(gram), twist);
}

Lattice Lattice::standard(std::size_t n) { return Lattice(RatMat::identity(n), 0.0); }

double Lattice::gram_entry(std::size_t i, std::size_t j) const {
    return std::exp(-2.0 * twist_) * to_double(gram_.at(i, j));
}

Lattice make_lattice(const RatMat& gram) { return Lattice::from_gram(gram); }

double covolume(const Lattice& l) {
    return std::exp(arakelov_degree(l) * -1.0);
}

double arakelov_degree(const Lattice& l) {
    // deg = -log covol = -(1/2) log det(core) + n * t
    double logdet = std::log(to_double(l.core_det()));
    return -0.5 * logdet + static_cast<double>(l.rank()) * l.twist();
}

double slope(const Lattice& l) {
    if (l.rank() == 0) throw ZeroRank("slope of a rank-0 lattice");
    return arakelov_degree(l) / static_cast<double>(l.rank());
}

Lattice dual(const Lattice& l) {
    if (l.rank() == 0) return l;
    return Lattice::from_gram(l.gram().inverse(), -l.twist());
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    if (a.twist() != b.twist()) {
        // Mixed twists have no exact block Gram; scale explicitly first.
        throw DomainMismatch("direct_sum: operands carry different twists");
    }
    std::size_t n = a.rank(), m = b.rank();
    RatMat g(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.at(i, j) = a.gram().at(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g.at(n + i, n + j) = b.gram().at(i, j);
    return Lattice::from_gram(std::move(g), a.twist());
}

Lattice tensor(const Lattice& a, const Lattice& b) {
    std::size_t n = a.rank(), m = b.rank();
    RatMat g(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                    g.at(i * m + k, j * m + l) = a.gram().at(i, j) * b.gram().at(k, l);
    return Lattice::from_gram(std::move(g), a.twist() + b.twist());
}

Lattice twist(const Lattice& l, double t) {
    return Lattice::from_gram(l.gram(), l.twist() + t);
}

Lattice restrict_to(const Lattice& l, const IntMat& generators) {
    IntMat basis = column_span_basis(generators);
    RatMat b = basis.to_rat();
    return Lattice::from_gram(b.transposed() * l.gram() * b, l.twist());
}

AdmissibleSequence sub_quotient(const Lattice& l, const IntMat& generators) {
    std::size_t n = l.rank();
    if (generators.rows() != n) throw DependentGenerators("generator rows != rank");
    std::size_t k = generators.rank();
    if (k != generators.cols()) throw DependentGenerators("generators linearly dependent over Q");

    IntMat sat = saturate_columns(generators);
    IntMat comp = complete_to_basis(sat);

    // Gram in the adapted basis [sat | comp]: [[A, X], [X^T, D]].
    IntMat full(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) full.at(i, j) = sat.at(i, j);
        for (std::size_t j = 0; j < n - k; ++j) full.at(i, k + j) = comp.at(i, j);
    }
    RatMat fb = full.to_rat();
    RatMat g = fb.transposed() * l.gram() * fb;

    RatMat a(k, k), x(k, n - k), d(n - k, n - k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a.at(i, j) = g.at(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) x.at(i, j) = g.at(i, k + j);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) d.at(i, j) = g.at(k + i, k + j);

    // Quotient norm = Schur complement D - X^T A^{-1} X.
    RatMat quot = d;
    if (k > 0 && n - k > 0) {
        RatMat corr = x.transposed() * a.inverse() * x;
        for (std::size_t i = 0; i < n - k; ++i)
            for (std::size_t j = 0; j < n - k; ++j) quot.at(i, j) -= corr.at(i, j);
    }

    AdmissibleSequence seq;
    seq.total = l;
    seq.sub = Lattice::from_gram(std::move(a), l.twist());
    seq.quotient = Lattice::from_gram(std::move(quot), l.twist());
    seq.embedding = std::move(sat);
    seq.complement = std::move(comp);
    return seq;
}

OrthogonalLattice::OrthogonalLattice(std::vector<double> degs) : degrees(std::move(degs)) {
    std::sort(degrees.begin(), degrees.end(), std::greater<double>());
}

Lattice OrthogonalLattice::to_lattice() const {
    std::size_t n = degrees.size();
    RatMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) g.at(i, i) = rat_from_double(std::exp(-2.0 * degrees[i]));
    return Lattice::from_gram(std::move(g));
}

OrthogonalInvariants orthogonal_invariants(const OrthogonalLattice& o) {
    if (o.degrees.empty()) throw EmptyDegrees("orthogonal lattice without degrees");
    OrthogonalInvariants inv;
    double deg = 0.0, sq = 0.0;
    for (double t : o.degrees) {
        inv.minima.push_back(std::exp(-t));
        deg += t;
        sq += std::exp(-2.0 * t);
    }
    // lambda_i must be non-decreasing: degrees are sorted non-increasing already.
    std::sort(inv.minima.begin(), inv.minima.end());
    inv.covering_radius = 0.5 * std::sqrt(sq);
    inv.degree = deg;
    inv.slope = deg / static_cast<double>(o.degrees.size());
    return inv;
}

}  // namespace thetalat
