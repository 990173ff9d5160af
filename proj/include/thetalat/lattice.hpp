#pragma once

// Euclidean lattices represented by exact rational Gram matrices.
//
// A lattice carries an exact core Gram matrix plus a floating twist t: the
// effective norm is e^{-t} times the core norm (effective Gram =
// e^{-2t} * core). All determinant/Schur identities are exact on the core;
// the twist enters through closed-form scaling at the final step only.

#include "thetalat/matrices.hpp"
#include "thetalat/rational.hpp"

#include <cstddef>
#include <vector>

namespace thetalat {

class Lattice {
public:
    Lattice() = default;  // rank-0 lattice (covolume 1)

    // Validates symmetry and positive-definiteness (leading principal minors).
    static Lattice from_gram(RatMat gram, double twist = 0.0);

    // Z^n with the standard inner product.
    static Lattice standard(std::size_t n);

    std::size_t rank() const { return gram_.rows(); }
    const RatMat& gram() const { return gram_; }
    double twist() const { return twist_; }

    // Effective Gram entry as a double: e^{-2t} * core.
    double gram_entry(std::size_t i, std::size_t j) const;

    // Exact squared covolume of the core; the twist contributes e^{-2nt}.
    Rat core_det() const { return gram_.det(); }

private:
    Lattice(RatMat gram, double twist) : gram_(std::move(gram)), twist_(twist) {}
    RatMat gram_;
    double twist_ = 0.0;
};

struct OrthogonalLattice {
    // Arakelov degrees t_1 >= ... >= t_n; sorted on construction.
    std::vector<double> degrees;

    explicit OrthogonalLattice(std::vector<double> degs);
    std::size_t rank() const { return degrees.size(); }
    // Diagonal Gram with the exact binary rationals of e^{-2 t_i}.
    Lattice to_lattice() const;
};

struct OrthogonalInvariants {
    std::vector<double> minima;  // lambda_i = e^{-t_i}
    double covering_radius;      // (1/2) (sum e^{-2 t_i})^(1/2)
    double degree;               // sum t_i
    double slope;
};

struct AdmissibleSequence {
    Lattice sub;        // F with the restricted norm
    Lattice total;      // E
    Lattice quotient;   // E/F with the quotient norm
    IntMat embedding;   // columns: basis of the saturated F in E coordinates
    IntMat complement;  // columns completing `embedding` to a basis of E
};

Lattice make_lattice(const RatMat& gram);

double covolume(const Lattice& l);
double arakelov_degree(const Lattice& l);
double slope(const Lattice& l);  // throws ZeroRank

Lattice dual(const Lattice& l);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice tensor(const Lattice& a, const Lattice& b);
Lattice twist(const Lattice& l, double t);

// Saturates the span of `generators` (columns, in E coordinates) and builds
// the admissible sequence; quotient Gram is the exact Schur complement.
AdmissibleSequence sub_quotient(const Lattice& l, const IntMat& generators);

// Sublattice spanned by the given generators with the restricted norm
// (no saturation; generators may be any generating set of the module).
Lattice restrict_to(const Lattice& l, const IntMat& generators);

OrthogonalInvariants orthogonal_invariants(const OrthogonalLattice& o);

}  // namespace thetalat
