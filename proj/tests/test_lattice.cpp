#include "thetalat/lattice.hpp"

#include "thetalat/enumeration.hpp"
#include "thetalat/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace thetalat;

namespace {

RatMat gram2(long a, long b, long c, long d) {
    RatMat g(2, 2);
    g.at(0, 0) = a;
    g.at(0, 1) = b;
    g.at(1, 0) = c;
    g.at(1, 1) = d;
    return g;
}

Lattice random_spd(std::mt19937_64& rng, std::size_t n, long bound) {
    for (;;) {
        IntMat b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                b.at(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
        if (b.det() == 0) continue;
        RatMat br = b.to_rat();
        return Lattice::from_gram(br.transposed() * br);
    }
}

}  // namespace

TEST_CASE("lattice construction validates the gram matrix") {
    CHECK_NOTHROW(make_lattice(RatMat::identity(2)));
    CHECK_NOTHROW(make_lattice(gram2(2, 1, 1, 2)));
    CHECK_THROWS_AS(make_lattice(gram2(1, 2, 2, 1)), NotPositiveDefinite);
    RatMat asym = gram2(1, 1, 0, 1);
    CHECK_THROWS_AS(make_lattice(asym), NotSymmetric);
}

TEST_CASE("covolume, degree, slope") {
    CHECK(covolume(Lattice::standard(3)) == doctest::Approx(1.0));
    CHECK(covolume(make_lattice(gram2(4, 0, 0, 9))) == doctest::Approx(6.0));
    CHECK(arakelov_degree(Lattice::standard(4)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(slope(Lattice()), ZeroRank);

    OrthogonalLattice o({0.7, -0.2});
    CHECK(covolume(o.to_lattice()) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    // twist of the rank-1 standard lattice has degree t
    Lattice z = Lattice::standard(1);
    CHECK(arakelov_degree(twist(z, 1.25)) == doctest::Approx(1.25));
    // dual negates the degree
    Lattice l = make_lattice(gram2(2, 1, 1, 2));
    CHECK(arakelov_degree(dual(l)) == doctest::Approx(-arakelov_degree(l)).epsilon(1e-12));
}

TEST_CASE("duality is exact on gram matrices") {
    Lattice l = make_lattice(gram2(2, 0, 0, 2));
    CHECK(dual(l).gram().at(0, 0) == Rat(1, 2));
    CHECK(dual(Lattice::standard(2)).gram() == RatMat::identity(2));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Lattice r = random_spd(rng, 3, 4);
        CHECK(dual(dual(r)).gram() == r.gram());
    }
}

TEST_CASE("direct sum and tensor") {
    Lattice z = Lattice::standard(1);
    CHECK(direct_sum(z, z).gram() == RatMat::identity(2));
    CHECK(tensor(Lattice::standard(2), Lattice::standard(3)).gram() == RatMat::identity(6));

    // slope additivity under tensor: det(A (x) B) = det A^m det B^n
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Lattice a = random_spd(rng, 2, 3);
        Lattice b = random_spd(rng, 2, 3);
        CHECK(slope(tensor(a, b)) == doctest::Approx(slope(a) + slope(b)).epsilon(1e-10));
        // exact route: covol^2 multiplies accordingly
        Rat lhs = tensor(a, b).core_det();
        Rat rhs = a.core_det() * a.core_det() * b.core_det() * b.core_det();
        CHECK(lhs == rhs);
    }

    // degree additive exactly under direct sum (squared covolumes)
    std::mt19937_64 rng2(13);
    Lattice a = random_spd(rng2, 2, 3);
    Lattice b = random_spd(rng2, 3, 3);
    CHECK(direct_sum(a, b).core_det() == a.core_det() * b.core_det());

    CHECK_THROWS_AS(direct_sum(twist(a, 1.0), b), DomainMismatch);
}

TEST_CASE("twist behaves as a norm scale") {
    std::mt19937_64 rng(23);
    Lattice l = random_spd(rng, 3, 3);
    double t = 0.85;
    CHECK(arakelov_degree(twist(l, t)) ==
          doctest::Approx(arakelov_degree(l) + 3 * t).epsilon(1e-12));
    CHECK(twist(twist(l, t), -t).gram() == l.gram());
    CHECK(tensor(l, twist(Lattice::standard(1), t)).twist() == doctest::Approx(t));
}

TEST_CASE("sub_quotient: admissible sequences") {
    Lattice i2 = Lattice::standard(2);
    IntMat f(2, 1);
    f.at(0, 0) = 1;

    AdmissibleSequence seq = sub_quotient(i2, f);
    CHECK(seq.sub.gram() == RatMat::identity(1));
    CHECK(seq.quotient.gram() == RatMat::identity(1));
    CHECK(arakelov_degree(seq.sub) + arakelov_degree(seq.quotient) == doctest::Approx(0.0));

    // saturation: the generator 2 e_1 is replaced by e_1
    IntMat f2(2, 1);
    f2.at(0, 0) = 2;
    AdmissibleSequence seq2 = sub_quotient(i2, f2);
    CHECK(seq2.sub.gram() == RatMat::identity(1));
    CHECK(abs(seq2.embedding.at(0, 0)) == 1);

    // hexagonal gram: covol(sub) = sqrt(2), covol(quot) = sqrt(3/2)
    Lattice hex = make_lattice(gram2(2, 1, 1, 2));
    AdmissibleSequence seq3 = sub_quotient(hex, f);
    CHECK(seq3.sub.core_det() == Rat(2));
    CHECK(seq3.quotient.core_det() == Rat(3, 2));
    CHECK(seq3.sub.core_det() * seq3.quotient.core_det() == hex.core_det());

    CHECK_THROWS_AS(sub_quotient(i2, IntMat(2, 3)), DependentGenerators);
}

TEST_CASE("covolume multiplicativity is exact on random admissible sequences") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        Lattice l = random_spd(rng, 4, 3);
        IntMat f(4, 2);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                f.at(i, j) = static_cast<long>(rng() % 7) - 3;
        if (f.rank() != 2) continue;
        AdmissibleSequence seq = sub_quotient(l, f);
        CHECK(seq.sub.core_det() * seq.quotient.core_det() == l.core_det());
        CHECK(seq.sub.rank() + seq.quotient.rank() == l.rank());
    }
}

TEST_CASE("orthogonal lattice invariants") {
    OrthogonalLattice flat({0.0, 0.0, 0.0});
    OrthogonalInvariants inv = orthogonal_invariants(flat);
    CHECK(inv.minima[0] == doctest::Approx(1.0));
    CHECK(inv.covering_radius == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(inv.degree == doctest::Approx(0.0));

    OrthogonalLattice one({std::log(2.0)});
    OrthogonalInvariants inv1 = orthogonal_invariants(one);
    CHECK(inv1.minima[0] == doctest::Approx(0.5));
    CHECK(inv1.covering_radius == doctest::Approx(0.25));

    CHECK_THROWS_AS(orthogonal_invariants(OrthogonalLattice({})), EmptyDegrees);

    // R_cov * lambda_1(dual) lies in [1/2, sqrt(n)/2]
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> degs;
        for (int i = 0; i < 4; ++i)
            degs.push_back((static_cast<double>(rng() % 2000) - 1000.0) / 500.0);
        OrthogonalLattice o(degs);
        OrthogonalInvariants i4 = orthogonal_invariants(o);
        // dual first minimum is e^{t_n} with t_n the smallest degree
        double lam_dual = std::exp(o.degrees.back());
        double prod = i4.covering_radius * lam_dual;
        CHECK(prod >= 0.5 - 1e-12);
        CHECK(prod <= std::sqrt(4.0) / 2.0 + 1e-12);
    }
}

TEST_CASE("orthogonal complement swaps sub and quotient under duality") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 8; ++trial) {
        Lattice l = random_spd(rng, 3, 3);
        IntMat f(3, 1);
        for (std::size_t i = 0; i < 3; ++i) f.at(i, 0) = static_cast<long>(rng() % 5) - 2;
        if (f.rank() != 1) continue;
        AdmissibleSequence seq = sub_quotient(l, f);
        // F-perp inside the dual: forms vanishing on F
        IntMat fperp = integer_kernel(seq.embedding.transposed());
        AdmissibleSequence dseq = sub_quotient(dual(l), fperp);
        // sub of the dual sequence is isomorphic to dual(quotient): their
        // squared covolumes are exact reciprocals and their minima agree
        CHECK(dseq.sub.core_det() * seq.quotient.core_det() == Rat(1));
        SuccessiveMinima a = successive_minima(dseq.sub);
        SuccessiveMinima b = successive_minima(dual(seq.quotient));
        REQUIRE(a.norms_sq_core.size() == b.norms_sq_core.size());
        for (std::size_t i = 0; i < a.norms_sq_core.size(); ++i)
            CHECK(a.norms_sq_core[i] == b.norms_sq_core[i]);
    }
}
