#include "thetalat/matrices.hpp"

#include <doctest.h>

#include <random>

using namespace thetalat;

namespace {

IntMat random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
    IntMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return m;
}

bool same_column_span(const IntMat& a, const IntMat& b) {
    return column_span_basis(a) == column_span_basis(b);
}

}  // namespace

TEST_CASE("rational determinant and inverse") {
    RatMat m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 2;
    CHECK(m.det() == Rat(3));
    RatMat inv = m.inverse();
    CHECK(inv.at(0, 0) == Rat(2, 3));
    CHECK(inv.at(0, 1) == Rat(-1, 3));
    CHECK((m * inv) == RatMat::identity(2));
    CHECK(RatMat(0, 0).det() == Rat(1));
}

TEST_CASE("leading principal minors flag indefinite matrices") {
    RatMat m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 1;
    auto minors = m.leading_principal_minors();
    CHECK(minors[0] == Rat(1));
    CHECK(minors[1] == Rat(-3));
}

TEST_CASE("hermite normal form is a unimodular column transform") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        IntMat a = random_int_matrix(rng, 3, 4, 6);
        IntMat u;
        IntMat h = hermite_normal_form(a, &u);
        CHECK(abs(u.det()) == 1);
        CHECK(a * u == h);
        CHECK(same_column_span(a, h));
    }
}

TEST_CASE("integer kernel solves A x = 0 and is saturated") {
    IntMat a(1, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = -4;
    IntMat k = integer_kernel(a);
    REQUIRE(k.cols() == 1);
    // primitive kernel vector (2, 1) up to sign
    CHECK(abs(k.at(0, 0)) == 2);
    CHECK(abs(k.at(1, 0)) == 1);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        IntMat m = random_int_matrix(rng, 2, 4, 5);
        IntMat ker = integer_kernel(m);
        IntMat prod = m * ker;
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j) CHECK(prod.at(i, j) == 0);
        CHECK(ker.cols() == 4 - m.rank());
    }
}

TEST_CASE("saturation divides out the content of the span") {
    IntMat f(2, 1);
    f.at(0, 0) = 2;
    f.at(1, 0) = 0;
    IntMat s = saturate_columns(f);
    REQUIRE(s.cols() == 1);
    CHECK(abs(s.at(0, 0)) == 1);
    CHECK(s.at(1, 0) == 0);
}

TEST_CASE("basis completion yields a unimodular matrix") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        IntMat g = random_int_matrix(rng, 4, 2, 4);
        if (g.rank() != 2) continue;
        IntMat s = saturate_columns(g);
        IntMat w = complete_to_basis(s);
        IntMat full(4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 2; ++j) full.at(i, j) = s.at(i, j);
            for (std::size_t j = 0; j < 2; ++j) full.at(i, 2 + j) = w.at(i, j);
        }
        CHECK(abs(full.det()) == 1);
    }
}

TEST_CASE("module intersection against a divisibility oracle") {
    // <(2,0),(0,1)> intersect <(3,0),(0,1)> = <(6,0),(0,1)>
    IntMat a(2, 2), b(2, 2);
    a.at(0, 0) = 2;
    a.at(1, 1) = 1;
    b.at(0, 0) = 3;
    b.at(1, 1) = 1;
    IntMat inter = module_intersection(a, b);
    IntMat expected(2, 2);
    expected.at(0, 0) = 6;
    expected.at(1, 1) = 1;
    CHECK(same_column_span(inter, expected));

    // Intersection is contained in both spans; ranks are consistent.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        IntMat x = random_int_matrix(rng, 3, 2, 3);
        IntMat y = random_int_matrix(rng, 3, 2, 3);
        IntMat inter2 = module_intersection(x, y);
        IntMat joint_x(3, x.cols() + inter2.cols());
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < x.cols(); ++j) joint_x.at(i, j) = x.at(i, j);
            for (std::size_t j = 0; j < inter2.cols(); ++j)
                joint_x.at(i, x.cols() + j) = inter2.at(i, j);
        }
        CHECK(same_column_span(joint_x, x));  // inter2 lies inside span(x)
    }
}
