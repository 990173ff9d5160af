#pragma once

// Dense exact matrices over Z and Q, sized for geometry-of-numbers work
// (ranks in the tens, not thousands).

#include "thetalat/rational.hpp"

#include <cstddef>
#include <vector>

namespace thetalat {

class IntMat;

class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static RatMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RatMat& o) const = default;

    RatMat transposed() const;
    RatMat operator*(const RatMat& o) const;
    RatMat operator*(const Rat& s) const;

    bool is_symmetric() const;
    Rat det() const;        // Gaussian elimination over Q
    RatMat inverse() const; // throws std::domain_error if singular

    // Determinants of the k-th leading principal minors, k = 1..n.
    std::vector<Rat> leading_principal_minors() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMat& o) const = default;

    IntMat transposed() const;
    IntMat operator*(const IntMat& o) const;
    RatMat to_rat() const;

    Int det() const;  // via exact rational elimination
    std::size_t rank() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Column-style Hermite normal form: returns H = A * U with U unimodular,
// pivot of each nonzero column strictly below the previous one, pivots
// positive, entries to the right of a pivot reduced into [0, pivot).
// Zero columns are moved to the front. If `transform` is non-null it
// receives U.
IntMat hermite_normal_form(const IntMat& a, IntMat* transform = nullptr);

// Basis of the integer kernel {x : A x = 0}, as columns. Always saturated.
IntMat integer_kernel(const IntMat& a);

// Basis (as columns, in column HNF) of the saturation of the column span of
// `gens` inside Z^rows: the largest submodule with the same Q-span.
// Throws DependentGenerators if requested (see lattice ops) -- here the rank
// may drop; callers decide.
IntMat saturate_columns(const IntMat& gens);

// Given a saturated full-column-rank S (n x k), returns W (n x (n-k)) such
// that [S | W] is a basis of Z^n. Requires S saturated.
IntMat complete_to_basis(const IntMat& s);

// Basis of the module generated by the columns (column HNF, zero columns
// dropped). Works for any generating set.
IntMat column_span_basis(const IntMat& gens);

// Basis of the intersection of the column spans of a and b.
IntMat module_intersection(const IntMat& a, const IntMat& b);

}  // namespace thetalat
