#include "thetalat/matrices.hpp"

#include "thetalat/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace thetalat {

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::transposed() const {
    RatMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMat::operator*: shape mismatch");
    RatMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

RatMat RatMat::operator*(const Rat& s) const {
    RatMat r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) * s;
    return r;
}

bool RatMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

Rat RatMat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("RatMat::det: not square");
    std::size_t n = rows_;
    if (n == 0) return Rat(1);
    RatMat m = *this;
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m.at(piv, c) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Rat inv = Rat(1) / m.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return d;
}

RatMat RatMat::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("RatMat::inverse: not square");
    std::size_t n = rows_;
    RatMat m = *this;
    RatMat inv = RatMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m.at(piv, c) == 0) ++piv;
        if (piv == n) throw std::domain_error("RatMat::inverse: singular matrix");
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        }
        Rat f = Rat(1) / m.at(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m.at(c, j) *= f;
            inv.at(c, j) *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m.at(i, c) == 0) continue;
            Rat g = m.at(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= g * m.at(c, j);
                inv.at(i, j) -= g * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::vector<Rat> RatMat::leading_principal_minors() const {
    if (rows_ != cols_) throw std::invalid_argument("leading_principal_minors: not square");
    std::vector<Rat> minors;
    minors.reserve(rows_);
    for (std::size_t k = 1; k <= rows_; ++k) {
        RatMat sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = at(i, j);
        minors.push_back(sub.det());
    }
    return minors;
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat::operator*: shape mismatch");
    IntMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

RatMat IntMat::to_rat() const {
    RatMat r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = Rat(at(i, j));
    return r;
}

Int IntMat::det() const {
    Rat d = to_rat().det();
    return numerator(d);  // denominator is 1 for an integer matrix
}

std::size_t IntMat::rank() const {
    RatMat m = to_rat();
    std::size_t r = 0;
    std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m.at(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Rat inv = Rat(1) / m.at(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) * inv;
            for (std::size_t j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

namespace {

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void negate_col(IntMat& m, std::size_t c) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, c) = -m.at(i, c);
}

// col[dst] += f * col[src]
void add_col(IntMat& m, std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += f * m.at(i, src);
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

IntMat hermite_normal_form(const IntMat& a, IntMat* transform) {
    IntMat h = a;
    std::size_t rows = h.rows(), cols = h.cols();
    IntMat u = IntMat::identity(cols);

    // Eliminate right-to-left so pivots accumulate in the trailing columns.
    std::size_t c = cols;  // one past the column that will receive the next pivot
    for (std::size_t rr = rows; rr-- > 0 && c > 0;) {
        std::size_t r = rr;
        // gcd elimination across columns 0..c-1 in row r
        std::size_t nz = c;
        for (;;) {
            nz = c;
            for (std::size_t j = 0; j < c; ++j)
                if (h.at(r, j) != 0 && (nz == c || abs(h.at(r, j)) < abs(h.at(r, nz)))) nz = j;
            if (nz == c) break;  // row r is zero on the active columns
            bool reduced = true;
            for (std::size_t j = 0; j < c; ++j) {
                if (j == nz || h.at(r, j) == 0) continue;
                Int q = h.at(r, j) / h.at(r, nz);  // truncated division shrinks |entry|
                add_col(h, j, nz, -q);
                add_col(u, j, nz, -q);
                if (h.at(r, j) != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (nz == c) continue;  // no pivot in this row
        --c;
        swap_cols(h, nz, c);
        swap_cols(u, nz, c);
        if (h.at(r, c) < 0) {
            negate_col(h, c);
            negate_col(u, c);
        }
        // Reduce the entries to the right of the pivot into [0, pivot).
        for (std::size_t j = c + 1; j < cols; ++j) {
            Int q = floor_div(h.at(r, j), h.at(r, c));
            add_col(h, j, c, -q);
            add_col(u, j, c, -q);
        }
    }
    if (transform) *transform = u;
    return h;
}

IntMat integer_kernel(const IntMat& a) {
    IntMat u;
    IntMat h = hermite_normal_form(a, &u);
    // Kernel basis = transform columns mapping to zero columns of H.
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = 0; j < h.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (zero) zero_cols.push_back(j);
    }
    IntMat k(a.cols(), zero_cols.size());
    for (std::size_t j = 0; j < zero_cols.size(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) k.at(i, j) = u.at(i, zero_cols[j]);
    return k;
}

IntMat column_span_basis(const IntMat& gens) {
    IntMat h = hermite_normal_form(gens);
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < h.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (!zero) nonzero.push_back(j);
    }
    IntMat b(h.rows(), nonzero.size());
    for (std::size_t j = 0; j < nonzero.size(); ++j)
        for (std::size_t i = 0; i < h.rows(); ++i) b.at(i, j) = h.at(i, nonzero[j]);
    return b;
}

IntMat saturate_columns(const IntMat& gens) {
    // Saturation = ker(ker(gens^T)^T): double orthogonal over Z.
    IntMat ortho = integer_kernel(gens.transposed());  // rows x (rows - rank)
    IntMat sat = integer_kernel(ortho.transposed());   // rows x rank, saturated
    return column_span_basis(sat);                     // canonical column HNF
}

IntMat complete_to_basis(const IntMat& s) {
    std::size_t n = s.rows(), k = s.cols();
    // Row-reduce S to [H; 0] by unimodular row ops V, tracking M = V^{-1}.
    // Then [S | M * [0; I]] is a basis of Z^n.
    IntMat w = s;
    IntMat m = IntMat::identity(n);
    auto swap_rows = [&](IntMat& x, std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x.at(a, j), x.at(b, j));
    };
    auto add_row = [&](IntMat& x, std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t j = 0; j < x.cols(); ++j) x.at(dst, j) += f * x.at(src, j);
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
        // gcd elimination down column c among rows r..n-1
        for (;;) {
            std::size_t piv = n;
            for (std::size_t i = r; i < n; ++i)
                if (w.at(i, c) != 0 && (piv == n || abs(w.at(i, c)) < abs(w.at(piv, c)))) piv = i;
            if (piv == n) break;
            bool done = true;
            for (std::size_t i = r; i < n; ++i) {
                if (i == piv || w.at(i, c) == 0) continue;
                Int q = w.at(i, c) / w.at(piv, c);
                // row op on W: row_i -= q * row_piv; inverse column op on M: col_piv += q * col_i
                add_row(w, i, piv, -q);
                for (std::size_t jj = 0; jj < n; ++jj) m.at(jj, piv) += q * m.at(jj, i);
                if (w.at(i, c) != 0) done = false;
            }
            if (done) {
                // move pivot row up to position r
                if (piv != r) {
                    swap_rows(w, piv, r);
                    // inverse of a row swap is the same column swap on M
                    for (std::size_t jj = 0; jj < n; ++jj) std::swap(m.at(jj, piv), m.at(jj, r));
                }
                break;
            }
        }
        if (w.at(r, c) != 0) ++r;
    }
    if (r != k) throw std::invalid_argument("complete_to_basis: columns not independent");
    IntMat comp(n, n - k);
    for (std::size_t j = 0; j < n - k; ++j)
        for (std::size_t i = 0; i < n; ++i) comp.at(i, j) = m.at(i, k + j);
    return comp;
}

IntMat module_intersection(const IntMat& a, const IntMat& b) {
    IntMat ba = column_span_basis(a);
    IntMat bb = column_span_basis(b);
    if (ba.cols() == 0 || bb.cols() == 0) return IntMat(a.rows(), 0);
    // Solve [Ba | -Bb] (x; y) = 0; the intersection is Ba * {x-parts}.
    IntMat stacked(a.rows(), ba.cols() + bb.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < ba.cols(); ++j) stacked.at(i, j) = ba.at(i, j);
        for (std::size_t j = 0; j < bb.cols(); ++j) stacked.at(i, ba.cols() + j) = -bb.at(i, j);
    }
    IntMat ker = integer_kernel(stacked);
    IntMat xpart(ba.cols(), ker.cols());
    for (std::size_t i = 0; i < ba.cols(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) xpart.at(i, j) = ker.at(i, j);
    return column_span_basis(ba * xpart);
}

}  // namespace thetalat
