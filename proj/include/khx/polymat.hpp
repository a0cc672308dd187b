#ifndef KHX_POLYMAT_HPP
#define KHX_POLYMAT_HPP

#include <cstddef>
#include <vector>

#include "khx/poly.hpp"

namespace khx {

// Dense row-major matrix over F_p[x].  Zero entries are empty polynomials,
// so sparse inputs cost little; arithmetic skips zeros.
class PolyMat {
public:
    PolyMat() : rows_(0), cols_(0) {}
    PolyMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static PolyMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Poly& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Poly& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    bool is_zero() const;
    bool is_diagonal() const;

    friend PolyMat operator*(const PolyMat& a, const PolyMat& b);
    friend PolyMat operator+(const PolyMat& a, const PolyMat& b);
    friend PolyMat operator-(const PolyMat& a, const PolyMat& b);
    friend bool operator==(const PolyMat& a, const PolyMat& b);

    PolyMat scaled(const Poly& f) const;
    PolyMat transposed() const;

    // Elementary operations (used by the Smith normal form engine).
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Poly& f); // row_dst += f*row_src
    void add_col_multiple(std::size_t dst, std::size_t src, const Poly& f);
    void scale_row(std::size_t i, Fp c);
    void scale_col(std::size_t j, Fp c);

    // Exact determinant by fraction-free elimination (F_p[x] is an
    // integral domain, so Bareiss divisions are exact).
    Poly determinant() const;

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Poly> e_;
};

// Columns restricted to [c0, c1).
PolyMat column_slice(const PolyMat& a, std::size_t c0, std::size_t c1);
// Rows restricted to [r0, r1).
PolyMat row_slice(const PolyMat& a, std::size_t r0, std::size_t r1);

} // namespace khx

#endif
