#ifndef KHX_FPMAT_HPP
#define KHX_FPMAT_HPP

#include <cstddef>
#include <vector>

#include "khx/field.hpp"

namespace khx {

// Dense matrix over F_p; just enough linear algebra for the field-side
// homology oracle (rank / nullity by Gaussian elimination).
class FpMat {
public:
    FpMat() : rows_(0), cols_(0) {}
    FpMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fp& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    Fp at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    bool is_zero() const;
    friend FpMat operator*(const FpMat& a, const FpMat& b);

    std::size_t rank() const;
    std::size_t nullity() const { return cols_ - rank(); }

private:
    std::size_t rows_, cols_;
    std::vector<Fp> e_;
};

// dim ker(dB)/im(dA) for composable F_p matrices with dB*dA = 0.
// The middle space is the source of dB (and target of dA).
std::size_t field_homology_dimension(const FpMat& dA, const FpMat& dB);

} // namespace khx

#endif
