#include "khx/fpmat.hpp"

#include "khx/errors.hpp"

namespace khx {

bool FpMat::is_zero() const {
    for (auto c : e_)
        if (!c.is_zero()) return false;
    return true;
}

FpMat operator*(const FpMat& a, const FpMat& b) {
    if (a.cols() != b.rows()) fail(Err::Internal, "FpMat product shape mismatch");
    FpMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Fp aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                Fp bkj = b.at(k, j);
                if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

std::size_t FpMat::rank() const {
    FpMat m = *this;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
        if (piv == rows_) continue;
        if (piv != rank)
            for (std::size_t j = col; j < cols_; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Fp inv = m.at(rank, col).inverse();
        for (std::size_t i = rank + 1; i < rows_; ++i) {
            Fp f = m.at(i, col);
            if (f.is_zero()) continue;
            f *= inv;
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

std::size_t field_homology_dimension(const FpMat& dA, const FpMat& dB) {
    if (dB.cols() != dA.rows())
        fail(Err::Internal, "field_homology_dimension: middle dimensions disagree");
    if (!(dB * dA).is_zero())
        fail(Err::ComposeNotZero, "field_homology_dimension: dB*dA != 0");
    return dB.nullity() - dA.rank();
}

} // namespace khx
