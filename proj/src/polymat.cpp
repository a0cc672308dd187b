#include "khx/polymat.hpp"

#include <sstream>

namespace khx {

PolyMat PolyMat::identity(std::size_t n) {
    PolyMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::one();
    return m;
}

bool PolyMat::is_zero() const {
    for (const auto& p : e_)
        if (!p.is_zero()) return false;
    return true;
}

bool PolyMat::is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (r != c && !at(r, c).is_zero()) return false;
    return true;
}

PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    if (a.cols() != b.rows()) fail(Err::Internal, "matrix product shape mismatch");
    PolyMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Poly& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Poly& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

PolyMat operator+(const PolyMat& a, const PolyMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(Err::Internal, "matrix sum shape mismatch");
    PolyMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

PolyMat operator-(const PolyMat& a, const PolyMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(Err::Internal, "matrix difference shape mismatch");
    PolyMat r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

bool operator==(const PolyMat& a, const PolyMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

PolyMat PolyMat::scaled(const Poly& f) const {
    PolyMat r(rows_, cols_);
    if (f.is_zero()) return r;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!e_[i].is_zero()) r.e_[i] = e_[i] * f;
    return r;
}

PolyMat PolyMat::transposed() const {
    PolyMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

void PolyMat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void PolyMat::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void PolyMat::add_row_multiple(std::size_t dst, std::size_t src, const Poly& f) {
    if (f.is_zero()) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        const Poly& s = at(src, c);
        if (!s.is_zero()) at(dst, c) += f * s;
    }
}

void PolyMat::add_col_multiple(std::size_t dst, std::size_t src, const Poly& f) {
    if (f.is_zero()) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const Poly& s = at(r, src);
        if (!s.is_zero()) at(r, dst) += f * s;
    }
}

void PolyMat::scale_row(std::size_t i, Fp c) {
    for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) at(i, j) = at(i, j).scaled(c);
}

void PolyMat::scale_col(std::size_t j, Fp c) {
    for (std::size_t i = 0; i < rows_; ++i)
        if (!at(i, j).is_zero()) at(i, j) = at(i, j).scaled(c);
}

Poly PolyMat::determinant() const {
    if (rows_ != cols_) fail(Err::Internal, "determinant of non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return Poly::one();
    PolyMat m = *this;
    Poly prev = Poly::one();
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            std::size_t piv = k;
            while (piv < n && m.at(piv, k).is_zero()) ++piv;
            if (piv == n) return Poly::zero();
            m.swap_rows(k, piv);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                Poly q, r;
                num.divmod(prev, q, r);
                if (!r.is_zero()) fail(Err::Internal, "Bareiss division not exact");
                m.at(i, j) = q;
            }
            m.at(i, k) = Poly::zero();
        }
        prev = m.at(k, k);
    }
    Poly d = m.at(n - 1, n - 1);
    return negate ? -d : d;
}

std::string PolyMat::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[ ";
        for (std::size_t j = 0; j < cols_; ++j) os << at(i, j).str() << (j + 1 < cols_ ? ", " : " ");
        os << "]\n";
    }
    return os.str();
}

PolyMat column_slice(const PolyMat& a, std::size_t c0, std::size_t c1) {
    PolyMat r(a.rows(), c1 - c0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = c0; j < c1; ++j) r.at(i, j - c0) = a.at(i, j);
    return r;
}

PolyMat row_slice(const PolyMat& a, std::size_t r0, std::size_t r1) {
    PolyMat r(r1 - r0, a.cols());
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i - r0, j) = a.at(i, j);
    return r;
}

} // namespace khx
