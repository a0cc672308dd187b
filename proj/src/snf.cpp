#include "khx/snf.hpp"

#include <numeric>

namespace khx {

namespace {

struct Worker {
    PolyMat d;
    SmithForm* out;
    SnfOptions opts;
    std::size_t rows, cols;

    Worker(const PolyMat& a, SmithForm* o, const SnfOptions& op)
        : d(a), out(o), opts(op), rows(a.rows()), cols(a.cols()) {}

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        d.swap_rows(i, j);
        if (opts.need_u) out->u.swap_rows(i, j);
        if (opts.need_u_inv) out->u_inv.swap_cols(i, j);
        out->det_u = -out->det_u;
        std::swap(out->row_perm[i], out->row_perm[j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        d.swap_cols(i, j);
        if (opts.need_v) out->v.swap_cols(i, j);
        if (opts.need_v_inv) out->v_inv.swap_rows(i, j);
        out->det_v = -out->det_v;
        std::swap(out->col_perm[i], out->col_perm[j]);
    }
    // row_dst += f * row_src
    void add_row(std::size_t dst, std::size_t src, const Poly& f) {
        if (f.is_zero()) return;
        d.add_row_multiple(dst, src, f);
        if (opts.need_u) out->u.add_row_multiple(dst, src, f);
        if (opts.need_u_inv) out->u_inv.add_col_multiple(src, dst, -f);
    }
    // col_dst += f * col_src
    void add_col(std::size_t dst, std::size_t src, const Poly& f) {
        if (f.is_zero()) return;
        d.add_col_multiple(dst, src, f);
        if (opts.need_v) out->v.add_col_multiple(dst, src, f);
        if (opts.need_v_inv) out->v_inv.add_row_multiple(src, dst, -f);
    }
    void scale_row(std::size_t i, Fp c) {
        d.scale_row(i, c);
        if (opts.need_u) out->u.scale_row(i, c);
        if (opts.need_u_inv) out->u_inv.scale_col(i, c.inverse());
        out->det_u *= c;
    }

    // Minimal-degree nonzero entry in the trailing submatrix, ties broken
    // by smallest (row, col).  Returns false when the submatrix is zero.
    bool find_pivot(std::size_t k, std::size_t& pr, std::size_t& pc) const {
        int best = -1;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                const Poly& e = d.at(i, j);
                if (e.is_zero()) continue;
                if (best < 0 || e.degree() < best) {
                    best = e.degree();
                    pr = i;
                    pc = j;
                }
            }
        return best >= 0;
    }

    void run() {
        std::size_t n = std::min(rows, cols);
        for (std::size_t k = 0; k < n; ++k) {
            for (;;) {
                std::size_t pr = k, pc = k;
                if (!find_pivot(k, pr, pc)) return; // all remaining entries zero
                swap_rows(k, pr);
                swap_cols(k, pc);

                bool clean = true;
                for (std::size_t i = k + 1; i < rows; ++i) {
                    if (d.at(i, k).is_zero()) continue;
                    Poly q, r;
                    d.at(i, k).divmod(d.at(k, k), q, r);
                    add_row(i, k, -q);
                    if (!d.at(i, k).is_zero()) clean = false;
                }
                for (std::size_t j = k + 1; j < cols; ++j) {
                    if (d.at(k, j).is_zero()) continue;
                    Poly q, r;
                    d.at(k, j).divmod(d.at(k, k), q, r);
                    add_col(j, k, -q);
                    if (!d.at(k, j).is_zero()) clean = false;
                }
                if (!clean) continue; // pivot degree dropped somewhere, retry

                // Invariant-factor condition: the pivot must divide the
                // rest of the submatrix.
                bool fixed = false;
                for (std::size_t i = k + 1; i < rows && !fixed; ++i)
                    for (std::size_t j = k + 1; j < cols && !fixed; ++j) {
                        if (d.at(i, j).is_zero()) continue;
                        if (!d.at(k, k).divides(d.at(i, j))) {
                            add_row(k, i, Poly::one());
                            out->mixed_rows = true;
                            fixed = true;
                        }
                    }
                if (fixed) continue;

                scale_row(k, d.at(k, k).leading().inverse());
                out->rank = k + 1;
                break;
            }
        }
    }
};

} // namespace

SmithForm snf(const PolyMat& a, const SnfOptions& opts) {
    SmithForm out;
    out.det_u = Fp(1);
    out.det_v = Fp(1);
    if (opts.need_u) out.u = PolyMat::identity(a.rows());
    if (opts.need_u_inv) out.u_inv = PolyMat::identity(a.rows());
    if (opts.need_v) out.v = PolyMat::identity(a.cols());
    if (opts.need_v_inv) out.v_inv = PolyMat::identity(a.cols());
    out.row_perm.resize(a.rows());
    out.col_perm.resize(a.cols());
    std::iota(out.row_perm.begin(), out.row_perm.end(), 0);
    std::iota(out.col_perm.begin(), out.col_perm.end(), 0);

    Worker w(a, &out, opts);
    w.run();
    out.d = std::move(w.d);
    return out;
}

} // namespace khx
