#ifndef KHX_SNF_HPP
#define KHX_SNF_HPP

#include <vector>

#include "khx/polymat.hpp"

namespace khx {

// Smith normal form over the PID F_p[x]:   u * a * v = d,
// u and v unimodular (determinant a nonzero field constant), d diagonal
// with monic entries and d_k | d_{k+1} (zeros trailing).
//
// row_perm / col_perm record where each original row/column index ended
// up through the swaps; entries of the input that are homogeneous for a
// grading (every entry a monomial whose degree is forced by row/column
// tags) keep their tags under all non-swap operations, so
// tags[perm[k]] is the tag carried by slot k of the output.  mixed_rows
// flags the one operation (the divisibility fix-up) that breaks this;
// it cannot fire on a monomial matrix reduced with minimal-degree
// pivoting.
struct SmithForm {
    PolyMat u, d, v;
    PolyMat u_inv, v_inv;
    Fp det_u, det_v;
    std::size_t rank = 0;
    std::vector<std::size_t> row_perm, col_perm;
    bool mixed_rows = false;
};

struct SnfOptions {
    bool need_u = true;
    bool need_v = true;
    bool need_u_inv = false;
    bool need_v_inv = false;
};

SmithForm snf(const PolyMat& a, const SnfOptions& opts = {});

} // namespace khx

#endif
