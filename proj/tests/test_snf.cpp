#include "doctest.h"

#include <random>

#include "khx/snf.hpp"

using namespace khx;

namespace {

Poly rand_poly(std::mt19937_64& rng, int max_deg, int zero_weight = 2) {
    std::uniform_int_distribution<int> dd(-zero_weight, max_deg);
    int d = dd(rng);
    if (d < 0) return Poly::zero();
    std::vector<Fp> c(static_cast<std::size_t>(d) + 1);
    std::uniform_int_distribution<std::int64_t> cd(0, Fp::modulus() - 1);
    for (auto& x : c) x = Fp(cd(rng));
    if (c.back().is_zero()) c.back() = Fp(1);
    return Poly(std::move(c));
}

PolyMat rand_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int max_deg) {
    PolyMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rand_poly(rng, max_deg);
    return m;
}

// gcd of all k x k minors, monic (determinant-divisor oracle)
Poly minor_gcd(const PolyMat& a, std::size_t k) {
    Poly g = Poly::zero();
    auto enum_subsets = [&](std::size_t n, auto&& emit) {
        if (k > n) return;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            emit(idx);
            bool advanced = false;
            std::size_t i = k;
            while (i-- > 0) {
                if (idx[i] < n - k + i) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) return;
        }
    };
    std::vector<std::vector<std::size_t>> row_subsets, col_subsets;
    enum_subsets(a.rows(), [&](const std::vector<std::size_t>& s) { row_subsets.push_back(s); });
    enum_subsets(a.cols(), [&](const std::vector<std::size_t>& s) { col_subsets.push_back(s); });
    for (const auto& rsub : row_subsets)
        for (const auto& csub : col_subsets) {
            PolyMat sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = a.at(rsub[i], csub[j]);
            Poly det = sub.determinant();
            if (det.is_zero()) continue;
            g = poly_gcd(g, det).g;
        }
    return g;
}

void check_snf_postconditions(const PolyMat& a, bool det_divisor_check) {
    SnfOptions opts;
    opts.need_u = opts.need_v = true;
    SmithForm sf = snf(a, opts);
    CHECK(sf.u * a * sf.v == sf.d);
    CHECK(sf.d.is_diagonal());
    // unimodularity: exact determinants are nonzero constants matching the
    // tracked values
    Poly du = sf.u.determinant(), dv = sf.v.determinant();
    CHECK(du.is_unit());
    CHECK(dv.is_unit());
    CHECK(du == Poly::constant(sf.det_u));
    CHECK(dv == Poly::constant(sf.det_v));
    // divisibility chain, monic entries
    std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t k = 0; k < n; ++k) {
        const Poly& dk = sf.d.at(k, k);
        if (!dk.is_zero()) CHECK(dk.is_monic());
        if (k + 1 < n) {
            const Poly& dn = sf.d.at(k + 1, k + 1);
            if (dk.is_zero())
                CHECK(dn.is_zero());
            else
                CHECK(dk.divides(dn));
        }
    }
    if (det_divisor_check) {
        // product of the first k invariant factors == gcd of k x k minors
        Poly prod = Poly::one();
        for (std::size_t k = 0; k < n; ++k) {
            const Poly& dk = sf.d.at(k, k);
            if (dk.is_zero()) break;
            prod *= dk;
            CHECK(prod.monic() == minor_gcd(a, k + 1));
        }
    }
}

} // namespace

TEST_CASE("snf spec examples") {
    Fp::set_modulus(32003);
    SUBCASE("[[x]]") {
        PolyMat a(1, 1);
        a.at(0, 0) = Poly::x();
        SmithForm sf = snf(a);
        CHECK(sf.d.at(0, 0) == Poly::x());
        CHECK(sf.rank == 1);
    }
    SUBCASE("diag(x^2, x) reorders to diag(x, x^2)") {
        PolyMat a(2, 2);
        a.at(0, 0) = Poly::monomial(Fp(1), 2);
        a.at(1, 1) = Poly::x();
        SmithForm sf = snf(a);
        CHECK(sf.d.at(0, 0) == Poly::x());
        CHECK(sf.d.at(1, 1) == Poly::monomial(Fp(1), 2));
        CHECK(sf.u * a * sf.v == sf.d);
    }
    SUBCASE("[[x,1],[0,x]] -> diag(1, x^2)") {
        PolyMat a(2, 2);
        a.at(0, 0) = Poly::x();
        a.at(0, 1) = Poly::one();
        a.at(1, 1) = Poly::x();
        SmithForm sf = snf(a);
        CHECK(sf.d.at(0, 0) == Poly::one());
        CHECK(sf.d.at(1, 1) == Poly::monomial(Fp(1), 2));
        CHECK(sf.u * a * sf.v == sf.d);
        // determinant-divisor oracle: gcd of entries 1, determinant x^2
        CHECK(minor_gcd(a, 1) == Poly::one());
        CHECK(minor_gcd(a, 2) == Poly::monomial(Fp(1), 2));
    }
    SUBCASE("zero-size matrices") {
        CHECK(snf(PolyMat(0, 0)).rank == 0);
        CHECK(snf(PolyMat(0, 3)).v.rows() == 3);
        CHECK(snf(PolyMat(3, 0)).u.rows() == 3);
    }
}

TEST_CASE("snf postconditions on randomized matrices") {
    Fp::set_modulus(32003);
    std::mt19937_64 rng(987654);
    std::uniform_int_distribution<std::size_t> sz(1, 4);
    for (int trial = 0; trial < 120; ++trial) {
        PolyMat a = rand_matrix(rng, sz(rng), sz(rng), 3);
        check_snf_postconditions(a, true);
    }
    // a few larger ones without the exponential minor oracle
    std::uniform_int_distribution<std::size_t> sz2(5, 6);
    for (int trial = 0; trial < 10; ++trial) {
        PolyMat a = rand_matrix(rng, sz2(rng), sz2(rng), 2);
        check_snf_postconditions(a, false);
    }
}

TEST_CASE("snf v_inv and u_inv track inverses") {
    Fp::set_modulus(32003);
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 30; ++trial) {
        PolyMat a = rand_matrix(rng, 3, 4, 2);
        SnfOptions opts;
        opts.need_u = opts.need_v = opts.need_u_inv = opts.need_v_inv = true;
        SmithForm sf = snf(a, opts);
        CHECK(sf.u * sf.u_inv == PolyMat::identity(3));
        CHECK(sf.v * sf.v_inv == PolyMat::identity(4));
    }
}
