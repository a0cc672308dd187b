#include "doctest.h"

#include "khx/cube.hpp"

using namespace khx;

namespace {
const char* kTrefoil = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const char* kFigureEight = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

// t=0 dimensions reconstructed from the F[x] decomposition by universal
// coefficients: H^i(C ⊗ F[x]/(x^2)) = H^i ⊗ F[x]/(x^2) ⊕ Tor(H^{i+1}, F[x]/(x^2)),
// so a free summand at i contributes 2 at i and an x^k summand contributes
// min(k,2) at i and min(k,2) at i-1.
std::map<int, std::size_t> uc_reconstruction(const HomologyResult& h) {
    std::map<int, std::size_t> dims;
    for (const auto& [i, dec] : h.by_degree) {
        dims[i] += 2 * dec.free_rank;
        for (int k : dec.torsion_exponents) {
            dims[i] += static_cast<std::size_t>(std::min(k, 2));
            dims[i - 1] += static_cast<std::size_t>(std::min(k, 2));
        }
    }
    for (auto it = dims.begin(); it != dims.end();)
        it = it->second == 0 ? dims.erase(it) : std::next(it);
    return dims;
}

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& m) {
    std::map<int, std::size_t> out;
    for (auto [k, v] : m)
        if (v) out[k] = v;
    return out;
}
} // namespace

TEST_CASE("unknot complex and homology") {
    Fp::set_modulus(32003);
    Complex c = Complex::build(parse_pd("O(1)"));
    CHECK(c.dim(0) == 1);
    const Generator& g = c.generators(0)[0];
    CHECK(g.i_grade == 0);
    CHECK(g.j_grade == 1);

    HomologyResult h = homology(c);
    CHECK(h.free_rank_total == 1);
    CHECK(h.torsion_exponents_total.empty());
    CHECK(h.xo == 0);
    auto pb = h.per_bigrade();
    REQUIRE(pb.count(Bigrade{0, 1}) == 1);
    CHECK(pb.at(Bigrade{0, 1}).free_rank == 1);

    // specializations of the unknot: A itself, dimension 2
    CHECK(specialize_dimension(c, Fp(0)).total == 2);
    CHECK(specialize_dimension(c, Fp(1)).total == 2);
}

TEST_CASE("one-kink unknot") {
    Fp::set_modulus(32003);
    Complex c = Complex::build(parse_pd("X(1,1,2,2)"));
    HomologyResult h = homology(c);
    CHECK(h.free_rank_total == 1);
    CHECK(h.xo == 0);
    auto pb = h.per_bigrade();
    REQUIRE(pb.count(Bigrade{0, 1}) == 1);
    CHECK(pb.at(Bigrade{0, 1}).free_rank == 1);
}

TEST_CASE("trefoil chain ranks follow circle counts") {
    Fp::set_modulus(32003);
    Diagram d = parse_pd(kTrefoil);
    Complex c = Complex::build(d);
    for (int w = 0; w <= 3; ++w) {
        std::size_t expect = 0;
        for (std::uint32_t bits = 0; bits < 8; ++bits) {
            if (__builtin_popcount(bits) != w) continue;
            expect += 1u << (d.resolve(State{bits, 3}).circle_count - 1);
        }
        CHECK(c.dim(w) == expect); // n_minus = 0 so i = w
    }
}

TEST_CASE("trefoil homology: free rank 1, torsion {1}, xo 1") {
    Fp::set_modulus(32003);
    Complex c = Complex::build(parse_pd(kTrefoil));
    HomologyResult h = homology(c);
    CHECK(h.free_rank_total == 1);
    CHECK(h.torsion_exponents_total == std::vector<int>{1});
    CHECK(torsion_order(h) == 1);

    // two-pipeline reconciliation at t=0 and Lee dimension at t=1
    SpecializationDims t0 = specialize_dimension(c, Fp(0));
    CHECK(nonzero(t0.by_degree) == uc_reconstruction(h));
    CHECK(specialize_dimension(c, Fp(1)).total == 2);
}

TEST_CASE("figure-eight homology: free rank 1, xo 1") {
    Fp::set_modulus(32003);
    Complex c = Complex::build(parse_pd(kFigureEight));
    HomologyResult h = homology(c);
    CHECK(h.free_rank_total == 1);
    CHECK(torsion_order(h) == 1);
    SpecializationDims t0 = specialize_dimension(c, Fp(0));
    CHECK(nonzero(t0.by_degree) == uc_reconstruction(h));
    CHECK(specialize_dimension(c, Fp(1)).total == 2);
}

TEST_CASE("mirror symmetry of xo on small knots") {
    Fp::set_modulus(32003);
    for (const char* pd : {kTrefoil, kFigureEight}) {
        Diagram d = parse_pd(pd);
        HomologyResult h = homology(Complex::build(d));
        HomologyResult hm = homology(Complex::build(d.mirrored()));
        CHECK(h.xo == hm.xo);
        CHECK(h.free_rank_total == hm.free_rank_total);
        CHECK(h.torsion_exponents_total == hm.torsion_exponents_total);
    }
}

TEST_CASE("graded Euler characteristic matches cube ranks") {
    Fp::set_modulus(32003);
    for (const char* pd : {kTrefoil, kFigureEight, "X(1,1,2,2)"}) {
        Complex c = Complex::build(parse_pd(pd));
        SpecializationDims t0 = specialize_dimension(c, Fp(0));
        std::map<int, long> chi_chain, chi_hom;
        for (auto [bg, dim] : chain_dims_t0(c))
            chi_chain[bg.j] += (bg.i % 2 == 0 ? 1 : -1) * static_cast<long>(dim);
        for (auto [bg, dim] : t0.by_bigrade)
            chi_hom[bg.j] += (bg.i % 2 == 0 ? 1 : -1) * static_cast<long>(dim);
        for (auto it = chi_chain.begin(); it != chi_chain.end();)
            it = it->second == 0 ? chi_chain.erase(it) : std::next(it);
        for (auto it = chi_hom.begin(); it != chi_hom.end();)
            it = it->second == 0 ? chi_hom.erase(it) : std::next(it);
        CHECK(chi_chain == chi_hom);
    }
}

TEST_CASE("dot map commutes with the differential") {
    Fp::set_modulus(32003);
    Diagram d = parse_pd(kTrefoil);
    Complex c = Complex::build(d);
    for (int arc : {1, 2, 4}) {
        auto blocks = c.dot_blocks(arc);
        for (int i = c.min_i(); i < c.max_i(); ++i) {
            const PolyMat& di = c.differential(i);
            CHECK(di * blocks.at(i) == blocks.at(i + 1) * di);
        }
        // j-degree -2, entrywise
        for (int i = c.min_i(); i <= c.max_i(); ++i) {
            auto grades = c.grades(i);
            const PolyMat& b = blocks.at(i);
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t cc = 0; cc < b.cols(); ++cc) {
                    if (b.at(r, cc).is_zero()) continue;
                    CHECK(grades[r].j - 2 * b.at(r, cc).degree() - grades[cc].j == -2);
                }
        }
    }
}

TEST_CASE("dot applied twice is multiplication by t = x^2 on the unknot") {
    Fp::set_modulus(32003);
    Complex c = Complex::build(parse_pd("O(1)"));
    auto blocks = c.dot_blocks(1);
    const PolyMat& b = blocks.at(0);
    REQUIRE(b.rows() == 1);
    CHECK(b.at(0, 0) == Poly::x());
    CHECK((b * b).at(0, 0) == Poly::monomial(Fp(1), 2));
}

TEST_CASE("homology totals do not depend on the basepoint arc") {
    Fp::set_modulus(32003);
    Diagram t = parse_pd(kTrefoil);
    HomologyResult base = homology(Complex::build(t));
    for (int arc : {2, 3, 6}) {
        HomologyResult h = homology(Complex::build(t.with_basepoint(arc)));
        CHECK(h.free_rank_total == base.free_rank_total);
        CHECK(h.torsion_exponents_total == base.torsion_exponents_total);
        CHECK(h.xo == base.xo);
    }
}

TEST_CASE("any odd prime works") {
    for (std::uint32_t p : {3u, 5u, 7u, 101u}) {
        Fp::set_modulus(p);
        HomologyResult h = homology(Complex::build(parse_pd(kTrefoil)));
        CHECK(h.free_rank_total == 1);
        CHECK(h.torsion_exponents_total == std::vector<int>{1});
        CHECK(specialize_dimension(Complex::build(parse_pd(kTrefoil)), Fp(1)).total == 2);
    }
    Fp::set_modulus(32003);
}

TEST_CASE("torsion_order reads the largest exponent") {
    HomologyResult h;
    CHECK(torsion_order(h) == 0);
    h.torsion_exponents_total = {1, 1, 2};
    CHECK(torsion_order(h) == 2);
}

TEST_CASE("links are rejected unless requested") {
    Fp::set_modulus(32003);
    CHECK_THROWS_AS(Complex::build(parse_pd("O(1) O(2)")), Error);
    Complex c = Complex::build(parse_pd("O(1) O(2)"), true);
    HomologyResult h = homology(c);
    CHECK(h.free_rank_total == 2); // A as a free F[x]-module on {1, x}
    CHECK(specialize_dimension(c, Fp(1)).total == 4);
}
