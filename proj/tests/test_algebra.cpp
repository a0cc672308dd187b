#include "doctest.h"

#include <random>

#include "khx/fpmat.hpp"
#include "khx/module.hpp"
#include "khx/poly.hpp"

using namespace khx;

namespace {
Poly rand_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> dd(-1, max_deg);
    int d = dd(rng);
    if (d < 0) return Poly::zero();
    std::vector<Fp> c(static_cast<std::size_t>(d) + 1);
    std::uniform_int_distribution<std::int64_t> cd(0, Fp::modulus() - 1);
    for (auto& x : c) x = Fp(cd(rng));
    if (c.back().is_zero()) c.back() = Fp(1);
    return Poly(std::move(c));
}
} // namespace

TEST_CASE("field basics") {
    Fp::set_modulus(32003);
    CHECK(Fp(5) + Fp(31999) == Fp(1));
    CHECK(Fp(-1) == Fp(32002));
    CHECK((Fp(7) * Fp(7).inverse()) == Fp(1));
    CHECK_THROWS_AS(Fp::set_modulus(2), Error);
    CHECK_THROWS_AS(Fp::set_modulus(9), Error);
    Fp::set_modulus(32003);
}

TEST_CASE("polynomial arithmetic and division") {
    Fp::set_modulus(32003);
    Poly x = Poly::x();
    Poly p = x * x + Poly::one(); // x^2 + 1
    Poly q = x - Poly::one();
    Poly prod = p * q;
    CHECK(prod.degree() == 3);
    Poly quo, rem;
    prod.divmod(q, quo, rem);
    CHECK(rem.is_zero());
    CHECK(quo == p);

    CHECK(Poly({1, 2, 1}).evaluate(Fp(1)) == Fp(4));
    CHECK(Poly::monomial(Fp(3), 2).is_monomial());
    CHECK_FALSE(Poly({1, 0, 3}).is_monomial());
}

TEST_CASE("poly_gcd spec examples") {
    Fp::set_modulus(32003);
    SUBCASE("common factor x") {
        auto r = poly_gcd(Poly::monomial(Fp(1), 2), Poly::x());
        CHECK(r.g == Poly::x());
    }
    SUBCASE("zero case") {
        auto r = poly_gcd(Poly::zero(), Poly::zero());
        CHECK(r.g.is_zero());
    }
    SUBCASE("coprime over p=5") {
        Fp::set_modulus(5);
        auto r = poly_gcd(Poly({1, 1}), Poly({-1, 1})); // x+1, x-1
        CHECK(r.g == Poly::one());
        Fp::set_modulus(32003);
    }
}

TEST_CASE("poly_gcd Bezout identity on random inputs") {
    Fp::set_modulus(32003);
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 200; ++trial) {
        Poly a = rand_poly(rng, 6), b = rand_poly(rng, 6);
        auto r = poly_gcd(a, b);
        CHECK(r.g == r.u * a + r.v * b);
        if (!r.g.is_zero()) {
            CHECK(r.g.is_monic());
            CHECK(r.g.divides(a));
            CHECK(r.g.divides(b));
        }
    }
}

TEST_CASE("field homology dimension spec examples") {
    Fp::set_modulus(32003);
    SUBCASE("both zero maps on n-dim space") {
        FpMat dA(3, 0), dB(0, 3);
        CHECK(field_homology_dimension(dA, dB) == 3);
    }
    SUBCASE("iso kills everything") {
        FpMat dA(1, 1);
        dA.at(0, 0) = Fp(1);
        FpMat dB(0, 1);
        CHECK(field_homology_dimension(dA, dB) == 0);
    }
    SUBCASE("one-dim kernel") {
        FpMat dA(2, 0);
        FpMat dB(1, 2);
        dB.at(0, 1) = Fp(1);
        CHECK(field_homology_dimension(dA, dB) == 1);
    }
    SUBCASE("compose-not-zero rejected") {
        FpMat dA(1, 1), dB(1, 1);
        dA.at(0, 0) = Fp(1);
        dB.at(0, 0) = Fp(1);
        CHECK_THROWS_AS(field_homology_dimension(dA, dB), Error);
    }
}

TEST_CASE("module_decompose spec examples") {
    Fp::set_modulus(32003);
    SUBCASE("free of rank 2") {
        PolyMat p(1, 2); // one zero relation on two generators
        auto dec = module_decompose(p);
        CHECK(dec.free_rank == 2);
        CHECK(dec.torsion_exponents.empty());
    }
    SUBCASE("F[x]/(x)") {
        PolyMat p(1, 1);
        p.at(0, 0) = Poly::x();
        auto dec = module_decompose(p);
        CHECK(dec.free_rank == 0);
        CHECK(dec.torsion_exponents == std::vector<int>{1});
    }
    SUBCASE("unit factor dropped") {
        PolyMat p(2, 2);
        p.at(0, 0) = Poly::one();
        p.at(1, 1) = Poly::monomial(Fp(1), 3);
        auto dec = module_decompose(p);
        CHECK(dec.free_rank == 0);
        CHECK(dec.torsion_exponents == std::vector<int>{3});
    }
    SUBCASE("non-monomial torsion rejected") {
        PolyMat p(1, 1);
        p.at(0, 0) = Poly({1, 1}); // x + 1
        CHECK_THROWS_AS(module_decompose(p), Error);
    }
}

TEST_CASE("module map kernel/cokernel utilities") {
    Fp::set_modulus(32003);
    // M = F[x]/(x^2), N = F[x]/(x); the projection has kernel x*M
    PresentedModule m = PresentedModule::diagonal({2});
    PresentedModule n = PresentedModule::diagonal({1});
    ModuleMap proj{&m, &n, PolyMat(1, 1)};
    proj.matrix.at(0, 0) = Poly::one();
    check_well_defined(proj);
    CHECK_FALSE(kernel_is_trivial(proj));
    CHECK(cokernel_is_trivial(proj));

    // multiplication by x on F[x] is injective but not surjective
    PresentedModule f = PresentedModule::diagonal({-1});
    ModuleMap mulx{&f, &f, PolyMat(1, 1)};
    mulx.matrix.at(0, 0) = Poly::x();
    check_well_defined(mulx);
    CHECK(kernel_is_trivial(mulx));
    CHECK_FALSE(cokernel_is_trivial(mulx));
}
