#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_util.hpp"
#include "twistcalc/chern.hpp"

using namespace twistcalc;

namespace {
const IntersectionLattice kUnit(1, {1});

TwistedChern tc(const IntersectionLattice& L, Rat r, std::vector<Rat> c1, Rat ch2) {
    return TwistedChern(L, std::move(r), std::move(c1), std::move(ch2));
}
} // namespace

TEST_CASE("cup product: unit, degree count, direct formula") {
    auto a = tc(kUnit, Rat(2), {Rat(0)}, Rat(1));
    CHECK(cup(a, TwistedChern::unit(kUnit)) == a);

    auto x = tc(kUnit, Rat(0), {Rat(3)}, Rat(0));
    auto y = tc(kUnit, Rat(0), {Rat(5)}, Rat(0));
    CHECK(cup(x, y) == tc(kUnit, Rat(0), {Rat(0)}, Rat(15)));

    auto b = tc(kUnit, Rat(3), {Rat(0)}, Rat(1));
    CHECK(cup(a, b) == tc(kUnit, Rat(6), {Rat(0)}, Rat(5)));

    IntersectionLattice other(2, {1, 0, 0, 1});
    CHECK_THROWS_AS(cup(a, TwistedChern::unit(other)), MismatchError);
}

TEST_CASE("exp of a degree-2 class is a homomorphism") {
    IntersectionLattice L(2, {2, 1, 1, -1});
    CHECK(exp_degree2(L, {Rat(0), Rat(0)}) == TwistedChern::unit(L));

    std::vector<Rat> v{Rat(1, 2), Rat(-2)};
    std::vector<Rat> w{Rat(3), Rat(1, 3)};
    std::vector<Rat> mv{-v[0], -v[1]};
    std::vector<Rat> vw{v[0] + w[0], v[1] + w[1]};
    CHECK(cup(exp_degree2(L, v), exp_degree2(L, mv)) == TwistedChern::unit(L));
    CHECK(cup(exp_degree2(L, v), exp_degree2(L, w)) == exp_degree2(L, vw));
}

TEST_CASE("sqrt_unit: closed forms and round trip") {
    auto a = tc(kUnit, Rat(9), {Rat(0)}, Rat(5));
    auto r = sqrt_unit(a);
    CHECK(r == tc(kUnit, Rat(3), {Rat(0)}, Rat(5, 6)));
    CHECK(sqrt_unit(TwistedChern::unit(kUnit)) == TwistedChern::unit(kUnit));

    std::mt19937 rng(31);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int iter = 0; iter < 25; ++iter) {
        long root = 1 + (iter % 4);
        auto b = tc(kUnit, Rat(root * root), {Rat(d(rng), 3)}, Rat(d(rng), 2));
        CHECK(cup(sqrt_unit(b), sqrt_unit(b)) == b);
    }

    CHECK_THROWS_AS(sqrt_unit(tc(kUnit, Rat(2), {Rat(0)}, Rat(0))), DomainError);
    CHECK_THROWS_AS(sqrt_unit(tc(kUnit, Rat(-4), {Rat(0)}, Rat(0))), DomainError);
}

TEST_CASE("twisted character: untwisted case and inverse twist") {
    auto f = tc(kUnit, Rat(2), {Rat(1)}, Rat(-3, 2));
    auto untwisted = twisted_character(f, TwistedChern::unit(kUnit), {0}, 2);
    CHECK(untwisted == f);

    // twisting by xi then undoing the exponential recovers ch_F / sqrt(ch_A)
    auto A = tc(kUnit, Rat(4), {Rat(0)}, Rat(2));
    auto tw = twisted_character(f, A, {3}, 2);
    auto undo = cup(exp_degree2(kUnit, {Rat(-3, 2)}), tw);
    CHECK(undo == cup(f, cup_inverse(sqrt_unit(A))));
}

TEST_CASE("twisted character of a module over a trivial endomorphism algebra") {
    // A = End(E^v), M = F (x) E^v: the twisted character with B-field
    // c1(E)/r recovers ch(F) exactly.
    std::mt19937 rng(8112);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int iter = 0; iter < 30; ++iter) {
        auto [L, K] = testing::random_characteristic_lattice(rng, 3);
        long r = 2 + iter % 3;
        std::vector<Rat> xi(L.rank), xneg(L.rank);
        LatticeVector xi_int(L.rank);
        for (long i = 0; i < L.rank; ++i) {
            xi_int[i] = d(rng);
            xi[i] = Rat(xi_int[i]);
            xneg[i] = -xi[i];
        }
        Rat c2E(d(rng));
        Rat xi_sq = pair_rational(L, xi, xi);
        auto chE = tc(L, Rat(r), xi, xi_sq / 2 - c2E);
        auto chEdual = tc(L, Rat(r), xneg, xi_sq / 2 - c2E);
        auto chA = cup(chE, chEdual);

        std::vector<Rat> fc1(L.rank);
        for (auto& c : fc1) c = Rat(d(rng));
        Rat c2F(d(rng)); // ch2 of a sheaf is c1^2/2 - c2 with both Chern classes integral
        auto chF = tc(L, Rat(1 + (iter % 2)), fc1, pair_rational(L, fc1, fc1) / 2 - c2F);

        auto chM = cup(chF, chEdual);
        CHECK(twisted_character(chM, chA, xi_int, r) == chF);

        auto report = integrality_check(twisted_character(chM, chA, xi_int, r), r);
        CHECK(report.pass());
    }
}

TEST_CASE("integrality check") {
    auto good = tc(kUnit, Rat(2), {Rat(1)}, Rat(1, 2) - Rat(3)); // c2 = 1/2 - ch2 = 3
    auto rep = integrality_check(good, 2);
    CHECK(rep.pass());
    CHECK(rep.c2 == Rat(3));

    auto bad = tc(kUnit, Rat(2), {Rat(1, 2)}, Rat(0));
    auto rep2 = integrality_check(bad, 2);
    CHECK_FALSE(rep2.c1_integral);
    REQUIRE(!rep2.violations.empty());
    CHECK(rep2.violations[0].find("c1") != std::string::npos);
}

TEST_CASE("virtual dimension") {
    CHECK(virtual_dimension(2, 1, Rat(3), 1) == Rat(8));
    CHECK(virtual_dimension(1, 77, Rat(5), 9) == Rat(10)); // rank-1 degenerate: 2 c2
    CHECK(virtual_dimension(3, 0, Rat(4), 2) == Rat(24 - 16));
}

TEST_CASE("B-field shift: examples and exact vd invariance") {
    IntersectionLattice L(2, {0, 1, 1, 0});
    auto [xi1, c21] = shift_bfield(L, 3, {1, 2}, {0, 0}, Rat(5));
    CHECK(xi1 == LatticeVector{1, 2});
    CHECK(c21 == Rat(5));

    // r=2, gamma.xi = 1, gamma^2 = 0 -> c2 shifts by 1
    auto [xi2, c22] = shift_bfield(L, 2, {1, 0}, {0, 1}, Rat(4));
    CHECK(xi2 == LatticeVector{1, 2});
    CHECK(c22 == Rat(5));

    std::mt19937 rng(1000003);
    std::uniform_int_distribution<long> d(-5, 5);
    std::uniform_int_distribution<long> rd(2, 8);
    std::uniform_int_distribution<long> chid(-3, 5);
    for (int iter = 0; iter < 1000; ++iter) {
        auto [lat, K] = testing::random_characteristic_lattice(rng, 4);
        long r = rd(rng);
        long chi = chid(rng);
        LatticeVector xi(lat.rank), gamma(lat.rank);
        for (auto& v : xi) v = d(rng);
        for (auto& v : gamma) v = d(rng);
        Rat c2(d(rng));
        auto [xi_new, c2_new] = shift_bfield(lat, r, xi, gamma, c2);
        CHECK(virtual_dimension(r, pair(lat, xi_new, xi_new), c2_new, chi) ==
              virtual_dimension(r, pair(lat, xi, xi), c2, chi));
    }
}

TEST_CASE("endomorphism-algebra c2") {
    CHECK(c2_of_endomorphism(2, 0, 4) == 16);
    CHECK(c2_of_endomorphism(2, 1, 3) == 11);
    for (long r : {2l, 3l, 5l})
        for (long c1sq : {-2l, 0l, 7l})
            for (long c2 : {0l, 3l})
                CHECK(Rat(c2_of_endomorphism(r, c1sq, c2)) == virtual_dimension(r, c1sq, Rat(c2), 0));
}
