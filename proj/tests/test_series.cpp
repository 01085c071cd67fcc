#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "twistcalc/series.hpp"

using namespace twistcalc;

namespace {

// Independent oracle: expand prod_{n<=order}(1-q^n)^24 by repeated
// multiplication with the sparse binomial (1 - q^n), plain integer array.
std::vector<Int> naive_discriminant(long order) {
    std::vector<Int> p(order + 1, Int(0));
    p[0] = 1;
    for (long n = 1; n <= order; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (long e = order; e >= n; --e) p[e] -= p[e - n];
    return p;
}

QSeries random_series(std::mt19937& rng, long denom, long trunc, bool invertible) {
    std::uniform_int_distribution<long> coeff(-4, 4);
    QSeries s(denom, 0, trunc);
    for (long e = 0; e < trunc; ++e) {
        long c = coeff(rng);
        if (e == 0 && invertible && c == 0) c = 1;
        if (c != 0) s.set_coeff(e, CycloNumber(Rat(c)));
    }
    return s;
}

} // namespace

TEST_CASE("q_mul: telescoping, identity, puiseux exponents") {
    long T = 8;
    QSeries a(1, 0, T), b(1, 0, T);
    a.set_coeff(0, CycloNumber(Rat(1)));
    a.set_coeff(1, CycloNumber(Rat(-1)));
    b.set_coeff(0, CycloNumber(Rat(1)));
    b.set_coeff(1, CycloNumber(Rat(1)));
    b.set_coeff(2, CycloNumber(Rat(1)));
    auto p = a * b;
    CHECK(p.coeff(0) == CycloNumber(Rat(1)));
    CHECK(p.coeff(1).is_zero());
    CHECK(p.coeff(2).is_zero());
    CHECK(p.coeff(3) == CycloNumber(Rat(-1)));

    CHECK(a * QSeries::one(1, T) == a);

    auto q14 = QSeries::monomial(4, 1, CycloNumber(Rat(1)), 9);
    auto q12 = q14 * q14;
    CHECK(q12.min_exp() == 2);
    CHECK(q12.coeff(2) == CycloNumber(Rat(1)));

    QSeries other_denom(2, 0, 8);
    CHECK_THROWS_AS(a * other_denom, MismatchError);
}

TEST_CASE("truncation propagation: window is min of valid windows") {
    QSeries a(1, 0, 5), b(1, 1, 9);
    a.set_coeff(0, CycloNumber(Rat(1)));
    b.set_coeff(1, CycloNumber(Rat(1)));
    auto p = a * b;
    CHECK(p.min_exp() == 1);
    CHECK(p.trunc() == 6); // min(5 + 1, 9 + 0)
    CHECK_THROWS_AS(p.coeff(6), DomainError);
}

TEST_CASE("q_int_pow: geometric inverse, zeroth power, inverse round trip") {
    long T = 10;
    QSeries one_minus_q(1, 0, T);
    one_minus_q.set_coeff(0, CycloNumber(Rat(1)));
    one_minus_q.set_coeff(1, CycloNumber(Rat(-1)));
    auto geo = q_int_pow(one_minus_q, -1);
    for (long e = 0; e < geo.trunc(); ++e) CHECK(geo.coeff(e) == CycloNumber(Rat(1)));

    std::mt19937 rng(99);
    for (int iter = 0; iter < 10; ++iter) {
        auto a = random_series(rng, 3, 9, true);
        CHECK(q_int_pow(a, 0) == QSeries::one(3, 9));
        auto prod = q_int_pow(a, 2) * q_int_pow(a, -2);
        for (long e = 0; e < prod.trunc(); ++e)
            CHECK(prod.coeff(e) == (e == 0 ? CycloNumber(Rat(1)) : CycloNumber()));
    }

    QSeries z = QSeries::zero(1, 4);
    CHECK_THROWS_AS(q_int_pow(z, -1), DomainError);
}

TEST_CASE("eta product matches the naive expansion oracle") {
    const long order = 12;
    auto oracle = naive_discriminant(order);
    // frozen leading coefficients, from the oracle itself
    CHECK(oracle[0] == 1);
    CHECK(oracle[1] == -24);
    CHECK(oracle[2] == 252);
    CHECK(oracle[3] == -1472);

    auto eta = eta_product(1, {{Rat(1), 24}}, order + 1);
    for (long e = 0; e <= order; ++e) CHECK(eta.coeff(e) == CycloNumber(Rat(oracle[e])));
}

TEST_CASE("eta product: empty factor list and halved-exponent inverse") {
    CHECK(eta_product(1, {}, 6) == QSeries::one(1, 6));

    // prod (1 - q^{n/2})^{-12} times prod (1 - q^{n/2})^{12} = 1
    auto neg = eta_product(4, {{Rat(1, 2), -12}}, 13);
    auto pos = eta_product(4, {{Rat(1, 2), 12}}, 13);
    auto prod = neg * pos;
    for (long e = 0; e < prod.trunc(); ++e)
        CHECK(prod.coeff(e) == (e == 0 ? CycloNumber(Rat(1)) : CycloNumber()));

    CHECK_THROWS_AS(eta_product(4, {{Rat(1, 3), 2}}, 6), MismatchError);
}

TEST_CASE("ring axioms on random truncated series") {
    std::mt19937 rng(5150);
    for (int iter = 0; iter < 8; ++iter) {
        auto a = random_series(rng, 2, 8, false);
        auto b = random_series(rng, 2, 8, false);
        auto c = random_series(rng, 2, 8, false);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("extract_progression") {
    QSeries s(4, 0, 5);
    s.set_coeff(0, CycloNumber(Rat(1)));
    s.set_coeff(1, CycloNumber(Rat(1)));
    s.set_coeff(2, CycloNumber(Rat(1)));
    auto res1 = extract_progression(s, 1);
    REQUIRE(res1.size() == 1);
    CHECK(res1[0].first == 1);
    CHECK(res1[0].second == CycloNumber(Rat(1)));

    CHECK(extract_progression(s, 3).empty());

    auto delta = eta_product(1, {{Rat(1), 24}}, 8);
    auto all = extract_progression(delta, 0);
    CHECK(all.size() == delta.terms().size());
}

TEST_CASE("z-series exponentials") {
    // e^0 = 1
    CHECK(ZSeries::exp_quadratic(UPoly(), 6, 2) == ZSeries::one(6, 2));

    // coefficient of z^k in e^{cz} is c^k / k!
    CycloNumber c(Rat(3, 2));
    auto lin = ZSeries::exp_linear(c, 5, 0);
    CycloNumber pw(Rat(1));
    for (long k = 0; k <= 5; ++k) {
        if (k > 0) pw = pw * c;
        CHECK(lin.coeff(k) == UPoly(pw * Rat(Int(1), factorial(k))));
    }

    // e^{cz} e^{-cz} = 1 within truncation
    auto inv = ZSeries::exp_linear(CycloNumber() - c, 5, 0);
    CHECK(lin * inv == ZSeries::one(5, 0));

    // the u-part of the quadratic exponential lands at u-degree k in z^{2k}
    UPoly quad(std::vector<CycloNumber>{CycloNumber(Rat(0)), CycloNumber(Rat(2))}); // 2u
    auto e = ZSeries::exp_quadratic(quad, 4, 4);
    CHECK(e.coeff(2) == UPoly(std::vector<CycloNumber>{CycloNumber(), CycloNumber(Rat(2))}));
    CHECK(e.coeff(4) == UPoly(std::vector<CycloNumber>{CycloNumber(), CycloNumber(), CycloNumber(Rat(2))}));
}

TEST_CASE("leading_term") {
    ZSeries z(4, 1);
    CHECK_THROWS_AS(leading_term(z), NoLeadingTerm);
    z.set_coeff(2, UPoly(Rat(7)));
    auto lt = leading_term(z);
    CHECK(lt.order == 2);
    CHECK(lt.coefficient == UPoly(Rat(7)));
}
