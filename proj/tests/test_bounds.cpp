#include <catch2/catch_amalgamated.hpp>

#include "twistcalc/bounds.hpp"
#include "twistcalc/serialize.hpp"

using namespace twistcalc;

namespace {
MuRClass w_with_pairing(const SurfaceData& s, long r, long target) {
    for (const auto& w : enumerate_mu_r(s.lattice, r))
        if (pair_mod_r(s.lattice, s.canonical, w) == target) return w;
    throw std::logic_error("no class with requested pairing");
}
} // namespace

TEST_CASE("plurigenus") {
    CHECK(plurigenus(2, 1, 2, true) == 3);
    CHECK(plurigenus(2, 0, 1, true) == 1);
    CHECK(plurigenus(3, 2, 1, true) == 7);
    CHECK_THROWS_AS(plurigenus(2, 1, 2, false), ValidationError);
}

TEST_CASE("non-emptiness lower bound") {
    CHECK(adj_lower(2, 2, 1, true) == 4);
    CHECK(adj_lower(2, 0, 1, true) == 0); // clamped at zero
    CHECK(adj_lower(3, 1, 1, true) == 4);
}

TEST_CASE("upper bound from a certified virtual dimension") {
    CHECK(upper_from_delta(2, 2, 1) == 7);
    CHECK(upper_from_delta(3, 1, 0) == 8);
    CHECK(upper_from_delta(2, 0, 0) == 0);
}

TEST_CASE("c2_min report: the chi=2, K2=1 window") {
    auto s = preset_min_general_type(2, 1);

    auto odd = c2min_report(s, 2, w_with_pairing(s, 2, 1)); // wK + chi odd
    CHECK(odd.lower == 4);
    REQUIRE(odd.upper);
    CHECK(*odd.upper == 7);
    CHECK(odd.delta == 1);
    CHECK(odd.provenance == BoundProvenance::Theorem);

    auto even = c2min_report(s, 2, w_with_pairing(s, 2, 0)); // wK + chi even
    REQUIRE(even.upper);
    CHECK(*even.upper == 6);
    CHECK(even.delta == 0);
}

TEST_CASE("c2_min report: rank 3 is conditional") {
    auto s = preset_min_general_type(1, 1);
    auto rep = c2min_report(s, 3, w_with_pairing(s, 3, 0));
    REQUIRE(rep.upper);
    CHECK(*rep.upper == 8);
    CHECK(rep.provenance == BoundProvenance::ConjectureGott);
    CHECK(rep.lower == 4); // max{9 - 4 - 1, 0}
    CHECK(rep.lower <= *rep.upper);
}

TEST_CASE("c2_min report: lower <= upper across presets") {
    for (long chi = 1; chi <= 6; ++chi) {
        for (long K2 = 1; K2 <= 6; ++K2) {
            auto s = preset_min_general_type(chi, K2);
            for (long r : {2l, 3l}) {
                for (long wk : {0l, 1l}) {
                    auto rep = c2min_report(s, r, w_with_pairing(s, r, wk));
                    REQUIRE(rep.upper);
                    CHECK(rep.lower <= *rep.upper);
                    // the recomputed leading order reproduces the closed form
                    REQUIRE(rep.delta);
                    CHECK(*rep.upper == upper_from_delta(r, chi, *rep.delta));
                }
            }
        }
    }
}

TEST_CASE("c2_min report: general ranks are expectation-flagged only") {
    auto s = preset_min_general_type(2, 1);
    auto r4 = c2min_report(s, 4, w_with_pairing(s, 4, 1));
    CHECK(r4.provenance == BoundProvenance::Expectation);
    REQUIRE(r4.upper);
    CHECK(*r4.upper == 15 * 2 + 1);

    auto r5 = c2min_report(s, 5, w_with_pairing(s, 5, 0));
    CHECK(r5.provenance == BoundProvenance::Expectation);
    REQUIRE(r5.upper);
    CHECK(*r5.upper == 24 * 2);

    CHECK_THROWS_AS(c2min_report(s, 7, w_with_pairing(s, 2, 0)), DomainError);
}

TEST_CASE("c2_min report: tags are required") {
    auto s = preset_min_general_type(2, 1);
    s.tags.erase(kTagH20Positive);
    CHECK_THROWS_AS(c2min_report(s, 2, MuRClass(2, {0})), ValidationError);
}

TEST_CASE("report serialization carries provenance strings") {
    auto s = preset_min_general_type(2, 1);
    auto rep = c2min_report(s, 2, w_with_pairing(s, 2, 1));
    auto j = c2min_report_to_json(rep);
    CHECK(j["lower"] == 4);
    CHECK(j["upper"] == 7);
    CHECK(j["provenance"] == "THEOREM");
    CHECK(j["parity_case"] == "wK + chi odd");
}
