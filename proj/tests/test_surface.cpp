#include <catch2/catch_amalgamated.hpp>

#include "twistcalc/surface.hpp"

using namespace twistcalc;

TEST_CASE("minimal-general-type preset") {
    auto s = preset_min_general_type(2, 1);
    CHECK(s.lattice.rank == 1);
    CHECK(s.lattice.gram == std::vector<long>{1});
    CHECK(s.canonical == LatticeVector{1});
    REQUIRE(s.sw_table.size() == 2);
    CHECK(s.sw_table[0].a == LatticeVector{0});
    CHECK(s.sw_table[0].value == 1);
    CHECK(s.sw_table[1].a == s.canonical);
    CHECK(s.sw_table[1].value == 1); // (-1)^2
    CHECK(s.has_tag(kTagMinimalGeneralType));
    CHECK(validate(s).empty());

    auto odd = preset_min_general_type(1, 1);
    CHECK(odd.sw_table[1].value == -1); // (-1)^1

    auto even_k2 = preset_min_general_type(3, 4);
    CHECK(even_k2.lattice.rank == 2);
    CHECK(even_k2.k_squared() == 4);
    CHECK(is_characteristic(even_k2.lattice, even_k2.canonical));
    CHECK(validate(even_k2).empty());

    CHECK_THROWS_AS(preset_min_general_type(0, 1), ValidationError);
    CHECK_THROWS_AS(preset_min_general_type(1, 0), ValidationError);
}

TEST_CASE("validate names the failed invariant") {
    auto s = preset_min_general_type(2, 1);

    SECTION("sw degree condition") {
        SurfaceData bad = s;
        bad.tags.erase(kTagMinimalGeneralType);
        bad.sw_table.push_back({{2}, 5}); // a^2 = 4, a.K = 2
        auto v = validate(bad);
        REQUIRE(v.size() == 1);
        CHECK(v[0].find("a^2 = a.K") != std::string::npos);
    }

    SECTION("non-characteristic canonical class") {
        SurfaceData bad = s;
        bad.canonical = {0};
        bad.sw_table.clear();
        bad.tags.clear();
        auto v = validate(bad);
        REQUIRE(!v.empty());
        CHECK(v[0].find("Wu") != std::string::npos);
    }

    SECTION("minimal-general-type table shape") {
        SurfaceData bad = s;
        bad.sw_table[1].value = 5;
        auto v = validate(bad);
        REQUIRE(!v.empty());
        CHECK(v[0].find("minimal_general_type") != std::string::npos);
    }
}

TEST_CASE("validation warnings flag non-unimodular lattices") {
    auto s = preset_min_general_type(2, 1);
    CHECK(validation_warnings(s).empty());

    SurfaceData nonuni;
    nonuni.chi = 1;
    nonuni.lattice = IntersectionLattice(1, {3});
    nonuni.canonical = {1};
    CHECK(validation_warnings(nonuni).size() == 1);
    CHECK(validate(nonuni).empty()); // warning, not an error
}

TEST_CASE("descriptor round trip") {
    auto s = preset_min_general_type(3, 2);
    auto text = serialize_surface(s);
    auto back = parse_surface(text);
    CHECK(back.chi == s.chi);
    CHECK(back.lattice == s.lattice);
    CHECK(back.canonical == s.canonical);
    CHECK(back.sw_table.size() == s.sw_table.size());
    CHECK(back.tags == s.tags);
    CHECK(serialize_surface(back) == text); // serialize . parse is the identity on descriptor bytes
}

TEST_CASE("descriptor parse errors name the offending key") {
    CHECK_THROWS_AS(parse_surface("{not json"), ParseError);
    CHECK_THROWS_WITH(parse_surface(R"({"schema_version":1,"chi":1,"gram":[1],"K":[1],"sw":[]})"),
                      Catch::Matchers::ContainsSubstring("tags"));
    CHECK_THROWS_WITH(parse_surface(R"({"schema_version":1,"chi":1,"gram":[1,2],"K":[1],"sw":[],"tags":[]})"),
                      Catch::Matchers::ContainsSubstring("gram"));
}
