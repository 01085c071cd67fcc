#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistcalc/errors.hpp"
#include "twistcalc/lattice.hpp"

namespace twistcalc {

inline constexpr const char* kTagMinimalGeneralType = "minimal_general_type";
inline constexpr const char* kTagH20Positive = "h20_positive";
inline constexpr int kDescriptorSchemaVersion = 1;

struct SWEntry {
    LatticeVector a;
    long value = 0;
};

/// Numerical invariants of a polarized surface, as consumed by the closed
/// formulas: chi(O_X), the intersection lattice, the canonical class, and
/// the table of Seiberg-Witten basic classes.
struct SurfaceData {
    long chi = 1;
    IntersectionLattice lattice;
    LatticeVector canonical;
    std::vector<SWEntry> sw_table;
    std::set<std::string> tags;

    bool has_tag(const std::string& t) const { return tags.count(t) > 0; }
    long k_squared() const { return pair(lattice, canonical, canonical); }
};

/// Minimal surface of general type: Seiberg-Witten theory collapses to the
/// classes 0 and K with invariants 1 and (-1)^chi. A small lattice carrying
/// a characteristic K with K^2 = K2 is chosen per parity of K2. The tags
/// assert the validity hypotheses; they are not derived.
inline SurfaceData preset_min_general_type(long chi, long K2) {
    if (chi < 1) throw ValidationError("preset_min_general_type: chi must be >= 1");
    if (K2 < 1) throw ValidationError("preset_min_general_type: K^2 must be >= 1");
    SurfaceData s;
    s.chi = chi;
    if (K2 % 2 != 0) {
        s.lattice = IntersectionLattice(1, {K2});
        s.canonical = {1};
    } else {
        // diag(K2-1, 1) with K = (1,1): K^2 = K2 and both diagonal parities match
        s.lattice = IntersectionLattice(2, {K2 - 1, 0, 0, 1});
        s.canonical = {1, 1};
    }
    if (!is_characteristic(s.lattice, s.canonical) || s.k_squared() != K2)
        throw ValidationError("preset_min_general_type: no characteristic K with the requested K^2");
    long sw_k = (chi % 2 == 0) ? 1 : -1;
    s.sw_table = {{LatticeVector(s.lattice.rank, 0), 1}, {s.canonical, sw_k}};
    s.tags = {kTagMinimalGeneralType, kTagH20Positive};
    return s;
}

/// Every violated invariant, by name; empty means valid.
inline std::vector<std::string> validate(const SurfaceData& s) {
    std::vector<std::string> out;
    if (static_cast<long>(s.canonical.size()) != s.lattice.rank)
        out.push_back("canonical class length does not match lattice rank");
    else if (!is_characteristic(s.lattice, s.canonical))
        out.push_back("canonical class is not characteristic (Wu check x.x = x.K mod 2 fails)");
    for (const auto& e : s.sw_table) {
        if (static_cast<long>(e.a.size()) != s.lattice.rank) {
            out.push_back("sw entry has wrong vector length");
            continue;
        }
        if (e.value != 0 && static_cast<long>(s.canonical.size()) == s.lattice.rank) {
            if (pair(s.lattice, e.a, e.a) != pair(s.lattice, e.a, s.canonical))
                out.push_back("sw basic class violates the degree condition a^2 = a.K");
        }
    }
    if (s.has_tag(kTagMinimalGeneralType)) {
        LatticeVector zero(s.lattice.rank, 0);
        long want_k = (s.chi % 2 == 0) ? 1 : -1;
        bool seen_zero = false, seen_k = false, stray = false;
        for (const auto& e : s.sw_table) {
            if (e.a == zero && e.value == 1 && !seen_zero)
                seen_zero = true;
            else if (e.a == s.canonical && e.value == want_k && !seen_k)
                seen_k = true;
            else
                stray = true;
        }
        if (!(seen_zero && seen_k && !stray))
            out.push_back("minimal_general_type requires sw table exactly {(0,1), (K,(-1)^chi)}");
    }
    return out;
}

/// Advisory findings that do not invalidate the data.
inline std::vector<std::string> validation_warnings(const SurfaceData& s) {
    std::vector<std::string> out;
    IMatrix g(s.lattice.rank, s.lattice.rank);
    for (long i = 0; i < s.lattice.rank; ++i)
        for (long j = 0; j < s.lattice.rank; ++j) g.at(i, j) = s.lattice.entry(i, j);
    Int det = integer_det(g);
    if (det != 1 && det != -1) out.push_back("gram determinant is not +-1 (lattice not unimodular)");
    return out;
}

inline nlohmann::json surface_to_json(const SurfaceData& s) {
    nlohmann::json j;
    j["schema_version"] = kDescriptorSchemaVersion;
    j["chi"] = s.chi;
    j["gram"] = s.lattice.gram;
    j["K"] = s.canonical;
    nlohmann::json sw = nlohmann::json::array();
    for (const auto& e : s.sw_table) sw.push_back({{"a", e.a}, {"val", e.value}});
    j["sw"] = sw;
    j["tags"] = std::vector<std::string>(s.tags.begin(), s.tags.end());
    return j;
}

inline SurfaceData surface_from_json(const nlohmann::json& j) {
    for (const char* key : {"schema_version", "chi", "gram", "K", "sw", "tags"})
        if (!j.contains(key)) throw ParseError(std::string("surface descriptor: missing key \"") + key + "\"");
    if (j["schema_version"].get<int>() != kDescriptorSchemaVersion)
        throw ParseError("surface descriptor: unsupported schema_version");
    SurfaceData s;
    s.chi = j["chi"].get<long>();
    auto K = j["K"].get<std::vector<long>>();
    auto gram = j["gram"].get<std::vector<long>>();
    long rank = static_cast<long>(K.size());
    if (static_cast<long>(gram.size()) != rank * rank)
        throw ParseError("surface descriptor: key \"gram\" must have length len(K)^2");
    try {
        s.lattice = IntersectionLattice(rank, gram);
    } catch (const ValidationError& e) {
        throw ParseError(std::string("surface descriptor: key \"gram\": ") + e.what());
    }
    s.canonical = K;
    for (const auto& e : j["sw"]) {
        if (!e.contains("a") || !e.contains("val"))
            throw ParseError("surface descriptor: sw entries need keys \"a\" and \"val\"");
        s.sw_table.push_back({e["a"].get<std::vector<long>>(), e["val"].get<long>()});
    }
    for (const auto& t : j["tags"]) s.tags.insert(t.get<std::string>());
    return s;
}

inline std::string serialize_surface(const SurfaceData& s) { return surface_to_json(s).dump(2) + "\n"; }

inline SurfaceData parse_surface(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("surface descriptor: ") + e.what());
    }
    return surface_from_json(j);
}

inline SurfaceData load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("surface descriptor: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_surface(ss.str());
}

} // namespace twistcalc
