#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistcalc/bounds.hpp"
#include "twistcalc/chern.hpp"
#include "twistcalc/cyclo.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/formulas.hpp"
#include "twistcalc/psu.hpp"
#include "twistcalc/series.hpp"

namespace twistcalc {

inline constexpr int kSeriesSchemaVersion = 1;

// ---- cyclotomic numbers: (conductor, list of "p/q" strings) ----

inline nlohmann::json cyclo_to_json(const CycloNumber& x, bool with_float = false) {
    // rationals render at conductor 1 regardless of where they were computed
    if (x.is_rational() && x.conductor() != 1) return cyclo_to_json(CycloNumber(x.rational_value()), with_float);
    nlohmann::json j;
    j["conductor"] = x.conductor();
    std::vector<std::string> cs;
    cs.reserve(x.coeffs().size());
    for (const auto& c : x.coeffs()) cs.push_back(rat_to_string(c));
    j["coeffs"] = cs;
    if (with_float) {
        auto z = x.embed();
        j["approx"] = {{"re", z.real()}, {"im", z.imag()}, {"authoritative", false}};
    }
    return j;
}

inline CycloNumber cyclo_from_json(const nlohmann::json& j) {
    if (!j.contains("conductor") || !j.contains("coeffs"))
        throw ParseError("cyclotomic number: needs keys \"conductor\" and \"coeffs\"");
    long m = j["conductor"].get<long>();
    std::vector<Rat> cs;
    for (const auto& s : j["coeffs"]) cs.push_back(rat_from_string(s.get<std::string>()));
    return CycloNumber(m, std::move(cs));
}

// ---- q-series: list of {num, den, coeff} records ----

inline nlohmann::json qseries_to_json(const QSeries& s, bool with_float = false) {
    nlohmann::json j;
    j["schema_version"] = kSeriesSchemaVersion;
    j["denom"] = s.denom();
    j["min_exp"] = s.min_exp();
    j["trunc"] = s.trunc();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back({{"num", e}, {"den", s.denom()}, {"coeff", cyclo_to_json(c, with_float)}});
    j["terms"] = terms;
    return j;
}

inline QSeries qseries_from_json(const nlohmann::json& j) {
    for (const char* key : {"denom", "min_exp", "trunc", "terms"})
        if (!j.contains(key)) throw ParseError(std::string("q-series: missing key \"") + key + "\"");
    QSeries s(j["denom"].get<long>(), j["min_exp"].get<long>(), j["trunc"].get<long>());
    for (const auto& t : j["terms"]) {
        if (!t.contains("num") || !t.contains("coeff")) throw ParseError("q-series: term needs \"num\" and \"coeff\"");
        if (t.contains("den") && t["den"].get<long>() != s.denom())
            throw ParseError("q-series: term key \"den\" disagrees with series denom");
        s.set_coeff(t["num"].get<long>(), cyclo_from_json(t["coeff"]));
    }
    return s;
}

// ---- z-series with u-polynomial coefficients ----

inline nlohmann::json upoly_to_json(const UPoly& p, bool with_float = false) {
    nlohmann::json terms = nlohmann::json::array();
    for (long k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).is_zero()) continue;
        terms.push_back({{"u", k}, {"coeff", cyclo_to_json(p.coeff(k), with_float)}});
    }
    return terms;
}

inline nlohmann::json zseries_to_json(const ZSeries& z, bool with_float = false) {
    nlohmann::json j;
    j["schema_version"] = kSeriesSchemaVersion;
    j["z_trunc"] = z.z_trunc();
    j["u_trunc"] = z.u_trunc();
    nlohmann::json terms = nlohmann::json::array();
    for (long k = 0; k <= z.z_trunc(); ++k) {
        if (z.coeff(k).is_zero()) continue;
        terms.push_back({{"z", k}, {"upoly", upoly_to_json(z.coeff(k), with_float)}});
    }
    j["terms"] = terms;
    return j;
}

// ---- universal-series packs ----

inline UniversalSeriesPack pack_from_json(const nlohmann::json& j) {
    for (const char* key : {"schema_version", "r", "D0", "Dij"})
        if (!j.contains(key)) throw ParseError(std::string("series pack: missing key \"") + key + "\"");
    long r = j["r"].get<long>();
    UniversalSeriesPack pack(r, qseries_from_json(j["D0"]));
    for (const auto& e : j["Dij"]) {
        if (!e.contains("i") || !e.contains("j") || !e.contains("series"))
            throw ParseError("series pack: Dij entries need \"i\", \"j\", \"series\"");
        long i = e["i"].get<long>(), jj = e["j"].get<long>();
        if (i < 1 || jj < i || jj > r - 1) throw ParseError("series pack: Dij indices must satisfy 1 <= i <= j <= r-1");
        pack.dij.emplace(std::make_pair(i, jj), qseries_from_json(e["series"]));
    }
    return pack;
}

inline nlohmann::json pack_to_json(const UniversalSeriesPack& pack) {
    nlohmann::json j;
    j["schema_version"] = kSeriesSchemaVersion;
    j["r"] = pack.r;
    j["D0"] = qseries_to_json(pack.d0);
    nlohmann::json dij = nlohmann::json::array();
    for (const auto& [key, series] : pack.dij)
        dij.push_back({{"i", key.first}, {"j", key.second}, {"series", qseries_to_json(series)}});
    j["Dij"] = dij;
    return j;
}

// ---- per-class series tables ----

inline ClassSeriesTable table_from_json(const nlohmann::json& j) {
    for (const char* key : {"schema_version", "r", "keyed_by", "entries"})
        if (!j.contains(key)) throw ParseError(std::string("class table: missing key \"") + key + "\"");
    ClassSeriesTable t;
    t.r = j["r"].get<long>();
    std::string keyed = j["keyed_by"].get<std::string>();
    if (keyed == "w")
        t.collapsed = false;
    else if (keyed == "wK")
        t.collapsed = true;
    else
        throw ParseError("class table: key \"keyed_by\" must be \"w\" or \"wK\"");
    for (const auto& e : j["entries"]) {
        if (!e.contains("series")) throw ParseError("class table: entry missing \"series\"");
        if (t.collapsed) {
            if (!e.contains("t")) throw ParseError("class table: collapsed entry missing \"t\"");
            t.by_pairing.emplace(mod_reduce(e["t"].get<long>(), t.r), qseries_from_json(e["series"]));
        } else {
            if (!e.contains("w")) throw ParseError("class table: entry missing \"w\"");
            auto w = e["w"].get<std::vector<long>>();
            for (auto& x : w) x = mod_reduce(x, t.r);
            t.by_class.emplace(std::move(w), qseries_from_json(e["series"]));
        }
    }
    return t;
}

// ---- twisted Chern characters and reports ----

inline nlohmann::json chern_to_json(const TwistedChern& t) {
    nlohmann::json j;
    j["rank"] = rat_to_string(t.rank);
    std::vector<std::string> c1;
    for (const auto& c : t.c1) c1.push_back(rat_to_string(c));
    j["c1"] = c1;
    j["ch2"] = rat_to_string(t.ch2);
    return j;
}

inline TwistedChern chern_from_json(const nlohmann::json& j, const IntersectionLattice& lat) {
    for (const char* key : {"rank", "c1", "ch2"})
        if (!j.contains(key)) throw ParseError(std::string("chern character: missing key \"") + key + "\"");
    std::vector<Rat> c1;
    for (const auto& s : j["c1"]) c1.push_back(rat_from_string(s.get<std::string>()));
    return TwistedChern(lat, rat_from_string(j["rank"].get<std::string>()), std::move(c1),
                        rat_from_string(j["ch2"].get<std::string>()));
}

inline nlohmann::json c2min_report_to_json(const C2MinReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kSeriesSchemaVersion;
    j["r"] = rep.r;
    j["lower"] = rep.lower;
    if (rep.upper)
        j["upper"] = *rep.upper;
    else
        j["upper"] = "unknown";
    if (rep.delta) j["delta"] = *rep.delta;
    j["parity_case"] = rep.parity_case;
    j["provenance"] = provenance_name(rep.provenance);
    j["lower_source"] = rep.lower_source;
    j["upper_source"] = rep.upper_source;
    return j;
}

inline nlohmann::json load_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw ParseError(what + ": cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

} // namespace twistcalc
