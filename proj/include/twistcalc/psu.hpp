#pragma once

#include <map>
#include <utility>
#include <vector>

#include "twistcalc/cyclo.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/lattice.hpp"
#include "twistcalc/series.hpp"
#include "twistcalc/surface.hpp"

namespace twistcalc {

/// Per-class partition functions, keyed either by the full mod-r class w or
/// by the collapsed key w.K mod r (sufficient when the summand factors
/// through that pairing, e.g. for minimal general type).
struct ClassSeriesTable {
    long r = 2;
    bool collapsed = false;
    std::map<std::vector<long>, QSeries> by_class; // full keys, entries reduced mod r
    std::map<long, QSeries> by_pairing;            // collapsed keys in [0, r)

    const QSeries& lookup(const SurfaceData& s, const MuRClass& w) const {
        if (collapsed) {
            long t = pair_mod_r(s.lattice, s.canonical, w);
            auto it = by_pairing.find(t);
            if (it == by_pairing.end()) throw MismatchError("ClassSeriesTable: missing collapsed key");
            return it->second;
        }
        auto it = by_class.find(w.entries);
        if (it == by_class.end()) throw MismatchError("ClassSeriesTable: missing class key");
        return it->second;
    }
};

/// Weighted sum over every class: sum_w eps_r^{c1.w} table[w].
inline QSeries psu_bruteforce(const SurfaceData& s, long r, const LatticeVector& c1, const ClassSeriesTable& table,
                              long budget = kDefaultEnumerationBudget) {
    if (table.r != r) throw MismatchError("psu_bruteforce: table rank differs");
    auto classes = enumerate_mu_r(s.lattice, r, budget);
    CycloNumber eps = CycloNumber::root_of_unity(r, 1);
    QSeries acc = table.lookup(s, classes.front()) * Rat(0);
    for (const auto& w : classes) {
        long e = pair_mod_r(s.lattice, c1, w);
        acc = acc + table.lookup(s, w) * eps.pow(e);
    }
    return acc;
}

/// The same sum collapsed through the two functionals c1.w and K.w:
/// sum_{s,t} N(s,t) eps_r^s table[t], with N from character_counts.
inline QSeries psu_reduced(const SurfaceData& s, long r, const LatticeVector& c1, const ClassSeriesTable& table) {
    if (table.r != r) throw MismatchError("psu_reduced: table rank differs");
    if (!table.collapsed) throw MismatchError("psu_reduced: table must be keyed by w.K mod r");
    for (long t = 0; t < r; ++t)
        if (table.by_pairing.find(t) == table.by_pairing.end())
            throw MismatchError("psu_reduced: collapsed table incomplete");
    auto counts = character_counts(s.lattice, r, c1, s.canonical);
    CycloNumber eps = CycloNumber::root_of_unity(r, 1);
    QSeries acc = table.by_pairing.begin()->second * Rat(0);
    for (const auto& [key, n] : counts) {
        const auto& [cs, t] = key;
        acc = acc + table.by_pairing.at(t) * (eps.pow(cs) * Rat(n));
    }
    return acc;
}

} // namespace twistcalc
