#pragma once

#include <optional>
#include <string>

#include "twistcalc/errors.hpp"
#include "twistcalc/formulas.hpp"
#include "twistcalc/surface.hpp"

namespace twistcalc {

/// h^0(omega^r) = r(r-1)/2 K^2 + chi for a minimal surface of general type.
/// The tag gates the formula's validity domain.
inline long plurigenus(long r, long K2, long chi, bool minimal_general_type_tagged) {
    if (r < 2) throw DomainError("plurigenus: rank must be >= 2");
    if (!minimal_general_type_tagged)
        throw ValidationError("plurigenus: formula only valid for surfaces tagged minimal_general_type");
    return r * (r - 1) / 2 * K2 + chi;
}

/// max{r^2 chi - h^0(omega^r) - 1, 0}: the moduli-stack non-emptiness lower
/// bound for the minimal second Chern class.
inline long adj_lower(long r, long chi, long K2, bool minimal_general_type_tagged) {
    long h0 = plurigenus(r, K2, chi, minimal_general_type_tagged);
    long v = r * r * chi - h0 - 1;
    return v > 0 ? v : 0;
}

/// A certified nonzero coefficient in virtual dimension delta gives
/// c2_min <= delta + (r^2-1) chi.
inline long upper_from_delta(long r, long chi, long delta) { return delta + (r * r - 1) * chi; }

enum class BoundProvenance { Theorem, ConjectureGott, Expectation };

inline const char* provenance_name(BoundProvenance p) {
    switch (p) {
        case BoundProvenance::Theorem: return "THEOREM";
        case BoundProvenance::ConjectureGott: return "CONJECTURE-GOTT";
        case BoundProvenance::Expectation: return "EXPECTATION";
    }
    return "?";
}

struct C2MinReport {
    long r = 2;
    long lower = 0;
    std::optional<long> upper;        // empty: nonvanishing not certified below truncation
    std::optional<long> delta;        // leading virtual dimension used for the upper bound
    std::string parity_case;
    BoundProvenance provenance = BoundProvenance::Theorem;
    std::string lower_source = "Artin-de Jong non-emptiness bound";
    std::string upper_source;
};

/// The c2_min window for a minimal-general-type surface and a division
/// algebra of degree r represented by w. For r = 2 the upper bound is a
/// theorem; for r = 3 it is conditional on the rank-3 Donaldson structure
/// formula; for 4 <= r <= 6 only the heuristic expectation is emitted and
/// clearly flagged as such.
inline C2MinReport c2min_report(const SurfaceData& s, long r, const MuRClass& w) {
    if (r < 2 || r > 6) throw DomainError("c2min_report: rank must lie in [2, 6]");
    if (!s.has_tag(kTagMinimalGeneralType) || !s.has_tag(kTagH20Positive))
        throw ValidationError("c2min_report: surface must be tagged minimal_general_type and h20_positive");
    detail::require_valid_surface(s);
    detail::require_w_compatible(s, w, r);

    C2MinReport rep;
    rep.r = r;
    rep.lower = adj_lower(r, s.chi, static_cast<long>(s.k_squared()), true);

    long wk = pair_mod_r(s.lattice, s.canonical, w);
    int parity = donaldson_vd_parity(s, r, w);

    if (r >= 4) {
        rep.provenance = BoundProvenance::Expectation;
        rep.parity_case = (r % 2 == 0) ? "r even (blanket bound over both parities)" : "r odd";
        rep.upper = (r * r - 1) * s.chi + (r % 2 == 0 ? 1 : 0);
        rep.upper_source = std::string(provenance_name(rep.provenance)) +
                           ": positivity expectation for the leading Donaldson coefficient, not certified";
        return rep;
    }

    // closed-form upper bound, then cross-check against the actual leading
    // order of the Donaldson series at L = K, u = 0
    long closed_delta;
    if (r == 2) {
        closed_delta = (parity == 0) ? 0 : 1;
        rep.parity_case = (parity == 0) ? "wK + chi even" : "wK + chi odd";
        rep.provenance = BoundProvenance::Theorem;
    } else {
        closed_delta = 0;
        rep.parity_case = "wK = " + std::to_string(wk) + " mod 3, chi " + (s.chi % 2 == 0 ? "even" : "odd");
        rep.provenance = BoundProvenance::ConjectureGott;
    }

    try {
        ZSeries z = gott_donaldson(s, r, w, s.canonical, 0, 4);
        LeadingTerm lt = leading_term(z);
        rep.delta = lt.order;
        if (lt.order != closed_delta)
            throw ValidationError("c2min_report: leading order disagrees with the closed-form parity case");
        rep.upper = upper_from_delta(r, s.chi, lt.order);
        rep.upper_source = std::string(provenance_name(rep.provenance)) + ": leading term in virtual dimension " +
                           std::to_string(lt.order) + " is nonzero";
    } catch (const NoLeadingTerm&) {
        rep.upper_source = "nonvanishing not certified below truncation";
    }
    return rep;
}

} // namespace twistcalc
