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

/// Universal series D_0 and D_ij (1 <= i <= j <= r-1) entering the Euler
/// characteristic structure formula. Closed forms are not computed here;
/// the pack is caller-supplied input.
struct UniversalSeriesPack {
    long r = 2;
    QSeries d0;
    std::map<std::pair<long, long>, QSeries> dij; // keyed by (i, j) with i <= j

    UniversalSeriesPack(long r_, QSeries d0_) : r(r_), d0(std::move(d0_)) {}

    const QSeries& entry(long i, long j) const {
        if (i > j) std::swap(i, j);
        auto it = dij.find({i, j});
        if (it == dij.end()) throw MismatchError("UniversalSeriesPack: missing D_ij entry");
        return it->second;
    }
};

/// The pack with D_0 = D_ij = 1, the desk-check configuration.
inline UniversalSeriesPack unit_pack(long r, long trunc) {
    UniversalSeriesPack pack(r, QSeries::one(2 * r, trunc));
    for (long i = 1; i <= r - 1; ++i)
        for (long j = i; j <= r - 1; ++j) pack.dij.emplace(std::make_pair(i, j), QSeries::one(2 * r, trunc));
    return pack;
}

namespace detail {

inline void require_valid_surface(const SurfaceData& s) {
    auto violations = validate(s);
    if (!violations.empty()) throw ValidationError("surface invalid: " + violations.front());
}

inline void require_w_compatible(const SurfaceData& s, const MuRClass& w, long r) {
    if (w.r != r) throw MismatchError("w is reduced mod a different r");
    if (static_cast<long>(w.entries.size()) != s.lattice.rank)
        throw MismatchError("w length does not match lattice rank");
}

/// Iterates (r-1)-tuples of indices into the SW support, lexicographically.
struct AssignmentIter {
    long arity;
    long base;
    std::vector<long> idx;
    bool done;

    AssignmentIter(long arity_, long base_) : arity(arity_), base(base_), idx(arity_, 0), done(base_ == 0 && arity_ > 0) {}

    bool next() {
        for (long i = arity - 1; i >= 0; --i) {
            if (++idx[i] < base) return true;
            idx[i] = 0;
        }
        done = true;
        return false;
    }
};

} // namespace detail

/// The exponent-numerator residue mod 2r on which the twisted Euler
/// characteristic series is supported:
/// delta = -(r-1) w^2 - (r^2-1) chi mod 2r.
inline long euler_series_residue(const SurfaceData& s, long r, const MuRClass& w) {
    LatticeVector wl = w.lift();
    long wsq = pair(s.lattice, wl, wl);
    long delta = -(r - 1) * wsq - (static_cast<long>(r) * r - 1) * s.chi;
    return static_cast<long>(mod_reduce(delta, 2 * r));
}

/// Structure formula for the generating function of virtual Euler
/// characteristics of twisted-sheaf moduli:
///
///   r^(2+K^2-chi) * Delta(q^{1/r})^(-chi/2) * D0^(K^2)
///     * sum over (a_1..a_{r-1}) in the SW support of
///         prod_i eps_r^{i a_i.w} SW(a_i) * prod_{i<=j} D_ij^{a_i.a_j}
///
/// evaluated at denom 2r and restricted to the arithmetic progression of
/// meaningful exponents (the coefficient-of-q^{delta/2r} semantics).
inline QSeries gkl_euler_series(const SurfaceData& s, long r, const MuRClass& w, const UniversalSeriesPack& pack,
                                long trunc) {
    if (r < 2) throw DomainError("gkl_euler_series: rank must be >= 2");
    if (pack.r != r) throw MismatchError("gkl_euler_series: pack rank differs");
    detail::require_valid_surface(s);
    detail::require_w_compatible(s, w, r);

    long denom = 2 * r;
    long K2 = s.k_squared();
    CycloNumber eps = CycloNumber::root_of_unity(r, 1);

    // sum over tuples drawn from the SW support
    long base = static_cast<long>(s.sw_table.size());
    QSeries sw_sum = QSeries::zero(denom, trunc);
    detail::AssignmentIter it(r - 1, base);
    if (!it.done) {
        do {
            long eps_exp = 0;
            long sw_prod = 1;
            for (long i = 1; i <= r - 1; ++i) {
                const SWEntry& e = s.sw_table[it.idx[i - 1]];
                eps_exp = static_cast<long>(mod_reduce(eps_exp + i * pair_mod_r(s.lattice, e.a, w), r));
                sw_prod *= e.value;
            }
            if (sw_prod == 0) continue;
            QSeries term = QSeries::one(denom, trunc);
            for (long i = 1; i <= r - 1; ++i)
                for (long j = i; j <= r - 1; ++j) {
                    long e_ij = pair(s.lattice, s.sw_table[it.idx[i - 1]].a, s.sw_table[it.idx[j - 1]].a);
                    if (e_ij != 0) term = term * q_int_pow(pack.entry(i, j), static_cast<long>(e_ij));
                }
            sw_sum = sw_sum + term * (eps.pow(eps_exp) * Rat(sw_prod));
        } while (it.next());
    }

    QSeries prefactor = eta_product(denom, {{Rat(1, r), -12 * s.chi}}, trunc);
    prefactor = prefactor * q_int_pow(pack.d0, static_cast<long>(K2));
    Rat scale = rat_pow(Rat(r), 2 + static_cast<long>(K2) - s.chi);
    QSeries full = prefactor * sw_sum * scale;
    return progression_part(full, euler_series_residue(s, r, w));
}

/// Parity of every meaningful z-power of the Donaldson series: 0 for odd
/// rank; wK + chi mod 2 for even rank.
inline int donaldson_vd_parity(const SurfaceData& s, long r, const MuRClass& w) {
    if (r % 2 != 0) return 0;
    long wk = pair_mod_r(s.lattice, s.canonical, w);
    return static_cast<int>(mod_reduce(wk + s.chi, 2));
}

inline std::pair<ZSeries, ZSeries> split_parity(const ZSeries& zs, int parity) {
    ZSeries on(zs.z_trunc(), zs.u_trunc());
    ZSeries off(zs.z_trunc(), zs.u_trunc());
    for (long k = 0; k <= zs.z_trunc(); ++k) {
        if (zs.coeff(k).is_zero()) continue;
        if (k % 2 == parity)
            on.set_coeff(k, zs.coeff(k));
        else
            off.set_coeff(k, zs.coeff(k));
    }
    return {std::move(on), std::move(off)};
}

namespace detail {

/// SW(K - a) = (-1)^chi SW(a) for every class with a nonzero entry; when
/// this duality holds the rank-2 sum is parity-pure and the off-parity part
/// may be asserted to vanish.
inline bool sw_table_self_dual(const SurfaceData& s) {
    auto value_of = [&](const LatticeVector& a) -> long {
        for (const auto& e : s.sw_table)
            if (e.a == a) return e.value;
        return 0;
    };
    long sign = (s.chi % 2 == 0) ? 1 : -1;
    for (const auto& e : s.sw_table) {
        LatticeVector dual(e.a.size());
        for (std::size_t i = 0; i < e.a.size(); ++i) dual[i] = s.canonical[i] - e.a[i];
        if (value_of(dual) != sign * e.value) return false;
    }
    return true;
}

} // namespace detail

/// Witten-conjecture closed form (rank 2) for the Donaldson series with one
/// mu(point) insertion weight u:
///
///   2^(2-chi+K^2) e^{(L^2/2 + 2u) z^2}
///     * sum_a (-1)^{a.c1} SW(a) e^{-(2a-K).L z}
///
/// where the mod-2 data of c1 enters through w.
inline ZSeries gny_donaldson(const SurfaceData& s, const MuRClass& w, const LatticeVector& L, long u_degree,
                             long z_trunc) {
    detail::require_valid_surface(s);
    detail::require_w_compatible(s, w, 2);

    long K2 = s.k_squared();
    ZSeries sum(z_trunc, u_degree);
    for (const auto& e : s.sw_table) {
        if (e.value == 0) continue;
        long sign_exp = pair_mod_r(s.lattice, e.a, w);
        Rat weight = Rat(e.value) * (sign_exp % 2 == 0 ? 1 : -1);
        LatticeVector two_a_minus_k(e.a.size());
        for (std::size_t i = 0; i < e.a.size(); ++i) two_a_minus_k[i] = 2 * e.a[i] - s.canonical[i];
        CycloNumber c(Rat(-pair(s.lattice, two_a_minus_k, L)));
        sum = sum + ZSeries::exp_linear(c, z_trunc, u_degree) * weight;
    }

    UPoly quad(std::vector<CycloNumber>{CycloNumber(make_rational(pair(s.lattice, L, L), 2)), CycloNumber(Rat(2))});
    ZSeries out = ZSeries::exp_quadratic(quad, z_trunc, u_degree) * sum;
    out = out * rat_pow(Rat(2), 2 - s.chi + static_cast<long>(K2));

    if (!out.conjugation_fixed()) throw ValidationError("gny_donaldson: output not conjugation-fixed");
    if (detail::sw_table_self_dual(s)) {
        auto [on, off] = split_parity(out, donaldson_vd_parity(s, 2, w));
        if (!off.is_zero()) throw ValidationError("gny_donaldson: off-parity coefficients survived a self-dual table");
    }
    return out;
}

/// Marino-Moore/Gottsche closed form for the rank-r Donaldson series:
///
///   r^(2-chi) B^(K^2) e^{(L^2/2 + ru) z^2}
///     * sum over (a_1..a_{r-1}) of
///         prod_i eps_r^{i a_i.w} SW(a_i) e^{-sin(i pi/r)(2a_i-K).L z}
///         * prod_{i<j} beta_ij^{(2a_i-K).(a_j-a_i)}
///
/// with all cyclotomic arithmetic at conductor 4r.
inline ZSeries gott_donaldson(const SurfaceData& s, long r, const MuRClass& w, const LatticeVector& L, long u_degree,
                              long z_trunc) {
    if (r < 2) throw DomainError("gott_donaldson: rank must be >= 2");
    detail::require_valid_surface(s);
    detail::require_w_compatible(s, w, r);

    long K2 = s.k_squared();
    CycloNumber eps = primitive_root(r, 4 * r);

    std::vector<CycloNumber> sin_table(r); // sin(i pi / r) = sin(2i pi / 2r)
    for (long i = 1; i <= r - 1; ++i) sin_table[i] = detail::sin_half_angle(r, 2 * i);
    std::map<std::pair<long, long>, CycloNumber> beta_table;
    for (long i = 1; i <= r - 1; ++i)
        for (long j = i + 1; j <= r - 1; ++j) beta_table.emplace(std::make_pair(i, j), beta(r, i, j));

    long base = static_cast<long>(s.sw_table.size());
    ZSeries sum(z_trunc, u_degree);
    detail::AssignmentIter it(r - 1, base);
    if (!it.done) {
        do {
            long eps_exp = 0;
            long sw_prod = 1;
            CycloNumber lin; // coefficient of z in the combined exponential
            for (long i = 1; i <= r - 1; ++i) {
                const SWEntry& e = s.sw_table[it.idx[i - 1]];
                eps_exp = static_cast<long>(mod_reduce(eps_exp + i * pair_mod_r(s.lattice, e.a, w), r));
                sw_prod *= e.value;
                LatticeVector two_a_minus_k(e.a.size());
                for (std::size_t k = 0; k < e.a.size(); ++k) two_a_minus_k[k] = 2 * e.a[k] - s.canonical[k];
                lin -= sin_table[i] * Rat(pair(s.lattice, two_a_minus_k, L));
            }
            if (sw_prod == 0) continue;
            CycloNumber scalar = eps.pow(eps_exp) * Rat(sw_prod);
            for (long i = 1; i <= r - 1; ++i)
                for (long j = i + 1; j <= r - 1; ++j) {
                    const SWEntry& ei = s.sw_table[it.idx[i - 1]];
                    const SWEntry& ej = s.sw_table[it.idx[j - 1]];
                    LatticeVector two_ai_minus_k(ei.a.size()), aj_minus_ai(ei.a.size());
                    for (std::size_t k = 0; k < ei.a.size(); ++k) {
                        two_ai_minus_k[k] = 2 * ei.a[k] - s.canonical[k];
                        aj_minus_ai[k] = ej.a[k] - ei.a[k];
                    }
                    long e_ij = pair(s.lattice, two_ai_minus_k, aj_minus_ai);
                    if (e_ij != 0) scalar *= beta_table.at({i, j}).pow(static_cast<long>(e_ij));
                }
            sum = sum + ZSeries::exp_linear(lin, z_trunc, u_degree) * scalar;
        } while (it.next());
    }

    UPoly quad(std::vector<CycloNumber>{CycloNumber(make_rational(pair(s.lattice, L, L), 2)), CycloNumber(Rat(r))});
    ZSeries out = ZSeries::exp_quadratic(quad, z_trunc, u_degree) * sum;
    out = out * (b_constant(r).pow(static_cast<long>(K2)) * rat_pow(Rat(r), 2 - s.chi));

    if (!out.conjugation_fixed()) throw ValidationError("gott_donaldson: output not conjugation-fixed");
    if (r == 2 && detail::sw_table_self_dual(s)) {
        auto [on, off] = split_parity(out, donaldson_vd_parity(s, r, w));
        if (!off.is_zero()) throw ValidationError("gott_donaldson: off-parity coefficients survived a self-dual table");
    }
    return out;
}

} // namespace twistcalc
