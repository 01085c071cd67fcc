#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twistcalc/errors.hpp"
#include "twistcalc/lattice.hpp"
#include "twistcalc/rational.hpp"

namespace twistcalc {

inline Rat pair_rational(const IntersectionLattice& L, const std::vector<Rat>& x, const std::vector<Rat>& y) {
    if (static_cast<long>(x.size()) != L.rank || static_cast<long>(y.size()) != L.rank)
        throw MismatchError("pair_rational: vector length does not match lattice rank");
    Rat acc(0);
    for (long i = 0; i < L.rank; ++i) {
        if (x[i] == 0) continue;
        Rat row(0);
        for (long j = 0; j < L.rank; ++j) row += Rat(L.entry(i, j)) * y[j];
        acc += x[i] * row;
    }
    return acc;
}

inline std::vector<Rat> to_rational_vector(const LatticeVector& v) {
    std::vector<Rat> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(static_cast<long>(v[i]));
    return out;
}

/// An element of H^0 + H^2 + H^4 of a surface with rational coefficients:
/// (rank, degree-2 class, point-class coefficient). The point-class part is
/// stored directly, so c2 = c1^2/2 - ch2 is derived, never stored.
struct TwistedChern {
    IntersectionLattice lattice;
    Rat rank = 0;
    std::vector<Rat> c1;
    Rat ch2 = 0;

    TwistedChern() = default;
    TwistedChern(IntersectionLattice lat, Rat r, std::vector<Rat> c, Rat p)
        : lattice(std::move(lat)), rank(std::move(r)), c1(std::move(c)), ch2(std::move(p)) {
        if (static_cast<long>(c1.size()) != lattice.rank)
            throw MismatchError("TwistedChern: c1 length does not match lattice rank");
    }

    static TwistedChern unit(const IntersectionLattice& lat) {
        return TwistedChern(lat, Rat(1), std::vector<Rat>(lat.rank, Rat(0)), Rat(0));
    }

    friend bool operator==(const TwistedChern& a, const TwistedChern& b) {
        return a.lattice == b.lattice && a.rank == b.rank && a.c1 == b.c1 && a.ch2 == b.ch2;
    }
    friend bool operator!=(const TwistedChern& a, const TwistedChern& b) { return !(a == b); }
};

/// Cup product on a surface: degree-2 classes pair into the point class.
inline TwistedChern cup(const TwistedChern& a, const TwistedChern& b) {
    if (a.lattice != b.lattice) throw MismatchError("cup: ambient lattices differ");
    std::vector<Rat> c1(a.c1.size());
    for (std::size_t i = 0; i < c1.size(); ++i) c1[i] = a.rank * b.c1[i] + b.rank * a.c1[i];
    Rat ch2 = a.rank * b.ch2 + b.rank * a.ch2 + pair_rational(a.lattice, a.c1, b.c1);
    return TwistedChern(a.lattice, a.rank * b.rank, std::move(c1), std::move(ch2));
}

/// exp of a degree-2 class, truncated in surface degree:
/// (1, v, v^2/2).
inline TwistedChern exp_degree2(const IntersectionLattice& lat, const std::vector<Rat>& v) {
    return TwistedChern(lat, Rat(1), v, pair_rational(lat, v, v) / 2);
}

/// Square root with positive rational rank, solved degree by degree.
/// Callers only ever need this for endomorphism characters, whose rank is a
/// perfect square.
inline TwistedChern sqrt_unit(const TwistedChern& a) {
    if (a.rank <= 0) throw DomainError("sqrt_unit: rank must be positive");
    Int num_root, den_root;
    if (mpz_root(num_root.get_mpz_t(), a.rank.get_num().get_mpz_t(), 2) == 0)
        throw DomainError("sqrt_unit: rank numerator is not a perfect square");
    if (mpz_root(den_root.get_mpz_t(), a.rank.get_den().get_mpz_t(), 2) == 0)
        throw DomainError("sqrt_unit: rank denominator is not a perfect square");
    Rat r(num_root, den_root);
    std::vector<Rat> c1(a.c1.size());
    for (std::size_t i = 0; i < c1.size(); ++i) c1[i] = a.c1[i] / (2 * r);
    Rat ch2 = (a.ch2 - pair_rational(a.lattice, c1, c1)) / (2 * r);
    return TwistedChern(a.lattice, r, std::move(c1), std::move(ch2));
}

/// Cup-product inverse of a unit (nonzero rank), degree by degree.
inline TwistedChern cup_inverse(const TwistedChern& a) {
    if (a.rank == 0) throw DomainError("cup_inverse: rank is zero");
    Rat r = Rat(1) / a.rank;
    std::vector<Rat> c1(a.c1.size());
    for (std::size_t i = 0; i < c1.size(); ++i) c1[i] = -a.c1[i] / (a.rank * a.rank);
    // solve a.rank * ch2 + r * a.ch2 + <a.c1, c1> = 0
    Rat ch2 = -(r * a.ch2 + pair_rational(a.lattice, a.c1, c1)) / a.rank;
    return TwistedChern(a.lattice, std::move(r), std::move(c1), std::move(ch2));
}

/// Character of a module twisted by the rational B-field xi/r:
/// e^{xi/r} * ch_F / sqrt(ch_A).
inline TwistedChern twisted_character(const TwistedChern& ch_F, const TwistedChern& ch_A, const LatticeVector& xi,
                                      long r) {
    if (r < 1) throw DomainError("twisted_character: r must be >= 1");
    std::vector<Rat> shift = to_rational_vector(xi);
    for (auto& c : shift) c /= r;
    TwistedChern tw = exp_degree2(ch_F.lattice, shift);
    return cup(cup(tw, ch_F), cup_inverse(sqrt_unit(ch_A)));
}

struct IntegralityReport {
    bool c1_integral = false;
    bool c2_integral = false;
    Rat c2;
    std::vector<std::string> violations;
    bool pass() const { return c1_integral && c2_integral; }
};

/// Necessary integrality of a B-field-twisted character: c1 integral and
/// c2 = c1^2/2 - ch2 integral. A pass does not certify realizability.
inline IntegralityReport integrality_check(const TwistedChern& t, long r) {
    (void)r;
    IntegralityReport rep;
    if (t.rank.get_den() != 1) rep.violations.push_back("rank is not an integer");
    rep.c1_integral = true;
    for (const auto& c : t.c1)
        if (c.get_den() != 1) rep.c1_integral = false;
    if (!rep.c1_integral) rep.violations.push_back("c1 is not an integral class");
    rep.c2 = pair_rational(t.lattice, t.c1, t.c1) / 2 - t.ch2;
    rep.c2_integral = rep.c2.get_den() == 1;
    if (!rep.c2_integral) rep.violations.push_back("c2 = c1^2/2 - ch2 is not an integer");
    return rep;
}

/// Expected dimension 2 r c2 - (r-1) c1^2 - (r^2-1) chi of the moduli space.
inline Rat virtual_dimension(long r, long c1sq, const Rat& c2, long chi) {
    if (r < 1) throw DomainError("virtual_dimension: rank must be >= 1");
    return Rat(2 * r) * c2 - Rat((r - 1)) * Rat(c1sq) - Rat(r * r - 1) * Rat(chi);
}

/// Replacing the B-field lift xi by xi + r*gamma shifts c2 by
/// (r-1) gamma.xi + r(r-1)/2 gamma^2, leaving vd unchanged.
inline std::pair<LatticeVector, Rat> shift_bfield(const IntersectionLattice& L, long r, const LatticeVector& xi,
                                                  const LatticeVector& gamma, const Rat& c2) {
    LatticeVector xi_new(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) xi_new[i] = xi[i] + r * gamma[i];
    long gx = pair(L, gamma, xi);
    long gg = pair(L, gamma, gamma);
    Rat c2_new = c2 + Rat(r - 1) * Rat(gx) + Rat(r * (r - 1)) * Rat(gg) / 2;
    return {std::move(xi_new), std::move(c2_new)};
}

/// Second Chern class of the endomorphism algebra of a rank-one module:
/// 2 r c2 - (r-1) c1^2.
inline long c2_of_endomorphism(long r, long c1sq, long c2) {
    return 2 * r * c2 - (r - 1) * c1sq;
}

} // namespace twistcalc
