#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "twistcalc/errors.hpp"
#include "twistcalc/rational.hpp"

namespace twistcalc {

namespace detail {

inline long euler_totient(long m) {
    long phi = m;
    long n = m;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            phi -= phi / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) phi -= phi / n;
    return phi;
}

// Dense integer polynomials, lowest degree first.
using IPoly = std::vector<Int>;

inline IPoly ipoly_trim(IPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

// Exact quotient; remainders are known to vanish when dividing x^m - 1 by
// products of cyclotomic polynomials.
inline IPoly ipoly_exact_div(IPoly num, const IPoly& den) {
    num = ipoly_trim(std::move(num));
    IPoly d = ipoly_trim(den);
    if (d.empty()) throw DomainError("ipoly_exact_div: zero divisor");
    if (num.size() < d.size()) throw DomainError("ipoly_exact_div: degree underflow");
    IPoly q(num.size() - d.size() + 1, Int(0));
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        Int c = num[i + d.size() - 1] / d.back();
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < d.size(); ++j) num[i + j] -= c * d[j];
    }
    for (const Int& c : num)
        if (c != 0) throw DomainError("ipoly_exact_div: division not exact");
    return q;
}

// m-th cyclotomic polynomial: (x^m - 1) / prod_{d | m, d < m} Phi_d.
inline IPoly cyclotomic_ipoly(long m, std::map<long, IPoly>& memo) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    IPoly num(m + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        num = ipoly_exact_div(std::move(num), cyclotomic_ipoly(d, memo));
    }
    memo.emplace(m, num);
    return num;
}

// Per-conductor data shared by every CycloNumber at that conductor.
struct CycloTable {
    long m = 1;
    long phi = 1;
    IPoly min_poly;                         // Phi_m, monic, degree phi
    std::vector<std::vector<Rat>> powers;   // zeta^t reduced mod Phi_m, t in [0, extent)
};

inline const CycloTable& cyclo_table(long m) {
    if (m < 1) throw DomainError("conductor must be >= 1");
    static std::map<long, CycloTable> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    CycloTable t;
    t.m = m;
    t.phi = euler_totient(m);
    static std::map<long, IPoly> poly_memo;
    t.min_poly = cyclotomic_ipoly(m, poly_memo);

    // zeta^{t+1} = shift(zeta^t) reduced against the monic minimal polynomial.
    long extent = std::max<long>(2 * t.phi - 1, m);
    t.powers.reserve(extent);
    std::vector<Rat> cur(t.phi, Rat(0));
    cur[0] = 1;
    t.powers.push_back(cur);
    for (long e = 1; e < extent; ++e) {
        Rat top = cur[t.phi - 1];
        for (long i = t.phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (long i = 0; i < t.phi; ++i) cur[i] -= top * Rat(t.min_poly[i]);
        t.powers.push_back(cur);
    }
    return cache.emplace(m, std::move(t)).first->second;
}

} // namespace detail

/// An exact element of the cyclotomic field Q(zeta_m), stored as a rational
/// coefficient vector of length phi(m) in the power basis 1, zeta, ...,
/// zeta^{phi(m)-1} reduced modulo the m-th cyclotomic polynomial.
///
/// Arithmetic between different conductors lifts both operands into
/// Q(zeta_lcm) first, so values from separate constructions mix freely.
class CycloNumber {
  public:
    CycloNumber() : m_(1), coeffs_(1, Rat(0)) {}

    explicit CycloNumber(Rat value) : m_(1), coeffs_(1, std::move(value)) {}
    explicit CycloNumber(long value) : CycloNumber(Rat(value)) {}

    CycloNumber(long conductor, std::vector<Rat> coeffs) : m_(conductor), coeffs_(std::move(coeffs)) {
        const auto& t = detail::cyclo_table(m_);
        if (static_cast<long>(coeffs_.size()) != t.phi)
            throw MismatchError("CycloNumber: coefficient vector length must equal phi(conductor)");
    }

    /// zeta_m^k, reduced mod Phi_m. The result has multiplicative order
    /// m / gcd(m, k).
    static CycloNumber root_of_unity(long m, long k) {
        const auto& t = detail::cyclo_table(m);
        long e = ((k % m) + m) % m;
        return CycloNumber(m, t.powers[e]);
    }

    long conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    Rat rational_value() const {
        if (!is_rational()) throw DomainError("CycloNumber: not rational");
        return coeffs_[0];
    }

    /// Image of zeta -> zeta^{-1} (complex conjugation on every embedding).
    CycloNumber conjugate() const {
        const auto& t = detail::cyclo_table(m_);
        std::vector<Rat> out(t.phi, Rat(0));
        for (long k = 0; k < t.phi; ++k) {
            if (coeffs_[k] == 0) continue;
            const auto& pw = t.powers[(m_ - k) % m_];
            for (long i = 0; i < t.phi; ++i) out[i] += coeffs_[k] * pw[i];
        }
        return CycloNumber(m_, std::move(out));
    }

    bool is_real() const { return *this == conjugate(); }

    /// Re-express at a conductor that m divides.
    CycloNumber lifted_to(long target) const {
        if (target == m_) return *this;
        if (target % m_ != 0) throw MismatchError("CycloNumber: conductor does not divide lift target");
        const auto& t = detail::cyclo_table(target);
        long step = target / m_;
        std::vector<Rat> out(t.phi, Rat(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            const auto& pw = t.powers[(static_cast<long>(k) * step) % target];
            for (long i = 0; i < t.phi; ++i) out[i] += coeffs_[k] * pw[i];
        }
        return CycloNumber(target, std::move(out));
    }

    friend CycloNumber operator-(const CycloNumber& a) {
        std::vector<Rat> out(a.coeffs_);
        for (Rat& c : out) c = -c;
        return CycloNumber(a.m_, std::move(out));
    }

    friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
        auto [x, y] = common(a, b);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
        return x;
    }

    friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
        auto [x, y] = common(a, b);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= y.coeffs_[i];
        return x;
    }

    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
        auto [x, y] = common(a, b);
        const auto& t = detail::cyclo_table(x.m_);
        std::vector<Rat> out(t.phi, Rat(0));
        for (long i = 0; i < t.phi; ++i) {
            if (x.coeffs_[i] == 0) continue;
            for (long j = 0; j < t.phi; ++j) {
                if (y.coeffs_[j] == 0) continue;
                Rat c = x.coeffs_[i] * y.coeffs_[j];
                long e = i + j;
                if (e < t.phi) {
                    out[e] += c;
                } else {
                    const auto& pw = t.powers[e];
                    for (long k = 0; k < t.phi; ++k) out[k] += c * pw[k];
                }
            }
        }
        return CycloNumber(x.m_, std::move(out));
    }

    friend CycloNumber operator*(const CycloNumber& a, const Rat& s) {
        std::vector<Rat> out(a.coeffs_);
        for (Rat& c : out) c *= s;
        return CycloNumber(a.m_, std::move(out));
    }
    friend CycloNumber operator*(const Rat& s, const CycloNumber& a) { return a * s; }

    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

    /// Field inverse via the extended Euclidean algorithm against Phi_m,
    /// which is irreducible over Q, so every nonzero element is a unit.
    CycloNumber inverse() const {
        if (is_zero()) throw DomainError("CycloNumber: inverse of zero");
        const auto& t = detail::cyclo_table(m_);
        using QPoly = std::vector<Rat>;
        auto trim = [](QPoly p) {
            while (!p.empty() && p.back() == 0) p.pop_back();
            return p;
        };
        QPoly r0(t.min_poly.size());
        for (std::size_t i = 0; i < t.min_poly.size(); ++i) r0[i] = Rat(t.min_poly[i]);
        QPoly r1 = trim(coeffs_);
        QPoly s0{}, s1{Rat(1)};
        while (r1.size() > 1) {
            // divide r0 by r1; keep quotient for the Bezout update
            QPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rat(0));
            QPoly rem = r0;
            for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
                if (static_cast<std::size_t>(i) + r1.size() - 1 >= rem.size()) continue;
                Rat c = rem[i + r1.size() - 1] / r1.back();
                q[i] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < r1.size(); ++j) rem[i + j] -= c * r1[j];
            }
            rem = trim(std::move(rem));
            // s_next = s0 - q * s1
            QPoly snext(std::max(s0.size(), q.size() + s1.size() > 0 ? q.size() + s1.size() - 1 : 0), Rat(0));
            for (std::size_t i = 0; i < s0.size(); ++i) snext[i] += s0[i];
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (std::size_t j = 0; j < s1.size(); ++j) snext[i + j] -= q[i] * s1[j];
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = trim(std::move(snext));
        }
        if (r1.empty()) throw DomainError("CycloNumber: inverse hit a zero remainder");
        Rat unit = r1[0];
        std::vector<Rat> out(t.phi, Rat(0));
        for (std::size_t i = 0; i < s1.size() && i < out.size(); ++i) out[i] = s1[i] / unit;
        return CycloNumber(m_, std::move(out));
    }

    CycloNumber pow(long n) const {
        if (n == 0) return CycloNumber(Rat(1)).lifted_to(m_);
        CycloNumber base = n < 0 ? inverse() : *this;
        unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1ul : static_cast<unsigned long>(n);
        CycloNumber acc(Rat(1));
        acc = acc.lifted_to(m_);
        while (e > 0) {
            if (e & 1ul) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
        auto [x, y] = common(a, b);
        return x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

    /// Numerical embedding at zeta_m = exp(2 pi i / m). Non-authoritative.
    std::complex<double> embed() const {
        std::complex<double> acc(0.0, 0.0);
        const double tau = 2.0 * 3.141592653589793238462643383279502884;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            double arg = tau * static_cast<double>(k) / static_cast<double>(m_);
            acc += coeffs_[k].get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return acc;
    }
    double embed_real() const { return embed().real(); }

  private:
    static std::pair<CycloNumber, CycloNumber> common(const CycloNumber& a, const CycloNumber& b) {
        if (a.m_ == b.m_) return {a, b};
        long l = std::lcm(a.m_, b.m_);
        return {a.lifted_to(l), b.lifted_to(l)};
    }

    long m_;
    std::vector<Rat> coeffs_;
};

/// exp(2 pi i / r) represented at the given conductor (a multiple of r).
inline CycloNumber primitive_root(long r, long conductor) {
    if (conductor % r != 0) throw MismatchError("primitive_root: conductor must be a multiple of r");
    return CycloNumber::root_of_unity(conductor, conductor / r);
}

namespace detail {
// sin(k pi / 2r) inside Q(zeta_4r): zeta_4r^k = exp(i k pi / 2r) and
// i = zeta_4r^r, so the value is (zeta^k - zeta^-k) / (2 zeta^r).
inline CycloNumber sin_half_angle(long r, long k) {
    long m = 4 * r;
    CycloNumber num = CycloNumber::root_of_unity(m, k) - CycloNumber::root_of_unity(m, -k);
    CycloNumber two_i = CycloNumber::root_of_unity(m, r) * Rat(2);
    return num * two_i.inverse();
}
} // namespace detail

/// Exact algebraic sin(k pi / denom), represented at conductor 4 * denom.
inline CycloNumber sin_of(long k, long denom) {
    if (denom < 1) throw DomainError("sin_of: denominator must be >= 1");
    return detail::sin_half_angle(denom, 2 * k);
}

/// sin((i+j) pi / 2r) / sin((j-i) pi / 2r), the Marino-Moore sine ratio,
/// extended symmetrically to i > j. Exact in Q(zeta_4r).
inline CycloNumber beta(long r, long i, long j) {
    if (r < 2) throw DomainError("beta: rank must be >= 2");
    if (i == j) throw DomainError("beta: i = j gives sin(0) in the denominator");
    if (i < 1 || j < 1 || i > r - 1 || j > r - 1) throw DomainError("beta: indices must lie in [1, r-1]");
    if (i > j) std::swap(i, j);
    CycloNumber num = detail::sin_half_angle(r, i + j);
    CycloNumber den = detail::sin_half_angle(r, j - i);
    return num * den.inverse();
}

/// Sum over subsets I of {1..r-1} of prod_{i in I, j not in I} beta_ij.
inline CycloNumber b_constant(long r) {
    if (r < 2) throw DomainError("b_constant: rank must be >= 2");
    long n = r - 1;
    std::vector<std::vector<CycloNumber>> bij(n + 1, std::vector<CycloNumber>(n + 1));
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= n; ++j)
            if (i != j) bij[i][j] = beta(r, i, j);
    CycloNumber total(Rat(0));
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        CycloNumber prod(Rat(1));
        for (long i = 1; i <= n; ++i) {
            if (!(mask >> (i - 1) & 1ul)) continue;
            for (long j = 1; j <= n; ++j) {
                if (mask >> (j - 1) & 1ul) continue;
                prod = prod * bij[i][j];
            }
        }
        total += prod;
    }
    return total;
}

} // namespace twistcalc
