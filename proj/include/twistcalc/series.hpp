#pragma once

#include <map>
#include <utility>
#include <vector>

#include "twistcalc/cyclo.hpp"
#include "twistcalc/errors.hpp"
#include "twistcalc/rational.hpp"

namespace twistcalc {

/// Truncated Laurent-Puiseux series in q with exponents in (1/denom) * Z.
///
/// Exponents are handled through their integer numerators. The window
/// [min_exp, trunc) is the range of numerators on which coefficients are
/// known exactly; min_exp is also a support bound (nothing lives below it),
/// which is what makes Laurent inversion and the truncation propagation
/// rule min(a.trunc + b.min_exp, b.trunc + a.min_exp) sound.
class QSeries {
  public:
    QSeries(long denom, long min_exp, long trunc) : denom_(denom), min_exp_(min_exp), trunc_(trunc) {
        if (denom_ < 1) throw DomainError("QSeries: denom must be >= 1");
    }

    static QSeries zero(long denom, long trunc) { return QSeries(denom, 0, trunc); }

    static QSeries one(long denom, long trunc) {
        QSeries s(denom, 0, trunc);
        s.set_coeff(0, CycloNumber(Rat(1)));
        return s;
    }

    static QSeries monomial(long denom, long num, CycloNumber c, long trunc) {
        QSeries s(denom, num, trunc);
        s.set_coeff(num, std::move(c));
        return s;
    }

    long denom() const { return denom_; }
    long min_exp() const { return min_exp_; }
    long trunc() const { return trunc_; }
    const std::map<long, CycloNumber>& terms() const { return coeffs_; }

    /// Coefficient of q^{num/denom}. Querying at or past the truncation
    /// bound is a contract violation, not a zero.
    CycloNumber coeff(long num) const {
        if (num >= trunc_) throw DomainError("QSeries: coefficient beyond truncation window");
        auto it = coeffs_.find(num);
        return it == coeffs_.end() ? CycloNumber() : it->second;
    }

    void set_coeff(long num, CycloNumber c) {
        if (num < min_exp_ || num >= trunc_) throw DomainError("QSeries: exponent outside [min_exp, trunc)");
        if (c.is_zero())
            coeffs_.erase(num);
        else
            coeffs_[num] = std::move(c);
    }

    bool is_zero() const { return coeffs_.empty(); }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        require_same_denom(a, b);
        QSeries out(a.denom_, std::min(a.min_exp_, b.min_exp_), std::min(a.trunc_, b.trunc_));
        for (const auto& [e, c] : a.coeffs_)
            if (e < out.trunc_) out.accumulate(e, c);
        for (const auto& [e, c] : b.coeffs_)
            if (e < out.trunc_) out.accumulate(e, c);
        return out;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (b * Rat(-1)); }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        require_same_denom(a, b);
        QSeries out(a.denom_, a.min_exp_ + b.min_exp_, std::min(a.trunc_ + b.min_exp_, b.trunc_ + a.min_exp_));
        for (const auto& [ea, ca] : a.coeffs_) {
            for (const auto& [eb, cb] : b.coeffs_) {
                long e = ea + eb;
                if (e >= out.trunc_) continue;
                out.accumulate(e, ca * cb);
            }
        }
        return out;
    }

    friend QSeries operator*(const QSeries& a, const CycloNumber& s) {
        QSeries out(a.denom_, a.min_exp_, a.trunc_);
        if (s.is_zero()) return out;
        for (const auto& [e, c] : a.coeffs_) out.accumulate(e, c * s);
        return out;
    }
    friend QSeries operator*(const QSeries& a, const Rat& s) { return a * CycloNumber(s); }

    /// Multiplicative inverse of a Laurent series whose lowest-order
    /// coefficient is nonzero, by the convolution recurrence.
    QSeries inverse() const {
        if (coeffs_.empty()) throw DomainError("QSeries: inverse of zero series");
        long v = coeffs_.begin()->first;
        CycloNumber lead_inv = coeffs_.begin()->second.inverse();
        long out_min = -v;
        long out_trunc = trunc_ - 2 * v;
        QSeries out(denom_, out_min, out_trunc);
        std::map<long, CycloNumber> b; // exponent -> coefficient of the inverse
        b[-v] = lead_inv;
        for (long k = -v + 1; k < out_trunc; ++k) {
            CycloNumber acc;
            for (const auto& [j, aj] : coeffs_) {
                if (j == v) continue;
                long need = k + v - j; // b-exponent paired with a_j
                if (need < -v || need >= k) continue;
                auto it = b.find(need);
                if (it == b.end()) continue;
                acc += aj * it->second;
            }
            if (!acc.is_zero()) b[k] = CycloNumber() - lead_inv * acc;
        }
        for (auto& [e, c] : b) out.set_coeff(e, std::move(c));
        return out;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        if (a.denom_ != b.denom_ || a.min_exp_ != b.min_exp_ || a.trunc_ != b.trunc_) return false;
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        auto it = b.coeffs_.begin();
        for (const auto& [e, c] : a.coeffs_) {
            if (it->first != e || !(it->second == c)) return false;
            ++it;
        }
        return true;
    }
    friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

    bool conjugation_fixed() const {
        for (const auto& [e, c] : coeffs_)
            if (!c.is_real()) return false;
        return true;
    }

  private:
    static void require_same_denom(const QSeries& a, const QSeries& b) {
        if (a.denom_ != b.denom_) throw MismatchError("QSeries: exponent denominators differ");
    }

    void accumulate(long e, const CycloNumber& c) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            if (!c.is_zero()) coeffs_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }

    long denom_;
    long min_exp_;
    long trunc_;
    std::map<long, CycloNumber> coeffs_;
};

/// a^n by square-and-multiply; negative n inverts first, which requires an
/// invertible lowest-order coefficient.
inline QSeries q_int_pow(const QSeries& a, long n) {
    if (n == 0) return QSeries::one(a.denom(), a.trunc() - a.min_exp());
    QSeries base = n < 0 ? a.inverse() : a;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1ul : static_cast<unsigned long>(n);
    QSeries acc = base;
    e -= 1;
    while (e > 0) {
        if (e & 1ul) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/// One factor of an infinite product: a positive exponent step (in q-power
/// numerators) and an integer exponent.
struct EtaFactor {
    Rat scale;     // exponent of q in each (1 - q^{n * scale}); denominator must divide denom
    long exponent; // power applied to every such binomial
};

/// prod over factors of prod_{n >= 1} (1 - q^{n * scale})^{exponent},
/// expanded exactly on [0, trunc). Each binomial is expanded with exact
/// integer binomial coefficients rather than by repeated multiplication.
inline QSeries eta_product(long denom, const std::vector<EtaFactor>& factors, long trunc) {
    QSeries acc = QSeries::one(denom, trunc);
    for (const auto& f : factors) {
        if (f.scale <= 0) throw DomainError("eta_product: scale must be positive");
        Rat step_q = f.scale * Rat(denom);
        if (step_q.get_den() != 1) throw MismatchError("eta_product: scale denominator must divide denom");
        long step = static_cast<long>(step_q.get_num().get_si());
        if (f.exponent == 0) continue;
        for (long n = 1; n * step < trunc; ++n) {
            long s = n * step;
            QSeries factor(denom, 0, trunc);
            if (f.exponent > 0) {
                for (long k = 0; k <= f.exponent && k * s < trunc; ++k) {
                    Int c = binomial(static_cast<unsigned long>(f.exponent), static_cast<unsigned long>(k));
                    if (k % 2 != 0) c = -c;
                    factor.set_coeff(k * s, CycloNumber(Rat(c)));
                }
            } else {
                long mexp = -f.exponent;
                for (long k = 0; k * s < trunc; ++k) {
                    Int c = binomial(static_cast<unsigned long>(mexp - 1 + k), static_cast<unsigned long>(k));
                    factor.set_coeff(k * s, CycloNumber(Rat(c)));
                }
            }
            acc = acc * factor;
        }
    }
    return acc;
}

/// Coefficients whose exponent numerator is congruent to residue mod denom,
/// in increasing exponent order.
inline std::vector<std::pair<long, CycloNumber>> extract_progression(const QSeries& a, long residue) {
    if (residue < 0 || residue >= a.denom()) throw DomainError("extract_progression: residue outside [0, denom)");
    std::vector<std::pair<long, CycloNumber>> out;
    for (const auto& [e, c] : a.terms()) {
        long m = ((e % a.denom()) + a.denom()) % a.denom();
        if (m == residue) out.emplace_back(e, c);
    }
    return out;
}

/// The sub-series supported on a single residue class of exponent numerators.
inline QSeries progression_part(const QSeries& a, long residue) {
    QSeries out(a.denom(), a.min_exp(), a.trunc());
    for (const auto& [e, c] : extract_progression(a, residue)) out.set_coeff(e, c);
    return out;
}

/// Polynomial in the formal variable u with cyclotomic coefficients.
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(CycloNumber constant) : c_{std::move(constant)} { trim(); }
    explicit UPoly(Rat constant) : UPoly(CycloNumber(std::move(constant))) {}
    explicit UPoly(std::vector<CycloNumber> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly variable() { return UPoly(std::vector<CycloNumber>{CycloNumber(), CycloNumber(Rat(1))}); }

    long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    CycloNumber coeff(long k) const {
        return (k < 0 || k >= static_cast<long>(c_.size())) ? CycloNumber() : c_[k];
    }
    const std::vector<CycloNumber>& coeffs() const { return c_; }

    UPoly truncated(long max_degree) const {
        if (degree() <= max_degree) return *this;
        std::vector<CycloNumber> out(c_.begin(), c_.begin() + (max_degree + 1));
        return UPoly(std::move(out));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<CycloNumber> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
        return UPoly(std::move(out));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<CycloNumber> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) - b.coeff(i);
        return UPoly(std::move(out));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<CycloNumber> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(out));
    }
    friend UPoly operator*(const UPoly& a, const CycloNumber& s) {
        std::vector<CycloNumber> out(a.c_);
        for (auto& c : out) c = c * s;
        return UPoly(std::move(out));
    }
    friend UPoly operator*(const UPoly& a, const Rat& s) { return a * CycloNumber(s); }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }

    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    bool conjugation_fixed() const {
        for (const auto& c : c_)
            if (!c.is_real()) return false;
        return true;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<CycloNumber> c_;
};

/// Truncated series in z whose coefficients are u-polynomials. Both the
/// maximal z-power and maximal u-degree are inclusive bounds.
class ZSeries {
  public:
    ZSeries(long z_trunc, long u_trunc)
        : z_trunc_(z_trunc), u_trunc_(u_trunc), coeffs_(static_cast<std::size_t>(z_trunc) + 1) {
        if (z_trunc < 0 || u_trunc < 0) throw DomainError("ZSeries: truncation orders must be >= 0");
    }

    static ZSeries one(long z_trunc, long u_trunc) {
        ZSeries s(z_trunc, u_trunc);
        s.coeffs_[0] = UPoly(Rat(1));
        return s;
    }

    /// exp(c * z^2) for a u-polynomial c; exact rational factorials.
    static ZSeries exp_quadratic(const UPoly& c, long z_trunc, long u_trunc) {
        ZSeries s(z_trunc, u_trunc);
        UPoly power(Rat(1));
        for (long k = 0; 2 * k <= z_trunc; ++k) {
            if (k > 0) power = (power * c).truncated(u_trunc);
            s.coeffs_[2 * k] = power * Rat(Int(1), factorial(static_cast<unsigned long>(k)));
        }
        return s;
    }

    /// exp(c * z) for a cyclotomic scalar c.
    static ZSeries exp_linear(const CycloNumber& c, long z_trunc, long u_trunc) {
        ZSeries s(z_trunc, u_trunc);
        CycloNumber power(Rat(1));
        for (long k = 0; k <= z_trunc; ++k) {
            if (k > 0) power = power * c;
            s.coeffs_[k] = UPoly(power * Rat(Int(1), factorial(static_cast<unsigned long>(k))));
        }
        return s;
    }

    long z_trunc() const { return z_trunc_; }
    long u_trunc() const { return u_trunc_; }
    const UPoly& coeff(long k) const {
        if (k < 0 || k > z_trunc_) throw DomainError("ZSeries: z-power outside truncation window");
        return coeffs_[k];
    }
    void set_coeff(long k, UPoly p) {
        if (k < 0 || k > z_trunc_) throw DomainError("ZSeries: z-power outside truncation window");
        coeffs_[k] = p.truncated(u_trunc_);
    }

    bool is_zero() const {
        for (const auto& p : coeffs_)
            if (!p.is_zero()) return false;
        return true;
    }

    friend ZSeries operator+(const ZSeries& a, const ZSeries& b) {
        require_compatible(a, b);
        ZSeries out(a.z_trunc_, a.u_trunc_);
        for (long k = 0; k <= a.z_trunc_; ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
        return out;
    }

    friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
        require_compatible(a, b);
        ZSeries out(a.z_trunc_, a.u_trunc_);
        for (long i = 0; i <= a.z_trunc_; ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (long j = 0; i + j <= a.z_trunc_; ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                out.coeffs_[i + j] += (a.coeffs_[i] * b.coeffs_[j]).truncated(a.u_trunc_);
            }
        }
        return out;
    }

    friend ZSeries operator*(const ZSeries& a, const CycloNumber& s) {
        ZSeries out(a.z_trunc_, a.u_trunc_);
        for (long k = 0; k <= a.z_trunc_; ++k) out.coeffs_[k] = a.coeffs_[k] * s;
        return out;
    }
    friend ZSeries operator*(const ZSeries& a, const Rat& s) { return a * CycloNumber(s); }

    friend bool operator==(const ZSeries& a, const ZSeries& b) {
        if (a.z_trunc_ != b.z_trunc_ || a.u_trunc_ != b.u_trunc_) return false;
        for (long k = 0; k <= a.z_trunc_; ++k)
            if (a.coeffs_[k] != b.coeffs_[k]) return false;
        return true;
    }
    friend bool operator!=(const ZSeries& a, const ZSeries& b) { return !(a == b); }

    bool conjugation_fixed() const {
        for (const auto& p : coeffs_)
            if (!p.conjugation_fixed()) return false;
        return true;
    }

  private:
    static void require_compatible(const ZSeries& a, const ZSeries& b) {
        if (a.z_trunc_ != b.z_trunc_ || a.u_trunc_ != b.u_trunc_)
            throw MismatchError("ZSeries: truncation windows differ");
    }

    long z_trunc_;
    long u_trunc_;
    std::vector<UPoly> coeffs_;
};

struct LeadingTerm {
    long order = 0;
    UPoly coefficient;
};

/// Least z-order with a nonzero coefficient.
inline LeadingTerm leading_term(const ZSeries& zs) {
    for (long k = 0; k <= zs.z_trunc(); ++k)
        if (!zs.coeff(k).is_zero()) return {k, zs.coeff(k)};
    throw NoLeadingTerm("ZSeries: no leading term below truncation");
}

} // namespace twistcalc
