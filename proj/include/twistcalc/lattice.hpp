#pragma once

#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "twistcalc/errors.hpp"
#include "twistcalc/rational.hpp"

namespace twistcalc {

using LatticeVector = std::vector<long>;

/// The degree-2 integral cohomology of a surface, reduced to what the
/// closed formulas consume: a rank and a symmetric Gram matrix.
struct IntersectionLattice {
    long rank = 0;
    std::vector<long> gram; // row-major rank x rank, symmetric

    IntersectionLattice() = default;
    IntersectionLattice(long rank_, std::vector<long> gram_) : rank(rank_), gram(std::move(gram_)) {
        if (static_cast<long>(gram.size()) != rank * rank)
            throw MismatchError("IntersectionLattice: gram size must be rank^2");
        for (long i = 0; i < rank; ++i)
            for (long j = 0; j < i; ++j)
                if (entry(i, j) != entry(j, i)) throw ValidationError("IntersectionLattice: gram not symmetric");
    }

    long entry(long i, long j) const { return gram[i * rank + j]; }

    friend bool operator==(const IntersectionLattice& a, const IntersectionLattice& b) {
        return a.rank == b.rank && a.gram == b.gram;
    }
    friend bool operator!=(const IntersectionLattice& a, const IntersectionLattice& b) { return !(a == b); }
};

/// x^T gram y.
inline long pair(const IntersectionLattice& L, const LatticeVector& x, const LatticeVector& y) {
    if (static_cast<long>(x.size()) != L.rank || static_cast<long>(y.size()) != L.rank)
        throw MismatchError("pair: vector length does not match lattice rank");
    long acc = 0;
    for (long i = 0; i < L.rank; ++i) {
        if (x[i] == 0) continue;
        long row = 0;
        for (long j = 0; j < L.rank; ++j) row += L.entry(i, j) * y[j];
        acc += x[i] * row;
    }
    return acc;
}

/// Wu's relation x.x = x.K mod 2 for all x, checked on the basis (which
/// suffices by bilinearity mod 2).
inline bool is_characteristic(const IntersectionLattice& L, const LatticeVector& K) {
    if (static_cast<long>(K.size()) != L.rank) throw MismatchError("is_characteristic: length mismatch");
    for (long i = 0; i < L.rank; ++i) {
        long diag = L.entry(i, i);
        long pairing = 0;
        for (long j = 0; j < L.rank; ++j) pairing += L.entry(i, j) * K[j];
        if (((diag - pairing) % 2 + 2) % 2 != 0) return false;
    }
    return true;
}

/// A class in H^2 with mu_r coefficients: an integer vector mod r.
struct MuRClass {
    long r = 1;
    std::vector<long> entries;

    MuRClass() = default;
    MuRClass(long r_, std::vector<long> entries_) : r(r_), entries(std::move(entries_)) {
        if (r < 1) throw DomainError("MuRClass: modulus must be >= 1");
        for (auto& e : entries) e = ((e % r) + r) % r;
    }

    /// The obvious integral lift with entries in [0, r).
    LatticeVector lift() const {
        LatticeVector v(entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) v[i] = entries[i];
        return v;
    }

    friend bool operator==(const MuRClass& a, const MuRClass& b) { return a.r == b.r && a.entries == b.entries; }
    friend bool operator<(const MuRClass& a, const MuRClass& b) {
        return a.r != b.r ? a.r < b.r : a.entries < b.entries;
    }
};

/// Pairing of an integral class with a mod-r class, reduced mod r.
inline long pair_mod_r(const IntersectionLattice& L, const LatticeVector& x, const MuRClass& w) {
    long p = pair(L, x, w.lift());
    return static_cast<long>(((p % w.r) + w.r) % w.r);
}

constexpr long kDefaultEnumerationBudget = 1000000;

/// All r^rank classes, in lexicographic order. Refuses when the count
/// exceeds the budget; large lattices must go through character_counts.
inline std::vector<MuRClass> enumerate_mu_r(const IntersectionLattice& L, long r,
                                            long budget = kDefaultEnumerationBudget) {
    if (r < 1) throw DomainError("enumerate_mu_r: r must be >= 1");
    long total = 1;
    for (long i = 0; i < L.rank; ++i) {
        total *= r;
        if (total > budget)
            throw BudgetExceeded("enumerate_mu_r: r^rank exceeds enumeration budget; use character_counts");
    }
    std::vector<MuRClass> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<long> cur(L.rank, 0);
    for (long idx = 0; idx < total; ++idx) {
        out.emplace_back(r, cur);
        for (long i = L.rank - 1; i >= 0; --i) {
            if (++cur[i] < r) break;
            cur[i] = 0;
        }
    }
    return out;
}

/// Dense integer matrix over mpz, row-major.
struct IMatrix {
    long rows = 0;
    long cols = 0;
    std::vector<Int> a;

    IMatrix() = default;
    IMatrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Int(0)) {}

    static IMatrix identity(long n) {
        IMatrix m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Int& at(long i, long j) { return a[i * cols + j]; }
    const Int& at(long i, long j) const { return a[i * cols + j]; }

    friend IMatrix operator*(const IMatrix& x, const IMatrix& y) {
        if (x.cols != y.rows) throw MismatchError("IMatrix: dimension mismatch in product");
        IMatrix out(x.rows, y.cols);
        for (long i = 0; i < x.rows; ++i)
            for (long k = 0; k < x.cols; ++k) {
                if (x.at(i, k) == 0) continue;
                for (long j = 0; j < y.cols; ++j) out.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return out;
    }

    friend bool operator==(const IMatrix& x, const IMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// Fraction-free determinant (Bareiss).
inline Int integer_det(IMatrix A) {
    if (A.rows != A.cols) throw MismatchError("integer_det: matrix not square");
    long n = A.rows;
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (A.at(k, k) == 0) {
            long swap_row = -1;
            for (long i = k + 1; i < n; ++i)
                if (A.at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return Int(0);
            for (long j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(swap_row, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int num = A.at(k, k) * A.at(i, j) - A.at(i, k) * A.at(k, j);
                A.at(i, j) = num / prev; // exact by Bareiss
            }
        prev = A.at(k, k);
    }
    return sign > 0 ? A.at(n - 1, n - 1) : -A.at(n - 1, n - 1);
}

struct SmithDecomposition {
    IMatrix u; // unimodular, rows x rows
    IMatrix d; // diagonal with divisibility chain
    IMatrix v; // unimodular, cols x cols
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
inline SmithDecomposition smith_normal_form(const IMatrix& M) {
    IMatrix A = M;
    IMatrix U = IMatrix::identity(M.rows);
    IMatrix V = IMatrix::identity(M.cols);

    auto swap_rows = [&](long i, long j) {
        if (i == j) return;
        for (long k = 0; k < A.cols; ++k) std::swap(A.at(i, k), A.at(j, k));
        for (long k = 0; k < U.cols; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto swap_cols = [&](long i, long j) {
        if (i == j) return;
        for (long k = 0; k < A.rows; ++k) std::swap(A.at(k, i), A.at(k, j));
        for (long k = 0; k < V.rows; ++k) std::swap(V.at(k, i), V.at(k, j));
    };
    auto row_addmul = [&](long dst, long src, const Int& c) { // row_dst += c * row_src
        for (long k = 0; k < A.cols; ++k) A.at(dst, k) += c * A.at(src, k);
        for (long k = 0; k < U.cols; ++k) U.at(dst, k) += c * U.at(src, k);
    };
    auto col_addmul = [&](long dst, long src, const Int& c) {
        for (long k = 0; k < A.rows; ++k) A.at(k, dst) += c * A.at(k, src);
        for (long k = 0; k < V.rows; ++k) V.at(k, dst) += c * V.at(k, src);
    };

    long n = std::min(A.rows, A.cols);
    for (long t = 0; t < n; ++t) {
        // move an entry of minimal absolute value into the pivot slot
        long pi = -1, pj = -1;
        for (long i = t; i < A.rows; ++i)
            for (long j = t; j < A.cols; ++j) {
                if (A.at(i, j) == 0) continue;
                if (pi < 0 || mpz_cmpabs(A.at(i, j).get_mpz_t(), A.at(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // remaining block is zero
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (long i = t + 1; i < A.rows; ++i) {
                while (A.at(i, t) != 0) {
                    Int q = A.at(i, t) / A.at(t, t); // truncated division
                    row_addmul(i, t, -q);
                    if (A.at(i, t) != 0) swap_rows(t, i); // Euclid step shrinks the pivot
                }
            }
            for (long j = t + 1; j < A.cols; ++j) {
                while (A.at(t, j) != 0) {
                    Int q = A.at(t, j) / A.at(t, t);
                    col_addmul(j, t, -q);
                    if (A.at(t, j) != 0) {
                        swap_cols(t, j);
                        clean = false; // column t may be dirty again
                    }
                }
            }
        }

        // enforce the divisibility chain: pivot must divide the whole block
        bool redo = false;
        for (long i = t + 1; i < A.rows && !redo; ++i)
            for (long j = t + 1; j < A.cols && !redo; ++j)
                if (A.at(i, j) % A.at(t, t) != 0) {
                    row_addmul(t, i, Int(1));
                    redo = true;
                }
        if (redo) {
            --t;
            continue;
        }

        if (A.at(t, t) < 0) {
            for (long k = 0; k < A.cols; ++k) A.at(t, k) = -A.at(t, k);
            for (long k = 0; k < U.cols; ++k) U.at(t, k) = -U.at(t, k);
        }
    }
    return {std::move(U), std::move(A), std::move(V)};
}

inline long mod_reduce(long x, long m) { return ((x % m) + m) % m; }

/// N(s, t) = #{w in (Z/r)^rank : c1.w = s, K.w = t mod r}, computed from
/// the Smith normal form of the two pairing functionals rather than by
/// enumeration. Sums to r^rank.
inline std::map<std::pair<long, long>, Int> character_counts(const IntersectionLattice& L, long r,
                                                             const LatticeVector& c1, const LatticeVector& K) {
    if (r < 1) throw DomainError("character_counts: r must be >= 1");
    long b = L.rank;
    IMatrix M(2, b);
    for (long j = 0; j < b; ++j) {
        long f0 = 0, f1 = 0;
        for (long i = 0; i < b; ++i) {
            f0 += c1[i] * L.entry(i, j);
            f1 += K[i] * L.entry(i, j);
        }
        M.at(0, j) = f0;
        M.at(1, j) = f1;
    }
    auto snf = smith_normal_form(M);

    Int free_part(1);
    for (long i = 0; i < b - 2; ++i) free_part *= r;

    std::map<std::pair<long, long>, Int> counts;
    Int rz(r);
    for (long s = 0; s < r; ++s) {
        for (long t = 0; t < r; ++t) {
            // U * (s, t)^T, then solve d_i y_i = u_i mod r row by row
            Int u0 = snf.u.at(0, 0) * s + snf.u.at(0, 1) * t;
            Int u1 = snf.u.at(1, 0) * s + snf.u.at(1, 1) * t;
            Int count = free_part;
            Int us[2] = {u0, u1};
            for (long i = 0; i < 2; ++i) {
                if (i < b) {
                    Int g = gcd(snf.d.at(i, i), rz);
                    if (us[i] % g != 0) {
                        count = 0;
                        break;
                    }
                    count *= g;
                } else {
                    if (us[i] % rz != 0) {
                        count = 0;
                        break;
                    }
                }
            }
            if (count != 0) counts[{s, t}] = count;
        }
    }
    return counts;
}

} // namespace twistcalc
