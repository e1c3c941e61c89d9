#pragma once

// Truncated formal power series over an effective-class lattice.  Classes
// live in Z^r with the effective cone Z^r_{>=0}; a positive integer degree
// vector truncates everything at a fixed cutoff.  All coefficients are exact
// rationals, so series identities here are exact statements.

#include "gv4/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace gv4 {

using ClassVec = std::vector<long>;

inline bool is_effective(const ClassVec& b) {
    return std::all_of(b.begin(), b.end(), [](long x) { return x >= 0; });
}

inline bool is_zero_class(const ClassVec& b) {
    return std::all_of(b.begin(), b.end(), [](long x) { return x == 0; });
}

struct ClassLattice {
    int rank = 1;
    std::vector<long> degree; // pairing with a fixed ample class, entries >= 1
    long cutoff = 0;

    static ClassLattice make(int rank, std::vector<long> degree, long cutoff) {
        if (rank < 1)
            throw input_error("lattice rank must be at least 1");
        if (static_cast<int>(degree.size()) != rank)
            throw input_error("degree vector length must equal the rank");
        for (long d : degree)
            if (d < 1)
                throw input_error("degree vector entries must be positive");
        if (cutoff < 0)
            throw input_error("lattice cutoff must be nonnegative");
        ClassLattice lat;
        lat.rank = rank;
        lat.degree = std::move(degree);
        lat.cutoff = cutoff;
        return lat;
    }

    long deg(const ClassVec& b) const {
        if (static_cast<int>(b.size()) != rank)
            throw input_error("class tuple length does not match the lattice rank");
        long s = 0;
        for (int i = 0; i < rank; ++i)
            s += degree[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
        return s;
    }

    friend bool operator==(const ClassLattice&, const ClassLattice&) = default;
};

// All effective classes with deg <= lattice cutoff, sorted by (degree, lex).
// The zero class leads when included.  This ordering drives every induction
// on degree below, so it must stay deterministic.
inline std::vector<ClassVec> effective_classes(const ClassLattice& lat, bool include_zero = false) {
    std::vector<ClassVec> out;
    ClassVec cur(static_cast<std::size_t>(lat.rank), 0);
    auto rec = [&](auto&& self, int coord, long budget) -> void {
        if (coord == lat.rank) {
            if (include_zero || !is_zero_class(cur))
                out.push_back(cur);
            return;
        }
        const long d = lat.degree[static_cast<std::size_t>(coord)];
        for (long v = 0; v * d <= budget; ++v) {
            cur[static_cast<std::size_t>(coord)] = v;
            self(self, coord + 1, budget - v * d);
        }
        cur[static_cast<std::size_t>(coord)] = 0;
    };
    rec(rec, 0, lat.cutoff);
    std::sort(out.begin(), out.end(), [&](const ClassVec& a, const ClassVec& b) {
        const long da = lat.deg(a), db = lat.deg(b);
        return da != db ? da < db : a < b;
    });
    return out;
}

struct QSeries {
    ClassLattice lattice;
    std::map<ClassVec, BigRat> coeffs; // zero values are never stored

    static QSeries zero(const ClassLattice& lat) { return QSeries{lat, {}}; }
    static QSeries one(const ClassLattice& lat) {
        QSeries s{lat, {}};
        s.coeffs.emplace(ClassVec(static_cast<std::size_t>(lat.rank), 0), BigRat(1));
        return s;
    }

    BigRat coeff(const ClassVec& b) const {
        auto it = coeffs.find(b);
        return it == coeffs.end() ? BigRat(0) : it->second;
    }

    // add, dropping the entry when it cancels; ignores terms past the cutoff
    void add(const ClassVec& b, const BigRat& v) {
        if (v.is_zero() || lattice.deg(b) > lattice.cutoff)
            return;
        auto [it, fresh] = coeffs.try_emplace(b, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero())
                coeffs.erase(it);
        }
    }

    void set(const ClassVec& b, const BigRat& v) {
        if (!is_effective(b))
            throw input_error("QSeries: class is not effective");
        if (lattice.deg(b) > lattice.cutoff)
            throw input_error("QSeries: class degree exceeds the lattice cutoff");
        if (v.is_zero())
            coeffs.erase(b);
        else
            coeffs.insert_or_assign(b, v);
    }

    bool is_zero() const { return coeffs.empty(); }

    friend bool operator==(const QSeries&, const QSeries&) = default;
};

namespace detail {

inline void require_same_lattice(const QSeries& x, const QSeries& y) {
    if (!(x.lattice == y.lattice))
        throw input_error("QSeries: operands live on different lattices");
}

inline BigRat factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return BigRat(f);
}

} // namespace detail

inline QSeries qs_add(const QSeries& x, const QSeries& y) {
    detail::require_same_lattice(x, y);
    QSeries out = x;
    for (const auto& [b, v] : y.coeffs)
        out.add(b, v);
    return out;
}

inline QSeries qs_scale(const QSeries& x, const BigRat& c) {
    QSeries out = QSeries::zero(x.lattice);
    if (c.is_zero())
        return out;
    for (const auto& [b, v] : x.coeffs)
        out.coeffs.emplace(b, v * c);
    return out;
}

inline QSeries qs_sub(const QSeries& x, const QSeries& y) {
    return qs_add(x, qs_scale(y, BigRat(-1)));
}

inline QSeries qs_mul(const QSeries& x, const QSeries& y) {
    detail::require_same_lattice(x, y);
    QSeries out = QSeries::zero(x.lattice);
    for (const auto& [a, va] : x.coeffs) {
        const long da = x.lattice.deg(a);
        for (const auto& [b, vb] : y.coeffs) {
            if (da + x.lattice.deg(b) > x.lattice.cutoff)
                continue;
            ClassVec c(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                c[i] = a[i] + b[i];
            out.add(c, va * vb);
        }
    }
    return out;
}

// exp of a series with no constant term.  The sum x^j / j! is finite because
// the support has positive degree, so x^j dies past j = cutoff.
inline QSeries qs_exp(const QSeries& x) {
    if (!x.coeff(ClassVec(static_cast<std::size_t>(x.lattice.rank), 0)).is_zero())
        throw input_error("qs_exp: argument must have zero constant term");
    QSeries out = QSeries::one(x.lattice);
    QSeries term = QSeries::one(x.lattice);
    for (long j = 1; j <= x.lattice.cutoff; ++j) {
        term = qs_mul(term, x);
        if (term.is_zero())
            break;
        out = qs_add(out, qs_scale(term, detail::factorial(j).inv()));
    }
    return out;
}

// log of a series with constant term 1, via log(1+u) = sum (-1)^{j+1} u^j / j
inline QSeries qs_log(const QSeries& x) {
    const ClassVec zero_class(static_cast<std::size_t>(x.lattice.rank), 0);
    if (x.coeff(zero_class) != BigRat(1))
        throw input_error("qs_log: argument must have constant term 1");
    QSeries u = x;
    u.coeffs.erase(zero_class);
    QSeries out = QSeries::zero(x.lattice);
    QSeries term = QSeries::one(x.lattice);
    for (long j = 1; j <= x.lattice.cutoff; ++j) {
        term = qs_mul(term, u);
        if (term.is_zero())
            break;
        out = qs_add(out, qs_scale(term, BigRat(j % 2 == 0 ? -1 : 1, j)));
    }
    return out;
}

inline QSeries qs_pow(const QSeries& x, long n) {
    if (n < 0) {
        const ClassVec zero_class(static_cast<std::size_t>(x.lattice.rank), 0);
        if (x.coeff(zero_class) != BigRat(1))
            throw input_error("qs_pow: negative power needs constant term 1");
        QSeries u = x;
        u.coeffs.erase(zero_class);
        // geometric inverse 1/(1+u) = sum (-u)^j
        QSeries inv = QSeries::one(x.lattice);
        QSeries term = QSeries::one(x.lattice);
        for (long j = 1; j <= x.lattice.cutoff; ++j) {
            term = qs_mul(term, u);
            if (term.is_zero())
                break;
            inv = qs_add(inv, qs_scale(term, BigRat(j % 2 == 0 ? 1 : -1)));
        }
        return qs_pow(inv, -n);
    }
    QSeries out = QSeries::one(x.lattice);
    QSeries base = x;
    for (long e = n; e > 0; e >>= 1) {
        if (e & 1)
            out = qs_mul(out, base);
        if (e > 1)
            base = qs_mul(base, base);
    }
    return out;
}

// substitute q -> q^beta: maps a rank-1 series sum c_j q^j into the target
// lattice as sum c_j q^{j beta}, truncated there
inline QSeries qs_substitute_power(const QSeries& src, const ClassVec& beta,
                                   const ClassLattice& target) {
    if (src.lattice.rank != 1)
        throw input_error("qs_substitute_power: source series must have rank 1");
    if (!is_effective(beta) || is_zero_class(beta))
        throw input_error("qs_substitute_power: substitution class must be effective and nonzero");
    QSeries out = QSeries::zero(target);
    const long db = target.deg(beta);
    for (const auto& [j, v] : src.coeffs) {
        const long jj = j[0];
        if (jj * db > target.cutoff)
            continue;
        ClassVec c(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i)
            c[i] = jj * beta[i];
        out.add(c, v);
    }
    return out;
}

// sigma(d) = sum of divisors of d
inline long sigma(long d) {
    if (d < 1)
        throw input_error("sigma: argument must be positive");
    long s = 0;
    for (long i = 1; i * i <= d; ++i)
        if (d % i == 0) {
            s += i;
            if (i != d / i)
                s += d / i;
        }
    return s;
}

inline ClassLattice rank1_lattice(long cutoff) { return ClassLattice::make(1, {1}, cutoff); }

// MacMahon function prod_{k>=1} (1-q^k)^{-k} truncated at the cutoff.
// Each factor expands as sum_j binom(k-1+j, j) q^{kj}.
inline QSeries macmahon(long cutoff) {
    if (cutoff < 0)
        throw input_error("macmahon: cutoff must be nonnegative");
    const ClassLattice lat = rank1_lattice(cutoff);
    QSeries out = QSeries::one(lat);
    for (long k = 1; k <= cutoff; ++k) {
        QSeries factor = QSeries::zero(lat);
        for (long j = 0; k * j <= cutoff; ++j)
            factor.set({k * j}, factor.coeff({k * j}) + gen_binom(k - 1 + j, j));
        out = qs_mul(out, factor);
    }
    return out;
}

inline std::string class_str(const ClassVec& b) {
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(b[i]);
    }
    return s + "]";
}

} // namespace gv4
