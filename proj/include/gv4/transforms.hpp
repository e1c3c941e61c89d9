#pragma once

// The series transforms tying Gromov-Witten, Gopakumar-Vafa and stable-pair
// data together: genus-0 and genus-1 multiple-cover sums and their
// inversions, the meeting-invariant recursion, MacMahon products, the ideal
// generating identity and the sheaf-counting multiple-cover formula.

#include "gv4/qseries.hpp"

#include <numeric>
#include <utility>

namespace gv4 {

using ClassTable = std::map<ClassVec, BigRat>;
using N0Table = ClassTable;
using N1Table = ClassTable;
using P0Table = ClassTable;

inline BigRat table_value(const ClassTable& t, const ClassVec& b) {
    auto it = t.find(b);
    return it == t.end() ? BigRat(0) : it->second;
}

inline void validate_class_table(const ClassLattice& lat, const ClassTable& t, const char* what) {
    for (const auto& [b, v] : t) {
        (void)v;
        if (static_cast<int>(b.size()) != lat.rank || !is_effective(b))
            throw input_error(std::string(what) + ": invalid class " + class_str(b));
        const long d = lat.deg(b);
        if (d < 1 || d > lat.cutoff)
            throw input_error(std::string(what) + ": class " + class_str(b)
                              + " has degree outside (0, cutoff]");
    }
}

struct GeomData {
    ClassLattice lattice;
    int basis_size = 0;                        // number of 4-cycle basis classes
    std::vector<std::vector<BigRat>> kunneth;  // g^{ij}, the diagonal's (4,4) part
    std::map<ClassVec, std::vector<BigRat>> n0_S;
    ClassTable n0_c2;

    static GeomData make(ClassLattice lattice, int basis_size,
                         std::vector<std::vector<BigRat>> kunneth,
                         std::map<ClassVec, std::vector<BigRat>> n0_S, ClassTable n0_c2) {
        if (basis_size < 0)
            throw input_error("GeomData: basis size must be nonnegative");
        if (static_cast<int>(kunneth.size()) != basis_size)
            throw input_error("GeomData: kunneth matrix must be basis_size x basis_size");
        for (const auto& row : kunneth)
            if (static_cast<int>(row.size()) != basis_size)
                throw input_error("GeomData: kunneth matrix must be square");
        for (int i = 0; i < basis_size; ++i)
            for (int j = i + 1; j < basis_size; ++j)
                if (kunneth[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                    != kunneth[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                    throw input_error("GeomData: kunneth matrix must be symmetric");
        for (const auto& [b, vec] : n0_S) {
            if (static_cast<int>(b.size()) != lattice.rank || !is_effective(b)
                || lattice.deg(b) < 1 || lattice.deg(b) > lattice.cutoff)
                throw input_error("GeomData: n0_S class " + class_str(b) + " is out of range");
            if (static_cast<int>(vec.size()) != basis_size)
                throw input_error("GeomData: n0_S vector at " + class_str(b)
                                  + " must have basis_size entries");
        }
        validate_class_table(lattice, n0_c2, "GeomData n0_c2");
        GeomData g;
        g.lattice = std::move(lattice);
        g.basis_size = basis_size;
        g.kunneth = std::move(kunneth);
        g.n0_S = std::move(n0_S);
        g.n0_c2 = std::move(n0_c2);
        return g;
    }

    // sum_{i,j} n0_{b1}(S_i) g^{ij} n0_{b2}(S_j); absent rows count as zero
    BigRat pairing(const ClassVec& b1, const ClassVec& b2) const {
        auto i1 = n0_S.find(b1);
        auto i2 = n0_S.find(b2);
        if (i1 == n0_S.end() || i2 == n0_S.end())
            return BigRat(0);
        BigRat acc(0);
        for (int i = 0; i < basis_size; ++i)
            for (int j = 0; j < basis_size; ++j)
                acc += i1->second[static_cast<std::size_t>(i)]
                       * kunneth[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                       * i2->second[static_cast<std::size_t>(j)];
        return acc;
    }
};

// genus-0 GW from GV with n insertions: GW_{0,beta} picks up d^{n-3} n_{0,beta/d}
inline QSeries gw0_from_n0(const ClassLattice& lat, const N0Table& n0, long insertion_count) {
    if (insertion_count < 0)
        throw input_error("gw0_from_n0: insertion count must be nonnegative");
    validate_class_table(lat, n0, "gw0_from_n0");
    QSeries out = QSeries::zero(lat);
    for (const auto& [b, v] : n0) {
        const long db = lat.deg(b);
        for (long d = 1; d * db <= lat.cutoff; ++d) {
            ClassVec c(b.size());
            for (std::size_t i = 0; i < b.size(); ++i)
                c[i] = d * b[i];
            out.add(c, v * BigRat(d).pow(insertion_count - 3));
        }
    }
    return out;
}

namespace detail {

// largest d with b = d*b' for effective b'; for divisibility tests
inline bool divide_class(const ClassVec& b, long d, ClassVec& quotient) {
    quotient.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] % d != 0)
            return false;
        quotient[i] = b[i] / d;
    }
    return true;
}

} // namespace detail

// inverts gw0_from_n0 by induction on degree
inline N0Table n0_from_gw0(const QSeries& gw, long insertion_count) {
    const ClassLattice& lat = gw.lattice;
    if (!gw.coeff(ClassVec(static_cast<std::size_t>(lat.rank), 0)).is_zero())
        throw input_error("n0_from_gw0: series must have zero constant term");
    N0Table out;
    for (const ClassVec& b : effective_classes(lat)) {
        BigRat val = gw.coeff(b);
        ClassVec q;
        for (long d = 2; d <= lat.deg(b); ++d)
            if (detail::divide_class(b, d, q))
                val -= BigRat(d).pow(insertion_count - 3) * table_value(out, q);
        if (!val.is_zero())
            out.emplace(b, val);
    }
    return out;
}

struct MeetingTable {
    // canonical key has the lex-smaller class first; zero values dropped
    std::map<std::pair<ClassVec, ClassVec>, BigRat> values;
};

inline BigRat meeting_value(const MeetingTable& t, ClassVec b1, ClassVec b2) {
    if (b2 < b1)
        std::swap(b1, b2);
    auto it = t.values.find({b1, b2});
    return it == t.values.end() ? BigRat(0) : it->second;
}

// Computes all m_{b1,b2} with deg(b1+b2) <= cutoff by the defining rules:
// vanishing for nonpositive degree or non-effective argument, the two-term
// recursion off the diagonal, and the decomposition formula on the diagonal.
// Total degree drops strictly in every recursive reference, so the memoized
// recursion terminates inside the cutoff.
inline MeetingTable meeting_invariants(const GeomData& g) {
    const ClassLattice& lat = g.lattice;
    std::map<std::pair<ClassVec, ClassVec>, BigRat> memo;
    const std::vector<ClassVec> classes = effective_classes(lat);

    auto mval = [&](auto&& self, ClassVec b1, ClassVec b2) -> BigRat {
        if (!is_effective(b1) || !is_effective(b2))
            return BigRat(0);
        if (lat.deg(b1) < 1 || lat.deg(b2) < 1)
            return BigRat(0);
        if (b2 < b1)
            std::swap(b1, b2);
        if (lat.deg(b1) + lat.deg(b2) > lat.cutoff)
            throw math_error("meeting recursion left the cutoff at (" + class_str(b1) + ", "
                             + class_str(b2) + ")");
        if (auto it = memo.find({b1, b2}); it != memo.end())
            return it->second;
        BigRat val;
        if (b1 == b2) {
            val = table_value(g.n0_c2, b1) + g.pairing(b1, b1);
            for (const ClassVec& a : classes) {
                if (lat.deg(a) >= lat.deg(b1))
                    continue;
                ClassVec c(b1.size());
                for (std::size_t i = 0; i < b1.size(); ++i)
                    c[i] = b1[i] - a[i];
                if (is_effective(c) && lat.deg(c) >= 1)
                    val -= self(self, a, c);
            }
        } else {
            ClassVec d21(b1.size()), d12(b1.size());
            for (std::size_t i = 0; i < b1.size(); ++i) {
                d21[i] = b2[i] - b1[i];
                d12[i] = b1[i] - b2[i];
            }
            val = g.pairing(b1, b2) + self(self, b1, d21) + self(self, d12, b2);
        }
        if (!val.is_integer())
            throw math_error("meeting invariant at (" + class_str(b1) + ", " + class_str(b2)
                             + ") is not an integer: " + val.str());
        memo.emplace(std::make_pair(b1, b2), val);
        return val;
    };

    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i; j < classes.size(); ++j)
            if (lat.deg(classes[i]) + lat.deg(classes[j]) <= lat.cutoff)
                mval(mval, classes[i], classes[j]);

    MeetingTable out;
    for (auto& [key, v] : memo)
        if (!v.is_zero())
            out.values.emplace(key, v);
    return out;
}

namespace detail {

// the two genus-1 correction sums, shared by the forward and inverse maps:
// (1/24) sum_b n0_c2(b) log(1-q^b) - (1/24) sum_{b1,b2} m log(1-q^{b1+b2}),
// the meeting sum running over ordered pairs
inline QSeries genus1_corrections(const GeomData& g, const MeetingTable& m) {
    const ClassLattice& lat = g.lattice;
    QSeries corr = QSeries::zero(lat);
    for (const auto& [b, c] : g.n0_c2) {
        const long db = lat.deg(b);
        for (long k = 1; k * db <= lat.cutoff; ++k) {
            ClassVec kb(b.size());
            for (std::size_t i = 0; i < b.size(); ++i)
                kb[i] = k * b[i];
            corr.add(kb, BigRat(-1, 24 * k) * c);
        }
    }
    for (const auto& [key, v] : m.values) {
        const auto& [b1, b2] = key;
        const long mult = b1 == b2 ? 1 : 2;
        ClassVec s(b1.size());
        for (std::size_t i = 0; i < b1.size(); ++i)
            s[i] = b1[i] + b2[i];
        const long ds = lat.deg(s);
        if (ds > lat.cutoff)
            continue;
        for (long k = 1; k * ds <= lat.cutoff; ++k) {
            ClassVec ks(s.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                ks[i] = k * s[i];
            corr.add(ks, BigRat(mult, 24 * k) * v);
        }
    }
    return corr;
}

} // namespace detail

inline QSeries genus1_forward(const ClassLattice& lat, const N1Table& n1, const GeomData& g,
                              const MeetingTable& m) {
    if (!(g.lattice == lat))
        throw input_error("genus1_forward: geometry lattice mismatch");
    validate_class_table(lat, n1, "genus1_forward n1");
    QSeries out = detail::genus1_corrections(g, m);
    for (const auto& [b, v] : n1) {
        const long db = lat.deg(b);
        for (long d = 1; d * db <= lat.cutoff; ++d) {
            ClassVec c(b.size());
            for (std::size_t i = 0; i < b.size(); ++i)
                c[i] = d * b[i];
            out.add(c, v * BigRat(sigma(d), d));
        }
    }
    return out;
}

inline N1Table n1_from_genus1(const QSeries& gw1, const GeomData& g, const MeetingTable& m) {
    const ClassLattice& lat = gw1.lattice;
    if (!(g.lattice == lat))
        throw input_error("n1_from_genus1: geometry lattice mismatch");
    if (!gw1.coeff(ClassVec(static_cast<std::size_t>(lat.rank), 0)).is_zero())
        throw input_error("n1_from_genus1: series must have zero constant term");
    const QSeries corrected = qs_sub(gw1, detail::genus1_corrections(g, m));
    N1Table out;
    for (const ClassVec& b : effective_classes(lat)) {
        BigRat val = corrected.coeff(b);
        ClassVec q;
        for (long d = 2; d <= lat.deg(b); ++d)
            if (detail::divide_class(b, d, q))
                val -= BigRat(sigma(d), d) * table_value(out, q);
        if (!val.is_zero())
            out.emplace(b, val);
    }
    return out;
}

// P0 table of prod_b M(q^b)^{n1_b}, computed as exp(sum n1_b log M(q^b)).
// The result must be integral; a non-integer coefficient means the input was
// not an integer table in disguise.
inline P0Table macmahon_product(const ClassLattice& lat, const N1Table& n1) {
    validate_class_table(lat, n1, "macmahon_product n1");
    for (const auto& [b, v] : n1)
        if (!v.is_integer())
            throw input_error("macmahon_product: n1 value at " + class_str(b)
                              + " is not an integer");
    const QSeries logm = qs_log(macmahon(lat.cutoff));
    QSeries acc = QSeries::zero(lat);
    for (const auto& [b, v] : n1)
        acc = qs_add(acc, qs_scale(qs_substitute_power(logm, b, lat), v));
    QSeries p = qs_exp(acc);
    P0Table out;
    for (const auto& [b, v] : p.coeffs) {
        if (!v.is_integer())
            throw math_error("macmahon_product: non-integer coefficient " + v.str()
                             + " at class " + class_str(b));
        if (!is_zero_class(b))
            out.emplace(b, v);
    }
    return out;
}

// inverts macmahon_product: log the series, then peel log M(q^b) layers by
// induction on degree (log M starts q + ..., so the leading coefficient is 1)
inline N1Table n1_from_p0(const ClassLattice& lat, const P0Table& p0) {
    validate_class_table(lat, p0, "n1_from_p0");
    QSeries series = QSeries::one(lat);
    for (const auto& [b, v] : p0)
        series.add(b, v);
    const QSeries logp = qs_log(series);
    const QSeries logm = qs_log(macmahon(lat.cutoff));
    N1Table out;
    for (const ClassVec& b : effective_classes(lat)) {
        BigRat val = logp.coeff(b);
        ClassVec q;
        for (long j = 2; j <= lat.deg(b); ++j)
            if (detail::divide_class(b, j, q))
                val -= logm.coeff({j}) * table_value(out, q);
        if (!val.is_zero())
            out.emplace(b, val);
    }
    return out;
}

// predicted P_{1,beta}(gamma) = sum_{b1+b2=beta} n_{0,b1}(gamma) P_{0,b2},
// with P_{0,0} = 1 and n_{0,0} = 0
inline QSeries genus0_pair_identity(const ClassLattice& lat, const N0Table& n0_gamma,
                                    const P0Table& p0) {
    validate_class_table(lat, n0_gamma, "genus0_pair_identity n0");
    validate_class_table(lat, p0, "genus0_pair_identity p0");
    QSeries out = QSeries::zero(lat);
    for (const auto& [b1, v] : n0_gamma) {
        out.add(b1, v); // b2 = 0 term
        const long d1 = lat.deg(b1);
        for (const auto& [b2, p] : p0) {
            if (d1 + lat.deg(b2) > lat.cutoff)
                continue;
            ClassVec s(b1.size());
            for (std::size_t i = 0; i < b1.size(); ++i)
                s[i] = b1[i] + b2[i];
            out.add(s, v * p);
        }
    }
    return out;
}

// P_{n,beta}(gamma) = sum over ordered decompositions beta = b0 + b1 + ... + bn
// of P_{0,b0} prod_i n_{0,bi}(gamma).  Enumerated directly on purpose: the
// generating-identity check plays this against the exp/log product machinery,
// which would be circular if this too were computed through series powers.
inline BigRat ideal_pn_value(const ClassLattice& lat, const P0Table& p0, const N0Table& n0_gamma,
                             long n, const ClassVec& beta) {
    if (n < 0)
        throw input_error("ideal_pn_value: insertion count must be nonnegative");
    if (static_cast<int>(beta.size()) != lat.rank || !is_effective(beta))
        throw input_error("ideal_pn_value: invalid class " + class_str(beta));
    validate_class_table(lat, p0, "ideal_pn_value p0");
    validate_class_table(lat, n0_gamma, "ideal_pn_value n0");
    auto rec = [&](auto&& self, long slots, const ClassVec& rem) -> BigRat {
        if (slots == 0)
            return is_zero_class(rem) ? BigRat(1) : table_value(p0, rem);
        BigRat acc(0);
        for (const auto& [b, v] : n0_gamma) {
            ClassVec nxt(rem.size());
            bool ok = true;
            for (std::size_t i = 0; i < rem.size(); ++i) {
                nxt[i] = rem[i] - b[i];
                ok = ok && nxt[i] >= 0;
            }
            if (ok)
                acc += v * self(self, slots - 1, nxt);
        }
        return acc;
    };
    return rec(rec, n, beta);
}

// checks sum_{n,beta} P_{n,beta}(gamma)/n! y^n q^beta
//   = prod_b exp(y q^b)^{n0_b(gamma)} M(q^b)^{n1_b} up to the given cutoffs
inline bool ideal_generating_check(const ClassLattice& lat, const P0Table& p0,
                                   const N0Table& n0_gamma, const N1Table& n1, long y_cutoff,
                                   long q_cutoff) {
    if (y_cutoff < 0 || q_cutoff < 0)
        throw input_error("ideal_generating_check: cutoffs must be nonnegative");
    const long qcut = std::min(q_cutoff, lat.cutoff);
    QSeries f = QSeries::zero(lat);
    for (const auto& [b, v] : n0_gamma)
        f.add(b, v);
    QSeries mprod = QSeries::one(lat);
    for (const auto& [b, v] : macmahon_product(lat, n1))
        mprod.add(b, v);
    for (long n = 0; n <= y_cutoff; ++n) {
        const QSeries rhs = qs_mul(qs_pow(f, n), mprod);
        for (const ClassVec& b : effective_classes(lat, true)) {
            if (lat.deg(b) > qcut)
                continue;
            if (ideal_pn_value(lat, p0, n0_gamma, n, b) != rhs.coeff(b))
                return false;
        }
    }
    return true;
}

// N_{n,beta} = sum_{k | gcd(n,beta)} (1/k^2) N_{1,beta/k} on a rank-1 lattice
inline std::map<std::pair<long, long>, BigRat>
multiple_cover_expand(const ClassLattice& lat, const ClassTable& n1_sheaf, long n_max) {
    if (lat.rank != 1)
        throw input_error("multiple_cover_expand: lattice must have rank 1");
    if (n_max < 0)
        throw input_error("multiple_cover_expand: n_max must be nonnegative");
    validate_class_table(lat, n1_sheaf, "multiple_cover_expand n1");
    std::map<std::pair<long, long>, BigRat> out;
    for (long b = 1; b * lat.degree[0] <= lat.cutoff; ++b)
        for (long n = 0; n <= n_max; ++n) {
            const long g = std::gcd(n, b);
            BigRat val(0);
            for (long k = 1; k <= g; ++k)
                if (g % k == 0)
                    val += table_value(n1_sheaf, {b / k}) * BigRat(1, k * k);
            if (!val.is_zero())
                out.emplace(std::make_pair(n, b), val);
        }
    return out;
}

inline bool multiple_cover_check(const ClassLattice& lat,
                                 const std::map<std::pair<long, long>, BigRat>& table) {
    if (lat.rank != 1)
        throw input_error("multiple_cover_check: lattice must have rank 1");
    auto lookup = [&](long n, long b) {
        auto it = table.find({n, b});
        return it == table.end() ? BigRat(0) : it->second;
    };
    for (const auto& [key, v] : table) {
        const auto& [n, b] = key;
        const long g = std::gcd(n, b);
        BigRat rhs(0);
        for (long k = 1; k <= g; ++k)
            if (g % k == 0 && b % k == 0)
                rhs += lookup(1, b / k) * BigRat(1, k * k);
        if (v != rhs)
            return false;
    }
    return true;
}

} // namespace gv4
