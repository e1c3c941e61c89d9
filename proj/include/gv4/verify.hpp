#pragma once

// One-shot verification suite.  Thirteen independent criteria, each reduced
// to a single pass/fail verdict with a short deterministic detail string, so
// the acceptance binary and the CLI report the same facts in any format.
// Randomized criteria use fixed seeds; reruns are bit-identical.

#include "gv4/localcurve.hpp"
#include "gv4/partitions.hpp"
#include "gv4/tables.hpp"
#include "gv4/transforms.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace gv4 {

struct CriterionResult {
    std::string slug;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    int threads = 1;          // used by the localization grid only
    std::string data_dir = "data";
    std::vector<std::string> only; // run just these slugs; empty means all
};

inline const std::vector<std::string>& criterion_slugs() {
    static const std::vector<std::string> slugs{
        "grid-conjecture",      "pair-gw-degree1",       "degree2-anchors",
        "macmahon-oracle",      "elliptic-fibration-n1", "torus-product-genus1",
        "p0-coefficient-identities", "transform-roundtrips", "meeting-invariants",
        "multiple-cover-primitive",  "equivariance-homogeneity", "ideal-generating",
        "tables-consistency"};
    return slugs;
}

namespace detail {

inline long rand_range(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline ClassTable random_int_table(std::mt19937_64& rng, const ClassLattice& lat, long bound) {
    ClassTable t;
    for (const ClassVec& b : effective_classes(lat))
        if (long v = rand_range(rng, -bound, bound); v != 0)
            t.emplace(b, BigRat(v));
    return t;
}

inline GeomData random_integer_geom(std::mt19937_64& rng, const ClassLattice& lat) {
    const int k = 1 + static_cast<int>(rng() % 2);
    std::vector<std::vector<BigRat>> g(static_cast<std::size_t>(k),
                                       std::vector<BigRat>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    BigRat(rand_range(rng, -3, 3));
    std::map<ClassVec, std::vector<BigRat>> n0s;
    ClassTable c2;
    for (const ClassVec& b : effective_classes(lat)) {
        std::vector<BigRat> row(static_cast<std::size_t>(k));
        for (BigRat& x : row)
            x = BigRat(rand_range(rng, -3, 3));
        n0s.emplace(b, std::move(row));
        if (long v = rand_range(rng, -3, 3); v != 0)
            c2.emplace(b, BigRat(v));
    }
    return GeomData::make(lat, k, std::move(g), std::move(n0s), std::move(c2));
}

inline std::string triple_str(const LocalCurveGeom& g) {
    return "(" + std::to_string(g.l[0]) + "," + std::to_string(g.l[1]) + ","
           + std::to_string(g.l[2]) + ")";
}

inline CriterionResult criterion_grid(int threads) {
    CriterionResult c{"grid-conjecture", false, ""};
    GridSummary s = grid_check(-10, 10, -10, 10, threads);
    c.passed = s.total == 441 && s.passed == s.total;
    if (c.passed)
        c.detail = "441/441 pairs on [-10,10]^2";
    else {
        c.detail = std::to_string(s.passed) + "/" + std::to_string(s.total) + " pairs";
        if (!s.failures.empty())
            c.detail += ", first failure "
                        + triple_str(LocalCurveGeom{{s.failures[0][0], s.failures[0][1],
                                                     s.failures[0][2]}});
    }
    return c;
}

inline CriterionResult criterion_degree1() {
    CriterionResult c{"pair-gw-degree1", false, ""};
    for (int l1 = -10; l1 <= 10; ++l1)
        for (int l2 = -10; l2 <= 10; ++l2) {
            LocalCurveGeom g = LocalCurveGeom::from_pair(l1, l2);
            if (!ratfunc_eq(pair_degree1(g), gw_degree1(g))) {
                c.detail = "pair != GW at " + triple_str(g);
                return c;
            }
        }
    // 1/lambda3 and lambda1/(lambda2 lambda3), written over (lambda1, lambda2)
    const RatFunc inv_l3 = RatFunc::make(BigRat(-1), Poly2::one(), {{LinForm{1, 1}, 1}});
    const RatFunc conifold = RatFunc::make(BigRat(-1), Poly2::form(LinForm{1, 0}),
                                           {{LinForm{0, 1}, 1}, {LinForm{1, 1}, 1}});
    if (!ratfunc_eq(pair_degree1(LocalCurveGeom::make(-1, -1, 0)), inv_l3)) {
        c.detail = "anchor (-1,-1,0) mismatch";
        return c;
    }
    if (!ratfunc_eq(pair_degree1(LocalCurveGeom::make(-2, 0, 0)), conifold)) {
        c.detail = "anchor (-2,0,0) mismatch";
        return c;
    }
    c.passed = true;
    c.detail = "441 coincidences and 2 anchors";
    return c;
}

inline CriterionResult criterion_degree2_anchors() {
    CriterionResult c{"degree2-anchors", false, ""};
    const RatFunc eighth_inv_l3 =
        RatFunc::make(BigRat(-1, 8), Poly2::one(), {{LinForm{1, 1}, 1}});
    if (!ratfunc_eq(gw_degree2(LocalCurveGeom::make(-1, -1, 0)), eighth_inv_l3)) {
        c.detail = "GW_{0,2}(-1,-1,0) != (1/8)/lambda3";
        return c;
    }
    for (LocalCurveGeom g :
         {LocalCurveGeom::make(-1, -1, 0), LocalCurveGeom::make(-2, 0, 0)})
        if (!ratfunc_eq(pair_degree2(g), RatFunc::zero())) {
            c.detail = "P_{1,2}" + triple_str(g) + " != 0";
            return c;
        }
    c.passed = true;
    c.detail = "resolved conifold and local elliptic anchors";
    return c;
}

inline CriterionResult criterion_macmahon_oracle() {
    CriterionResult c{"macmahon-oracle", false, ""};
    const QSeries mm = macmahon(12);
    for (int m = 0; m <= 12; ++m)
        if (BigRat(count_plane_partitions(m)) != mm.coeff({m})) {
            c.detail = "box count disagrees with series at m = " + std::to_string(m);
            return c;
        }
    c.passed = true;
    c.detail = "box counts match series coefficients for m <= 12";
    return c;
}

inline CriterionResult criterion_elliptic_fibration() {
    CriterionResult c{"elliptic-fibration-n1", false, ""};
    const ClassLattice lat = rank1_lattice(8);
    const QSeries p0_series = qs_pow(macmahon(8), -20);
    P0Table p0;
    for (const auto& [b, v] : p0_series.coeffs)
        if (lat.deg(b) > 0)
            p0.emplace(b, v);
    N1Table got = n1_from_p0(lat, p0);
    if (got == N1Table{{{1}, BigRat(-20)}}) {
        c.passed = true;
        c.detail = "n1 = {-20 at degree 1} from M(q)^-20, cutoff 8";
    } else {
        c.detail = "unexpected n1 table with " + std::to_string(got.size()) + " entries";
    }
    return c;
}

inline CriterionResult criterion_torus_product() {
    CriterionResult c{"torus-product-genus1", false, ""};
    const ClassLattice lat = rank1_lattice(8);
    const GeomData quiet = GeomData::make(lat, 0, {}, {}, {});
    const MeetingTable m = meeting_invariants(quiet);
    for (long chi : {-200L, 0L, 42L}) {
        QSeries gw1 = QSeries::zero(lat);
        for (long d = 1; d <= 8; ++d)
            gw1.set({d}, BigRat(chi) * BigRat(sigma(d), d));
        N1Table want;
        if (chi != 0)
            want.emplace(ClassVec{1}, BigRat(chi));
        if (n1_from_genus1(gw1, quiet, m) != want) {
            c.detail = "inversion failed for chi = " + std::to_string(chi);
            return c;
        }
    }
    c.passed = true;
    c.detail = "chi in {-200, 0, 42} recovered";
    return c;
}

inline CriterionResult criterion_coefficient_identities() {
    CriterionResult c{"p0-coefficient-identities", false, ""};
    const ClassLattice lat = rank1_lattice(3);
    for (long x = -5; x <= 5; ++x)
        for (long y = -5; y <= 5; ++y)
            for (long z = -5; z <= 5; ++z) {
                N1Table n1;
                if (x != 0)
                    n1.emplace(ClassVec{1}, BigRat(x));
                if (y != 0)
                    n1.emplace(ClassVec{2}, BigRat(y));
                if (z != 0)
                    n1.emplace(ClassVec{3}, BigRat(z));
                P0Table p0 = macmahon_product(lat, n1);
                const BigRat want1 = BigRat(x);
                const BigRat want2 = BigRat(y) + BigRat(3 * x) + gen_binom(x, 2);
                const BigRat want3 = BigRat(z) + BigRat(x) * BigRat(y) + BigRat(6 * x)
                                     + BigRat(6) * gen_binom(x, 2) + gen_binom(x, 3);
                if (table_value(p0, {1}) != want1 || table_value(p0, {2}) != want2
                    || table_value(p0, {3}) != want3) {
                    c.detail = "mismatch at (n1,b, n1,2b, n1,3b) = (" + std::to_string(x)
                               + "," + std::to_string(y) + "," + std::to_string(z) + ")";
                    return c;
                }
            }
    c.passed = true;
    c.detail = "1331 integer triples in [-5,5]^3";
    return c;
}

inline CriterionResult criterion_roundtrips() {
    CriterionResult c{"transform-roundtrips", false, ""};
    const std::array<ClassLattice, 2> lats{rank1_lattice(8),
                                           ClassLattice::make(2, {1, 1}, 8)};
    std::mt19937_64 rng(20260821);
    for (int trial = 0; trial < 50; ++trial) {
        const ClassLattice& lat = lats[static_cast<std::size_t>(trial % 2)];
        const std::string where = " (trial " + std::to_string(trial) + ", rank "
                                  + std::to_string(lat.rank) + ")";

        N0Table n0 = random_int_table(rng, lat, 9);
        const long ins = rand_range(rng, 0, 3);
        if (n0_from_gw0(gw0_from_n0(lat, n0, ins), ins) != n0) {
            c.detail = "genus-0 roundtrip failed" + where;
            return c;
        }

        GeomData geom = random_integer_geom(rng, lat);
        MeetingTable m = meeting_invariants(geom);
        N1Table n1 = random_int_table(rng, lat, 9);
        if (n1_from_genus1(genus1_forward(lat, n1, geom, m), geom, m) != n1) {
            c.detail = "genus-1 roundtrip failed" + where;
            return c;
        }

        N1Table small = random_int_table(rng, lat, 5);
        if (n1_from_p0(lat, macmahon_product(lat, small)) != small) {
            c.detail = "MacMahon roundtrip failed" + where;
            return c;
        }
    }
    c.passed = true;
    c.detail = "150 roundtrips, rank 1 and 2, cutoff 8";
    return c;
}

inline CriterionResult criterion_meeting() {
    CriterionResult c{"meeting-invariants", false, ""};
    std::mt19937_64 rng(777001);
    for (int trial = 0; trial < 20; ++trial) {
        const ClassLattice lat = trial % 2 == 0 ? rank1_lattice(6)
                                                : ClassLattice::make(2, {1, 1}, 5);
        GeomData geom = random_integer_geom(rng, lat);
        MeetingTable m = meeting_invariants(geom);
        const ClassVec zero(static_cast<std::size_t>(lat.rank), 0);
        for (const ClassVec& b1 : effective_classes(lat)) {
            if (meeting_value(m, zero, b1) != BigRat(0)) {
                c.detail = "zero class met nontrivially, trial " + std::to_string(trial);
                return c;
            }
            for (const ClassVec& b2 : effective_classes(lat)) {
                if (lat.deg(b1) + lat.deg(b2) > lat.cutoff)
                    continue;
                if (meeting_value(m, b1, b2) != meeting_value(m, b2, b1)) {
                    c.detail = "asymmetric at " + class_str(b1) + ", " + class_str(b2);
                    return c;
                }
            }
        }
    }
    // one hand-checked anchor: a single surface class with self-pairing a^2
    const ClassLattice lat = rank1_lattice(4);
    GeomData toy = GeomData::make(lat, 1, {{BigRat(1)}}, {{{1}, {BigRat(3)}}},
                                  {{{1}, BigRat(5)}});
    if (meeting_value(meeting_invariants(toy), {1}, {1}) != BigRat(14)) {
        c.detail = "hand example m_{1,1} != c + a^2";
        return c;
    }
    c.passed = true;
    c.detail = "20 fixtures plus the hand anchor";
    return c;
}

inline CriterionResult criterion_multiple_cover() {
    CriterionResult c{"multiple-cover-primitive", false, ""};
    const ClassLattice lat = rank1_lattice(12);
    for (long v : {1L, -7L, 13L}) {
        ClassTable sheaf{{{1}, BigRat(v)}};
        auto table = multiple_cover_expand(lat, sheaf, 9);
        for (long n = 1; n <= 9; ++n) {
            auto it = table.find({n, 1});
            if (it == table.end() || it->second != BigRat(v)) {
                c.detail = "N_{" + std::to_string(n) + ",1} != N_{1,1} for value "
                           + std::to_string(v);
                return c;
            }
        }
        if (!multiple_cover_check(lat, table)) {
            c.detail = "self-check failed for value " + std::to_string(v);
            return c;
        }
    }
    ClassTable mixed{{{1}, BigRat(3)}, {{2}, BigRat(-2)}, {{5}, BigRat(7)}};
    auto table = multiple_cover_expand(lat, mixed, 10);
    for (const auto& [b, v] : mixed)
        for (long n = 1; n <= 10; ++n) {
            if (std::gcd(n, b[0]) != 1)
                continue;
            auto it = table.find({n, b[0]});
            if (it == table.end() || it->second != v) {
                c.detail = "coprime pair (" + std::to_string(n) + "," + std::to_string(b[0])
                           + ") lost its primitive value";
                return c;
            }
        }
    if (!multiple_cover_check(lat, table)) {
        c.detail = "self-check failed on the mixed table";
        return c;
    }
    c.passed = true;
    c.detail = "primitive classes constant in n, self-checks pass";
    return c;
}

inline CriterionResult criterion_symmetries() {
    CriterionResult c{"equivariance-homogeneity", false, ""};
    using Invariant = RatFunc (*)(const LocalCurveGeom&);
    const std::array<std::pair<const char*, Invariant>, 4> invariants{
        {{"GW_{0,1}", &gw_degree1},
         {"GW_{0,2}", &gw_degree2},
         {"P_{1,1}", &pair_degree1},
         {"P_{1,2}", &pair_degree2}}};
    std::mt19937_64 rng(424242);
    const BigRat t(5, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const int l1 = static_cast<int>(rand_range(rng, -6, 6));
        const int l2 = static_cast<int>(rand_range(rng, -6, 6));
        const LocalCurveGeom g = LocalCurveGeom::from_pair(l1, l2);
        const LocalCurveGeom swapped = LocalCurveGeom::make(g.l[1], g.l[0], g.l[2]);
        const LocalCurveGeom cycled = LocalCurveGeom::make(g.l[1], g.l[2], g.l[0]);
        for (const auto& [name, f] : invariants) {
            const RatFunc base = f(g);
            // swap lambda1 <-> lambda2
            if (!ratfunc_eq(f(swapped),
                            ratfunc_subst_linear(base, BigRat(0), BigRat(1), BigRat(1),
                                                 BigRat(0)))) {
                c.detail = std::string(name) + " not swap-equivariant at " + triple_str(g);
                return c;
            }
            // cycle lambda1 -> lambda3 -> lambda2 -> lambda1
            if (!ratfunc_eq(f(cycled),
                            ratfunc_subst_linear(base, BigRat(-1), BigRat(-1), BigRat(1),
                                                 BigRat(0)))) {
                c.detail = std::string(name) + " not cycle-equivariant at " + triple_str(g);
                return c;
            }
            // scaling lambda by t multiplies the invariant by 1/t
            if (!ratfunc_eq(ratfunc_subst_linear(base, t, BigRat(0), BigRat(0), t),
                            ratfunc_mul(RatFunc::from_rat(t.inv()), base))) {
                c.detail = std::string(name) + " not degree -1 at " + triple_str(g);
                return c;
            }
        }
    }
    c.passed = true;
    c.detail = "50 triples, 4 invariants, 3 laws each";
    return c;
}

inline CriterionResult criterion_ideal_generating() {
    CriterionResult c{"ideal-generating", false, ""};
    const ClassLattice lat = rank1_lattice(4);
    std::mt19937_64 rng(8181002);
    for (int trial = 0; trial < 10; ++trial) {
        N1Table n1 = random_int_table(rng, lat, 3);
        P0Table p0 = macmahon_product(lat, n1);
        N0Table n0_gamma = random_int_table(rng, lat, 3);
        if (!ideal_generating_check(lat, p0, n0_gamma, n1, 3, 4)) {
            c.detail = "identity failed on trial " + std::to_string(trial);
            return c;
        }
    }
    c.passed = true;
    c.detail = "10 fixtures, y-degree <= 3, q-degree <= 4";
    return c;
}

inline CriterionResult criterion_tables(const std::string& data_dir) {
    CriterionResult c{"tables-consistency", false, ""};
    const std::string path = data_dir + "/literature_values.csv";
    std::vector<ValueRecord> records = load_value_records(path);
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (serialize_value_records(records) != buf.str()) {
        c.detail = "load/serialize round trip is not byte-identical";
        return c;
    }
    for (const CheckResult& r : run_consistency_checks(records))
        if (!r.passed) {
            c.detail = r.name + ": " + r.detail;
            return c;
        }
    c.passed = true;
    c.detail = std::to_string(records.size()) + " records, 4 checks";
    return c;
}

} // namespace detail

inline std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {}) {
    using Runner = std::function<CriterionResult()>;
    const std::vector<std::pair<std::string, Runner>> runners{
        {"grid-conjecture", [&] { return detail::criterion_grid(opt.threads); }},
        {"pair-gw-degree1", [] { return detail::criterion_degree1(); }},
        {"degree2-anchors", [] { return detail::criterion_degree2_anchors(); }},
        {"macmahon-oracle", [] { return detail::criterion_macmahon_oracle(); }},
        {"elliptic-fibration-n1", [] { return detail::criterion_elliptic_fibration(); }},
        {"torus-product-genus1", [] { return detail::criterion_torus_product(); }},
        {"p0-coefficient-identities",
         [] { return detail::criterion_coefficient_identities(); }},
        {"transform-roundtrips", [] { return detail::criterion_roundtrips(); }},
        {"meeting-invariants", [] { return detail::criterion_meeting(); }},
        {"multiple-cover-primitive", [] { return detail::criterion_multiple_cover(); }},
        {"equivariance-homogeneity", [] { return detail::criterion_symmetries(); }},
        {"ideal-generating", [] { return detail::criterion_ideal_generating(); }},
        {"tables-consistency", [&] { return detail::criterion_tables(opt.data_dir); }},
    };
    std::vector<CriterionResult> out;
    for (const auto& [slug, run] : runners) {
        if (!opt.only.empty()
            && std::find(opt.only.begin(), opt.only.end(), slug) == opt.only.end())
            continue;
        try {
            out.push_back(run());
        } catch (const std::exception& e) {
            out.push_back({slug, false, std::string("exception: ") + e.what()});
        }
    }
    return out;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.passed)
            return false;
    return true;
}

} // namespace gv4
