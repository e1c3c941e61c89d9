#include <catch2/catch_amalgamated.hpp>

#include "gv4/localcurve.hpp"

#include <array>
#include <vector>

using gv4::BigRat;
using gv4::FixedComponent;
using gv4::LinForm;
using gv4::LocalCurveGeom;
using gv4::Poly2;
using gv4::RatFunc;

namespace {

RatFunc mono(long num, long den, int e1, int e2, int e3) {
    return gv4::ratfunc_from_monomial(BigRat(num, den), e1, e2, e3);
}

// Independent truncated-series engine for the printed residue formulas.
// Factors (a*lam1 + b*lam2 + h)^e are expanded with no binomial coefficients:
// repeated multiplication for e >= 0 and the inverse recurrence
// b_0 = c^-1, b_j = -b_{j-1} c^-1 for e < 0.
using SeriesVec = std::vector<RatFunc>;

SeriesVec oracle_mul(const SeriesVec& x, const SeriesVec& y) {
    SeriesVec out(x.size(), RatFunc::zero());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; i + j < x.size(); ++j)
            out[i + j] = out[i + j] + x[i] * y[j];
    return out;
}

SeriesVec oracle_factor(long a, long b, int e, std::size_t n) {
    RatFunc c = RatFunc::make(BigRat(1), Poly2::form(LinForm{a, b}), {});
    SeriesVec out(n, RatFunc::zero());
    out[0] = RatFunc::one();
    SeriesVec base(n, RatFunc::zero());
    if (e >= 0) {
        base[0] = c;
        if (n > 1)
            base[1] = RatFunc::one();
    } else {
        RatFunc cinv = gv4::ratfunc_pow(c, -1);
        base[0] = cinv;
        for (std::size_t j = 1; j < n; ++j)
            base[j] = -(base[j - 1] * cinv);
    }
    for (int t = 0; t < (e >= 0 ? e : -e); ++t)
        out = oracle_mul(out, base);
    return out;
}

struct OracleFactor {
    long a, b;
    int e;
};

RatFunc oracle_residue(const std::vector<OracleFactor>& factors, int k) {
    const std::size_t n = static_cast<std::size_t>(k);
    SeriesVec prod(n, RatFunc::zero());
    prod[0] = RatFunc::one();
    for (const auto& f : factors)
        prod = oracle_mul(prod, oracle_factor(f.a, f.b, f.e, n));
    return prod[static_cast<std::size_t>(k - 1)];
}

// A(l1,l2,l3,k) exactly as printed, factor by factor:
// h^-k (h-lam1)^2 (lam2+h)^{k+l2} (lam3+h)^{k+l3}
//   (lam2-lam1+h)^{l1-l2-k} (lam3-lam1+h)^{l1-l3-k} (h-2lam1)^{k-2-2l1}
RatFunc printed_A(int l1, int l2, int l3, int k) {
    return oracle_residue({{-1, 0, 2},
                           {0, 1, k + l2},
                           {-1, -1, k + l3},
                           {-1, 1, l1 - l2 - k},
                           {-2, -1, l1 - l3 - k},
                           {-2, 0, k - 2 - 2 * l1}},
                          k);
}

// B(l1,l2,l3,k) as printed: the thickened axis is the second one.
RatFunc printed_B(int l1, int l2, int l3, int k) {
    return oracle_residue({{0, -1, 2},
                           {1, 0, k + l1},
                           {-1, -1, k + l3},
                           {1, -1, l2 - l1 - k},
                           {-1, -2, l2 - l3 - k},
                           {0, -2, k - 2 - 2 * l2}},
                          k);
}

} // namespace

TEST_CASE("local curve geometry validates the Calabi-Yau constraint") {
    LocalCurveGeom g = LocalCurveGeom::make(2, -1, -3);
    CHECK(g.l == std::array<int, 3>{2, -1, -3});
    CHECK(LocalCurveGeom::from_pair(2, -1).l == g.l);
    CHECK_THROWS_AS(LocalCurveGeom::make(1, 1, 1), gv4::input_error);
    CHECK_THROWS_AS(LocalCurveGeom::make(0, 0, 0), gv4::input_error);
}

TEST_CASE("degree one invariants agree and match closed forms") {
    // (-1,-1,0): both equal 1/lam3 = -1/(lam1+lam2)
    RatFunc inv_l3 = RatFunc::make(BigRat(-1), Poly2::one(), {{LinForm{1, 1}, 1}});
    CHECK(gv4::gw_degree1(LocalCurveGeom::make(-1, -1, 0)) == inv_l3);
    CHECK(gv4::pair_degree1(LocalCurveGeom::make(-1, -1, 0)) == inv_l3);

    // (-2,0,0): lam1 / (lam2 lam3)
    RatFunc expect = RatFunc::make(BigRat(-1), Poly2::form(LinForm{1, 0}),
                                   {{LinForm{0, 1}, 1}, {LinForm{1, 1}, 1}});
    CHECK(gv4::gw_degree1(LocalCurveGeom::make(-2, 0, 0)) == expect);
    CHECK(gv4::pair_degree1(LocalCurveGeom::make(-2, 0, 0)) == expect);

    for (int l1 = -4; l1 <= 4; ++l1)
        for (int l2 = -4; l2 <= 4; ++l2) {
            LocalCurveGeom g = LocalCurveGeom::from_pair(l1, l2);
            CHECK(gv4::pair_degree1(g) == gv4::gw_degree1(g));
        }
}

TEST_CASE("degree two Gromov-Witten closed form") {
    // (-1,-1,0): all S terms and all but one cross term vanish, leaving
    // (1/8) lam1 lam2 lam3^-1 * 1/(lam1 lam2) = (1/8)/lam3
    RatFunc expect0 = RatFunc::make(BigRat(-1, 8), Poly2::one(), {{LinForm{1, 1}, 1}});
    CHECK(gv4::ratfunc_eq(gv4::gw_degree2(LocalCurveGeom::make(-1, -1, 0)), expect0));

    // (2,-1,-3): (lam1+lam2)^3 (5lam1^3 - 5lam1^2 lam2 - 10lam1 lam2^2 - 3lam2^3)
    //            / (8 lam1^7)
    Poly2 cubic = Poly2::monomial(BigRat(5), 3, 0);
    cubic += Poly2::monomial(BigRat(-5), 2, 1);
    cubic += Poly2::monomial(BigRat(-10), 1, 2);
    cubic += Poly2::monomial(BigRat(-3), 0, 3);
    RatFunc expect = RatFunc::make(BigRat(1, 8), Poly2::form(LinForm{1, 1}).pow(3) * cubic,
                                   {{LinForm{1, 0}, 7}});
    CHECK(gv4::ratfunc_eq(gv4::gw_degree2(LocalCurveGeom::make(2, -1, -3)), expect));
}

TEST_CASE("residue term preconditions") {
    LocalCurveGeom g = LocalCurveGeom::make(2, -1, -3);
    CHECK_THROWS_AS(gv4::residue_term(g, 0, 1), gv4::input_error);
    CHECK_THROWS_AS(gv4::residue_term(g, 4, 1), gv4::input_error);
    CHECK_THROWS_AS(gv4::residue_term(g, 1, 0), gv4::input_error);
    CHECK_THROWS_AS(gv4::residue_term(g, 1, 1), gv4::input_error); // parity
    CHECK_THROWS_AS(gv4::residue_term(g, 1, 4), gv4::input_error); // k > l1
    CHECK_THROWS_AS(gv4::residue_term(g, 2, 1), gv4::input_error); // l2 < 1
}

TEST_CASE("residue term worked examples") {
    // l = (1,-1,-2), axis 1, k = 1:
    // -(lam1-lam2)(2lam1+lam2)^2 / (8 lam1 (lam1+lam2))
    RatFunc r1 = gv4::residue_term(LocalCurveGeom::make(1, -1, -2), 1, 1);
    RatFunc e1 = RatFunc::make(BigRat(-1, 8),
                               Poly2::form(LinForm{1, -1}) * Poly2::form(LinForm{2, 1}).pow(2),
                               {{LinForm{1, 0}, 1}, {LinForm{1, 1}, 1}});
    CHECK(gv4::ratfunc_eq(r1, e1));

    // l = (2,-1,-3), axis 1, k = 2:
    // -(2lam1+lam2)^2 (lam1^2 - lam1 lam2 - 3lam2^2) / (8 lam1 (lam1+lam2)^2)
    RatFunc r2 = gv4::residue_term(LocalCurveGeom::make(2, -1, -3), 1, 2);
    Poly2 quad = Poly2::monomial(BigRat(1), 2, 0);
    quad += Poly2::monomial(BigRat(-1), 1, 1);
    quad += Poly2::monomial(BigRat(-3), 0, 2);
    RatFunc e2 = RatFunc::make(BigRat(-1, 8), Poly2::form(LinForm{2, 1}).pow(2) * quad,
                               {{LinForm{1, 0}, 1}, {LinForm{1, 1}, 2}});
    CHECK(gv4::ratfunc_eq(r2, e2));
}

TEST_CASE("residue term matches the printed formulas on a sweep") {
    for (int l1 = -4; l1 <= 4; ++l1)
        for (int l2 = -4; l2 <= 4; ++l2) {
            const int l3 = -2 - l1 - l2;
            LocalCurveGeom g = LocalCurveGeom::make(l1, l2, l3);
            for (int k = l1 % 2 == 0 ? 2 : 1; k <= l1; k += 2)
                REQUIRE(gv4::ratfunc_eq(gv4::residue_term(g, 1, k), printed_A(l1, l2, l3, k)));
            for (int k = l2 % 2 == 0 ? 2 : 1; k <= l2; k += 2)
                REQUIRE(gv4::ratfunc_eq(gv4::residue_term(g, 2, k), printed_B(l1, l2, l3, k)));
        }
}

TEST_CASE("pair degree two worked example and vanishing") {
    // (2,-1,-3): (lam1+lam2)^2 (2lam1+lam2)^2 (lam1^2 - lam1 lam2 - 3lam2^2)
    //            / (8 lam1^7)
    Poly2 quad = Poly2::monomial(BigRat(1), 2, 0);
    quad += Poly2::monomial(BigRat(-1), 1, 1);
    quad += Poly2::monomial(BigRat(-3), 0, 2);
    RatFunc expect = RatFunc::make(
        BigRat(1, 8),
        Poly2::form(LinForm{1, 1}).pow(2) * Poly2::form(LinForm{2, 1}).pow(2) * quad,
        {{LinForm{1, 0}, 7}});
    CHECK(gv4::ratfunc_eq(gv4::pair_degree2(LocalCurveGeom::make(2, -1, -3)), expect));

    // no thickening direction: empty k-sums, identically zero
    CHECK(gv4::pair_degree2(LocalCurveGeom::make(-1, -1, 0)).is_zero());
    CHECK(gv4::pair_degree2(LocalCurveGeom::make(-2, 0, 0)).is_zero());
    CHECK(gv4::pair_degree2(LocalCurveGeom::make(0, 0, -2)).is_zero());
}

TEST_CASE("degree two fixed components") {
    std::vector<FixedComponent> fc = gv4::deg2_fixed_components(LocalCurveGeom::make(5, -3, -4));
    std::vector<FixedComponent> expect{{1, 0, 4}, {1, 1, 3}, {1, 2, 2}};
    CHECK(fc == expect);

    CHECK(gv4::deg2_fixed_components(LocalCurveGeom::make(1, -1, -2)) ==
          std::vector<FixedComponent>{{1, 0, 0}});
    CHECK(gv4::deg2_fixed_components(LocalCurveGeom::make(-1, -1, 0)).empty());

    // empty exactly when the pair sum ranges over no k at all
    for (int l1 = -3; l1 <= 3; ++l1)
        for (int l2 = -3; l2 <= 3; ++l2) {
            LocalCurveGeom g = LocalCurveGeom::from_pair(l1, l2);
            const bool no_k = g.l[0] < 1 && g.l[1] < 1 && g.l[2] < 1;
            CHECK(gv4::deg2_fixed_components(g).empty() == no_k);
        }
}

TEST_CASE("degree two conjecture on known cases") {
    const std::array<std::array<int, 3>, 7> cases{{{-1, -1, 0},
                                                   {0, 0, -2},
                                                   {1, -1, -2},
                                                   {2, -1, -3},
                                                   {-1, 2, -3},
                                                   {3, 2, -7},
                                                   {7, -4, -5}}};
    for (const auto& l : cases) {
        gv4::InvariantReport r =
            gv4::check_deg2_conjecture(LocalCurveGeom::make(l[0], l[1], l[2]));
        INFO("l = (" << l[0] << ", " << l[1] << ", " << l[2] << ")");
        REQUIRE(r.conjecture_holds);
        CHECK(r.gw01 == gv4::gw_degree1(r.geom));
        CHECK(r.fixed_components == gv4::deg2_fixed_components(r.geom));
    }
}

TEST_CASE("invariants are equivariant under relabeling the axes") {
    LocalCurveGeom g = LocalCurveGeom::make(2, -1, -3);

    // swap axes 1 and 2: substitute lam1 <-> lam2
    LocalCurveGeom gs = LocalCurveGeom::make(-1, 2, -3);
    auto swapped = [](const RatFunc& x) {
        return gv4::ratfunc_subst_linear(x, BigRat(0), BigRat(1), BigRat(1), BigRat(0));
    };
    CHECK(gv4::ratfunc_eq(gv4::gw_degree2(gs), swapped(gv4::gw_degree2(g))));
    CHECK(gv4::ratfunc_eq(gv4::pair_degree2(gs), swapped(gv4::pair_degree2(g))));

    // cycle to (l2,l3,l1): lam1 -> lam3 = -lam1-lam2, lam2 -> lam1
    LocalCurveGeom gc = LocalCurveGeom::make(-1, -3, 2);
    auto cycled = [](const RatFunc& x) {
        return gv4::ratfunc_subst_linear(x, BigRat(-1), BigRat(-1), BigRat(1), BigRat(0));
    };
    CHECK(gv4::ratfunc_eq(gv4::gw_degree1(gc), cycled(gv4::gw_degree1(g))));
    CHECK(gv4::ratfunc_eq(gv4::gw_degree2(gc), cycled(gv4::gw_degree2(g))));
    CHECK(gv4::ratfunc_eq(gv4::pair_degree2(gc), cycled(gv4::pair_degree2(g))));
}

TEST_CASE("invariants are homogeneous of degree -1") {
    const std::array<BigRat, 5> ts{BigRat(2), BigRat(3), BigRat(1, 2), BigRat(5, 3), BigRat(-2)};
    for (const auto& l : {std::array<int, 3>{2, -1, -3}, std::array<int, 3>{1, -1, -2}}) {
        LocalCurveGeom g = LocalCurveGeom::make(l[0], l[1], l[2]);
        for (const RatFunc& f : {gv4::gw_degree1(g), gv4::gw_degree2(g), gv4::pair_degree2(g)})
            for (const BigRat& t : ts) {
                RatFunc scaled =
                    gv4::ratfunc_subst_linear(f, t, BigRat(0), BigRat(0), t);
                CHECK(gv4::ratfunc_eq(scaled, RatFunc::from_rat(t.inv()) * f));
            }
    }
}

TEST_CASE("grid check") {
    gv4::GridSummary s = gv4::grid_check(-1, 0, -1, 0);
    CHECK(s.total == 4);
    CHECK(s.passed == 4);
    CHECK(s.failures.empty());

    gv4::GridSummary empty = gv4::grid_check(1, 0, 1, 0);
    CHECK(empty.total == 0);
    CHECK(empty.passed == 0);

    gv4::GridSummary serial = gv4::grid_check(-2, 1, -2, 1, 1);
    gv4::GridSummary parallel = gv4::grid_check(-2, 1, -2, 1, 3);
    CHECK(serial.total == 16);
    CHECK(serial.passed == 16);
    CHECK(parallel.total == serial.total);
    CHECK(parallel.passed == serial.passed);
    CHECK(parallel.failures == serial.failures);
}
