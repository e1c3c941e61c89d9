#include <catch2/catch_amalgamated.hpp>

#include "gv4/qseries.hpp"

#include <random>

using gv4::BigRat;
using gv4::ClassLattice;
using gv4::ClassVec;
using gv4::QSeries;

TEST_CASE("lattice validation") {
    CHECK_THROWS_AS(ClassLattice::make(0, {}, 4), gv4::input_error);
    CHECK_THROWS_AS(ClassLattice::make(2, {1}, 4), gv4::input_error);
    CHECK_THROWS_AS(ClassLattice::make(1, {0}, 4), gv4::input_error);
    CHECK_THROWS_AS(ClassLattice::make(1, {1}, -1), gv4::input_error);

    ClassLattice lat = ClassLattice::make(2, {1, 2}, 6);
    CHECK(lat.deg({3, 1}) == 5);
    CHECK_THROWS_AS(lat.deg({1}), gv4::input_error);
}

TEST_CASE("effective class enumeration is ordered by degree then lex") {
    ClassLattice lat = ClassLattice::make(2, {1, 1}, 2);
    std::vector<ClassVec> expect{{0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    CHECK(gv4::effective_classes(lat) == expect);

    std::vector<ClassVec> with_zero = gv4::effective_classes(lat, true);
    REQUIRE(with_zero.size() == 6);
    CHECK(with_zero.front() == ClassVec{0, 0});
}

TEST_CASE("series arithmetic truncates at the cutoff") {
    ClassLattice lat = gv4::rank1_lattice(3);
    QSeries x = QSeries::zero(lat);
    x.set({1}, BigRat(2));
    x.set({2}, BigRat(-1));
    QSeries p = gv4::qs_mul(x, x);
    CHECK(p.coeff({2}) == BigRat(4));
    CHECK(p.coeff({3}) == BigRat(-4));
    CHECK(p.coeff({4}).is_zero()); // beyond cutoff, dropped

    CHECK_THROWS_AS(x.set({4}, BigRat(1)), gv4::input_error);
    CHECK_THROWS_AS(x.set({-1}, BigRat(1)), gv4::input_error);

    ClassLattice other = gv4::rank1_lattice(5);
    CHECK_THROWS_AS(gv4::qs_mul(x, QSeries::one(other)), gv4::input_error);
}

TEST_CASE("exp and log are mutually inverse") {
    ClassLattice lat = ClassLattice::make(2, {1, 1}, 5);
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 10; ++trial) {
        QSeries x = QSeries::zero(lat);
        for (const ClassVec& b : gv4::effective_classes(lat)) {
            long v = static_cast<long>(rng() % 11) - 5;
            x.add(b, BigRat(v, 1 + static_cast<long>(rng() % 3)));
        }
        QSeries e = gv4::qs_exp(x);
        CHECK(gv4::qs_log(e) == x);
    }
    QSeries bad = QSeries::one(lat);
    CHECK_THROWS_AS(gv4::qs_exp(bad), gv4::input_error);
    CHECK_THROWS_AS(gv4::qs_log(QSeries::zero(lat)), gv4::input_error);
}

TEST_CASE("integer powers, including negative ones") {
    ClassLattice lat = gv4::rank1_lattice(6);
    QSeries x = QSeries::one(lat);
    x.set({1}, BigRat(1));
    QSeries inv = gv4::qs_pow(x, -1);
    CHECK(gv4::qs_mul(inv, x) == QSeries::one(lat));
    for (long k = 1; k <= 6; ++k)
        CHECK(inv.coeff({k}) == BigRat(k % 2 == 0 ? 1 : -1));
    CHECK(gv4::qs_pow(x, 3).coeff({2}) == BigRat(3));
    CHECK(gv4::qs_pow(gv4::qs_pow(x, -4), -1) == gv4::qs_pow(x, 4));
}

TEST_CASE("sigma divisor sums") {
    CHECK(gv4::sigma(1) == 1);
    CHECK(gv4::sigma(6) == 12);
    CHECK(gv4::sigma(12) == 28);
    CHECK_THROWS_AS(gv4::sigma(0), gv4::input_error);
}

TEST_CASE("MacMahon expansion") {
    const long expect[] = {1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500, 859, 1479, 2485, 4167};
    QSeries m = gv4::macmahon(14);
    for (long k = 0; k <= 14; ++k)
        CHECK(m.coeff({k}) == BigRat(expect[k]));
    CHECK(gv4::macmahon(0) == QSeries::one(gv4::rank1_lattice(0)));
    CHECK_THROWS_AS(gv4::macmahon(-1), gv4::input_error);
}

TEST_CASE("substituting q^beta into a rank-1 series") {
    ClassLattice target = ClassLattice::make(2, {1, 1}, 6);
    QSeries src = gv4::macmahon(6);
    QSeries sub = gv4::qs_substitute_power(src, {1, 1}, target);
    CHECK(sub.coeff({0, 0}) == BigRat(1));
    CHECK(sub.coeff({2, 2}) == BigRat(3));
    CHECK(sub.coeff({3, 3}) == BigRat(6));
    CHECK(sub.coeff({1, 0}).is_zero());
    CHECK(sub.coeff({4, 4}).is_zero()); // degree 8 exceeds the target cutoff

    CHECK_THROWS_AS(gv4::qs_substitute_power(src, {0, 0}, target), gv4::input_error);
    QSeries rank2 = QSeries::one(target);
    CHECK_THROWS_AS(gv4::qs_substitute_power(rank2, {1, 1}, target), gv4::input_error);
}
