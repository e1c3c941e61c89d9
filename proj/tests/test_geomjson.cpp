#include "gv4/geomjson.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>

using namespace gv4;

namespace {

const std::string kGeomDir = std::string(GV4_SOURCE_DIR) + "/data/geom";

QSeries table_as_series(const ClassLattice& lat, const ClassTable& t) {
    QSeries s = QSeries::zero(lat);
    for (const auto& [b, v] : t)
        s.set(b, v);
    return s;
}

} // namespace

TEST_CASE("scalar and class parsing", "[geomjson]") {
    CHECK(rat_from_json(json(-20)) == BigRat(-20));
    CHECK(rat_from_json(json("3/4")) == BigRat(3, 4));
    CHECK_THROWS_AS(rat_from_json(json(1.5)), input_error);
    CHECK_THROWS_AS(rat_from_json(json::array()), input_error);

    CHECK(class_from_key("[1,0,-2]", 3) == ClassVec{1, 0, -2});
    CHECK_THROWS_AS(class_from_key("1,0", 2), input_error);
    CHECK_THROWS_AS(class_from_key("[1,x]", 2), input_error);
    CHECK_THROWS_AS(class_from_key("[1,2]", 3), input_error);
    CHECK_THROWS_AS(class_from_key("[]", 1), input_error);
}

TEST_CASE("minimal document gets defaults", "[geomjson]") {
    GeomDoc doc = geomdoc_from_json(json::parse(R"({"rank":1,"degree":[1],"cutoff":4})"));
    CHECK(doc.geom.lattice.rank == 1);
    CHECK(doc.geom.lattice.cutoff == 4);
    CHECK(doc.geom.basis_size == 0);
    CHECK(doc.tables.empty());
    CHECK(doc.insertions == 0);
    CHECK(doc.y_cutoff == 3);
    CHECK(doc.q_cutoff == 4);
    CHECK(doc.n_max == 4);
}

TEST_CASE("document validation errors", "[geomjson]") {
    CHECK_THROWS_AS(geomdoc_from_json(json::parse(R"({"degree":[1],"cutoff":4})")),
                    input_error);
    CHECK_THROWS_AS(geomdoc_from_json(json::parse(
                        R"({"rank":1,"degree":[1],"cutoff":4,"n1":{"[1,1]":1}})")),
                    input_error);
    CHECK_THROWS_AS(geomdoc_from_json(json::parse(
                        R"({"rank":1,"degree":[1],"cutoff":4,"n1":{"[9]":1}})")),
                    input_error);
    CHECK_THROWS_AS(geomdoc_from_json(json::parse(
                        R"({"rank":1,"degree":[1],"cutoff":4,"y_cutoff":-1})")),
                    input_error);
    CHECK_THROWS_AS(geomdoc_from_json(json::parse(
                        R"({"rank":1,"degree":[1],"cutoff":4,"kunneth":[[1,0]],"basis_size":2})")),
                    input_error);
    CHECK_THROWS_AS(load_geom_file("/nonexistent/geom.json"), input_error);

    const std::string bad = "/tmp/gv4_bad_geom.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_MATCHES(load_geom_file(bad), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("invalid JSON")));
}

TEST_CASE("rank-1 toy document is internally consistent", "[geomjson]") {
    GeomDoc doc = load_geom_file(kGeomDir + "/rank1_toy.json");
    const ClassLattice& lat = doc.geom.lattice;
    REQUIRE(lat.rank == 1);
    REQUIRE(lat.cutoff == 4);
    CHECK(doc.insertions == 1);
    CHECK(doc.geom.pairing({1}, {1}) == BigRat(9));
    CHECK(doc_table(doc, "n1")
          == ClassTable{{{1}, BigRat(2)}, {{3}, BigRat(-1)}});
    CHECK_THROWS_MATCHES(doc_table(doc, "gw9"), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("gw9")));

    // every stored series matches what the transforms produce from its inputs
    CHECK(gw0_from_n0(lat, doc_table(doc, "n0"), doc.insertions)
          == table_as_series(lat, doc_table(doc, "gw0")));
    CHECK(macmahon_product(lat, doc_table(doc, "n1")) == doc_table(doc, "p0"));
    MeetingTable m = meeting_invariants(doc.geom);
    CHECK(meeting_value(m, {1}, {1}) == BigRat(14));
    CHECK(genus1_forward(lat, doc_table(doc, "n1"), doc.geom, m)
          == table_as_series(lat, doc_table(doc, "gw1")));
}

TEST_CASE("shipped fixtures parse and satisfy their transforms", "[geomjson]") {
    GeomDoc ell = load_geom_file(kGeomDir + "/elliptic_fibration.json");
    CHECK(n1_from_p0(ell.geom.lattice, doc_table(ell, "p0")) == doc_table(ell, "n1"));

    GeomDoc prod = load_geom_file(kGeomDir + "/rank2_product.json");
    REQUIRE(prod.geom.lattice.rank == 2);
    CHECK(prod.geom.basis_size == 2);
    CHECK(prod.geom.pairing({1, 0}, {0, 1}) == BigRat(1));
    CHECK(prod.geom.pairing({1, 0}, {1, 0}) == BigRat(0));
    MeetingTable m = meeting_invariants(prod.geom);
    // diagonal primitive meeting = n0(c2) + Kunneth self-pairing
    CHECK(meeting_value(m, {1, 0}, {1, 0}) == BigRat(24));
    CHECK(meeting_value(m, {1, 0}, {0, 1}) == BigRat(1));
}

TEST_CASE("emission helpers produce canonical JSON", "[geomjson]") {
    ClassTable t{{{1}, BigRat(2)}, {{2}, BigRat(-7, 3)}};
    CHECK(table_to_json(t).dump() == R"({"[1]":"2","[2]":"-7/3"})");

    QSeries mm = macmahon(3);
    CHECK(qseries_to_json(mm).dump() == R"({"[0]":"1","[1]":"1","[2]":"3","[3]":"6"})");

    MeetingTable m;
    m.values[{ClassVec{1}, ClassVec{2}}] = BigRat(5);
    CHECK(meeting_to_json(m).dump()
          == R"([{"b1":"[1]","b2":"[2]","value":"5"}])");

    InvariantReport r = check_deg2_conjecture(LocalCurveGeom::make(1, -1, -2));
    json rj = invariant_report_to_json(r);
    CHECK(rj.at("l") == json::array({1, -1, -2}));
    CHECK(rj.at("conjecture_holds").get<bool>());
    CHECK(rj.at("gw01").get<std::string>() == rj.at("p11").get<std::string>());
    CHECK(rj.at("fixed_components").size() == 1);
    CHECK(rj.at("fixed_components")[0].at("axis").get<int>() == 1);
}
