#include "gv4/tables.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace gv4;

namespace {

const std::string kDataFile = std::string(GV4_SOURCE_DIR) + "/data/literature_values.csv";

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const CheckResult& find_check(const std::vector<CheckResult>& checks, const std::string& name) {
    for (const CheckResult& c : checks)
        if (c.name == name)
            return c;
    FAIL("no check named " + name);
    static CheckResult dummy;
    return dummy;
}

} // namespace

TEST_CASE("shipped value file loads with the expected shape", "[tables]") {
    auto records = load_value_records(kDataFile);
    REQUIRE(records.size() == 38);

    CHECK(records.front()
          == ValueRecord{"Kool-Monavari", "local-P2", "P0", {1}, BigRat(0)});
    CHECK(records[13] == ValueRecord{"Kool-Monavari", "local-P1xP1", "P1_gamma", {1, 0},
                                     BigRat(1)});

    int sextic_rows = 0;
    for (const ValueRecord& r : records)
        if (r.geometry == "sextic") {
            ++sextic_rows;
            CHECK(r.value.is_zero());
        }
    CHECK(sextic_rows == 4);
}

TEST_CASE("shipped value file round-trips byte-identically", "[tables]") {
    const std::string original = slurp(kDataFile);
    auto records = parse_value_records(original);
    CHECK(serialize_value_records(records) == original);
}

TEST_CASE("serialization format is canonical", "[tables]") {
    CHECK(serialize_value_records({}) == "source,geometry,kind,class,value\n");
    std::vector<ValueRecord> one{{"src", "geom", "n0", {2, -1}, BigRat(1, 3)}};
    CHECK(serialize_value_records(one) == "source,geometry,kind,class,value\n"
                                          "src,geom,n0,2;-1,1/3\n");
    CHECK(parse_value_records(serialize_value_records(one)) == one);
}

TEST_CASE("malformed rows are rejected with line numbers", "[tables]") {
    const std::string header = "source,geometry,kind,class,value\n";

    CHECK_THROWS_MATCHES(parse_value_records("bogus header\n"), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("line 1")));
    CHECK_THROWS_MATCHES(parse_value_records(header + "a,b,P0,1\n"), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("expected 5 fields")));
    CHECK_THROWS_MATCHES(parse_value_records(header + "a,b,P7,1,0\n"), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("unknown kind \"P7\"")));
    CHECK_THROWS_MATCHES(parse_value_records(header + "a,b,P0,1;x,0\n"), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("invalid class entry")));
    CHECK_THROWS_MATCHES(parse_value_records(header + "a,b,n0,1,zzz\n"), input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("line 2: invalid value")));
    CHECK_THROWS_MATCHES(parse_value_records(header + "a,b,P0,1,0\na,b,n1,2,1/2\n"),
                         input_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring(
                                 "line 3: kind n1 requires an integer value")));
    CHECK_THROWS_AS(load_value_records("/nonexistent/values.csv"), input_error);

    // rationals stay legal for n0 rows
    CHECK_NOTHROW(parse_value_records(header + "a,b,n0,1,1/2\n"));
}

TEST_CASE("consistency checks pass on shipped data", "[tables]") {
    auto records = load_value_records(kDataFile);
    auto checks = run_consistency_checks(records);
    REQUIRE(checks.size() == 4);
    for (const CheckResult& c : checks) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
    CHECK(checks[0].name == "elliptic-fibration-n1");
    CHECK(checks[1].name == "del-pezzo-degree1");
    CHECK(checks[2].name == "sextic-vanishing");
    CHECK(checks[3].name == "fiber-class-macmahon");
}

TEST_CASE("corrupted records are reported, not thrown", "[tables]") {
    auto records = load_value_records(kDataFile);

    SECTION("sextic vanishing broken") {
        for (ValueRecord& r : records)
            if (r.geometry == "sextic" && r.kind == "P0" && r.cls == ClassVec{1})
                r.value = BigRat(7);
        auto checks = run_consistency_checks(records);
        const CheckResult& c = find_check(checks, "sextic-vanishing");
        CHECK_FALSE(c.passed);
        CHECK(c.detail.find("[1]") != std::string::npos);
        CHECK(c.detail.find("7") != std::string::npos);
        CHECK(find_check(checks, "del-pezzo-degree1").passed);
    }

    SECTION("fiber series coefficient broken") {
        for (ValueRecord& r : records)
            if (r.geometry == "elliptic-fibration" && r.kind == "P0" && r.cls == ClassVec{2})
                r.value = BigRat(149);
        auto checks = run_consistency_checks(records);
        CHECK_FALSE(find_check(checks, "elliptic-fibration-n1").passed);
        CHECK_FALSE(find_check(checks, "fiber-class-macmahon").passed);
        CHECK(find_check(checks, "sextic-vanishing").passed);
    }

    SECTION("degree-1 identity broken") {
        for (ValueRecord& r : records)
            if (r.geometry == "local-P2" && r.kind == "n0")
                r.value = BigRat(4);
        auto checks = run_consistency_checks(records);
        const CheckResult& c = find_check(checks, "del-pezzo-degree1");
        CHECK_FALSE(c.passed);
        CHECK(c.detail.find("local-P2") != std::string::npos);
    }

    SECTION("missing geometry is a failure, not a crash") {
        std::vector<ValueRecord> pruned;
        for (const ValueRecord& r : records)
            if (r.geometry != "quintic-x-E")
                pruned.push_back(r);
        auto checks = run_consistency_checks(pruned);
        CHECK_FALSE(find_check(checks, "fiber-class-macmahon").passed);
    }
}
