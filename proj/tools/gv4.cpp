// Command-line surface for the gv4 library.
//
//   gv4 [--format json|csv|markdown] <subcommand> ...
//
//   local-curve   invariants of a single CY local curve, or a conjecture grid
//   series        lattice series transforms driven by a geometry JSON file
//   partitions    plane-partition counts, listings, and the MacMahon series
//   verify-all    the full thirteen-criterion verification suite
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input.
// Reports are byte-deterministic for fixed inputs and flags regardless of
// worker count; cache statistics therefore go to stderr, never into reports.

#include "gv4/geomjson.hpp"
#include "gv4/partitions.hpp"
#include "gv4/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef GV4_DATA_DIR
#define GV4_DATA_DIR "data"
#endif

namespace {

using gv4::json;

// ---------------------------------------------------------------- reports

struct Report {
    json doc = json::object();                  // payload for --format json
    std::vector<std::string> columns;           // tabular view for csv/markdown
    std::vector<std::vector<std::string>> rows;
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void print_report(std::ostream& os, const Report& r, const std::string& format) {
    if (format == "json") {
        os << r.doc.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            os << (i ? "," : "") << csv_escape(r.columns[i]);
        os << "\n";
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << csv_escape(row[i]);
            os << "\n";
        }
        return;
    }
    // markdown
    os << "|";
    for (const std::string& c : r.columns)
        os << " " << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        os << " --- |";
    os << "\n";
    for (const auto& row : r.rows) {
        os << "|";
        for (const std::string& cell : row)
            os << " " << cell << " |";
        os << "\n";
    }
}

json meta(const char* command) {
    return json{{"schema_version", 1}, {"command", command}};
}

Report table_report(json doc, const gv4::ClassTable& t) {
    Report r;
    r.doc = std::move(doc);
    r.doc["table"] = gv4::table_to_json(t);
    r.columns = {"class", "value"};
    for (const auto& [b, v] : t)
        r.rows.push_back({gv4::class_str(b), v.str()});
    return r;
}

Report series_report(json doc, const gv4::QSeries& s) {
    Report r;
    r.doc = std::move(doc);
    r.doc["table"] = gv4::qseries_to_json(s);
    r.columns = {"class", "value"};
    for (const auto& [b, v] : s.coeffs)
        r.rows.push_back({gv4::class_str(b), v.str()});
    return r;
}

// ---------------------------------------------------------- grid caching

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string cache_line(const std::array<int, 3>& key, bool holds) {
    return std::to_string(key[0]) + " " + std::to_string(key[1]) + " "
           + std::to_string(key[2]) + " " + (holds ? "1" : "0") + "\n";
}

std::string cache_path(const std::string& dir, const std::array<int, 3>& key) {
    const std::string keytext = "grid:" + std::to_string(key[0]) + ","
                                + std::to_string(key[1]) + "," + std::to_string(key[2]);
    std::ostringstream name;
    name << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(keytext);
    return dir + "/gv4-grid-" + name.str() + ".txt";
}

struct GridOutcome {
    gv4::GridSummary summary;
    long cache_hits = 0;
    long computed = 0;
    std::vector<std::string> mismatches; // --no-cache comparison failures
};

// Same traversal as grid_check, with a per-triple verdict cache in front.
// With use_cache, hits are trusted and misses are computed and stored.  With
// compare (--no-cache and a cache directory), everything is recomputed and
// any stored verdict that disagrees is reported as a mismatch.
GridOutcome run_grid(int lo, int hi, int threads, const std::string& cache_dir,
                     bool no_cache) {
    const bool have_dir = !cache_dir.empty();
    const bool use_cache = have_dir && !no_cache;
    const bool compare = have_dir && no_cache;

    std::vector<std::array<int, 3>> keys;
    std::map<std::array<int, 3>, bool> verdict, cached;
    for (int l1 = lo; l1 <= hi; ++l1)
        for (int l2 = lo; l2 <= hi; ++l2) {
            std::array<int, 3> key{l1, l2, -2 - l1 - l2};
            std::sort(key.begin(), key.end(), std::greater<int>());
            if (!verdict.try_emplace(key, false).second)
                continue;
            keys.push_back(key);
        }

    if (have_dir)
        for (const auto& key : keys) {
            std::ifstream in(cache_path(cache_dir, key));
            if (!in)
                continue;
            std::ostringstream buf;
            buf << in.rdbuf();
            if (buf.str() == cache_line(key, true))
                cached.emplace(key, true);
            else if (buf.str() == cache_line(key, false))
                cached.emplace(key, false);
            else
                throw gv4::input_error("corrupt cache entry: " + cache_path(cache_dir, key));
        }

    std::vector<std::array<int, 3>> missing;
    for (const auto& key : keys)
        if (!use_cache || !cached.contains(key))
            missing.push_back(key);

    std::map<std::array<int, 3>, bool> fresh;
    auto evaluate = [](const std::array<int, 3>& key) {
        return gv4::check_deg2_conjecture(gv4::LocalCurveGeom::make(key[0], key[1], key[2]))
            .conjecture_holds;
    };
    if (threads <= 1 || missing.size() < 2) {
        for (const auto& key : missing)
            fresh[key] = evaluate(key);
    } else {
        std::vector<char> results(missing.size(), 0);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t idx; (idx = next.fetch_add(1)) < missing.size();)
                results[idx] = evaluate(missing[idx]) ? 1 : 0;
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
        for (std::size_t idx = 0; idx < missing.size(); ++idx)
            fresh[missing[idx]] = results[idx] != 0;
    }

    GridOutcome out;
    out.computed = static_cast<long>(fresh.size());
    if (use_cache) {
        std::filesystem::create_directories(cache_dir);
        for (const auto& [key, holds] : fresh)
            std::ofstream(cache_path(cache_dir, key)) << cache_line(key, holds);
        out.cache_hits = static_cast<long>(cached.size());
        for (const auto& [key, holds] : cached)
            verdict[key] = holds;
    }
    if (compare)
        for (const auto& [key, holds] : cached)
            if (holds != fresh.at(key))
                out.mismatches.push_back("(" + std::to_string(key[0]) + ","
                                         + std::to_string(key[1]) + ","
                                         + std::to_string(key[2]) + "): cache says "
                                         + (holds ? "holds" : "fails")
                                         + ", recomputation says "
                                         + (holds ? "fails" : "holds"));
    for (const auto& [key, holds] : fresh)
        verdict[key] = holds;

    for (int l1 = lo; l1 <= hi; ++l1)
        for (int l2 = lo; l2 <= hi; ++l2) {
            std::array<int, 3> cell{l1, l2, -2 - l1 - l2};
            std::array<int, 3> key = cell;
            std::sort(key.begin(), key.end(), std::greater<int>());
            ++out.summary.total;
            if (verdict.at(key))
                ++out.summary.passed;
            else
                out.summary.failures.push_back(cell);
        }
    return out;
}

// ------------------------------------------------------------- commands

int cmd_local_curve_single(int l1, int l2, std::optional<int> l3,
                           const std::string& format) {
    gv4::LocalCurveGeom g = l3 ? gv4::LocalCurveGeom::make(l1, l2, *l3)
                               : gv4::LocalCurveGeom::from_pair(l1, l2);
    gv4::InvariantReport rep = gv4::check_deg2_conjecture(g);

    Report r;
    r.doc = meta("local-curve");
    r.doc.update(gv4::invariant_report_to_json(rep));
    r.columns = {"field", "value"};
    r.rows.push_back({"l1", std::to_string(rep.geom.l[0])});
    r.rows.push_back({"l2", std::to_string(rep.geom.l[1])});
    r.rows.push_back({"l3", std::to_string(rep.geom.l[2])});
    r.rows.push_back({"gw01", rep.gw01.str()});
    r.rows.push_back({"gw02", rep.gw02.str()});
    r.rows.push_back({"p11", rep.p11.str()});
    r.rows.push_back({"p12", rep.p12.str()});
    r.rows.push_back({"conjecture_holds", rep.conjecture_holds ? "true" : "false"});
    std::string fc;
    for (const gv4::FixedComponent& c : rep.fixed_components)
        fc += (fc.empty() ? "" : "; ") + ("axis=" + std::to_string(c.axis))
              + " d0=" + std::to_string(c.d0) + " di=" + std::to_string(c.di);
    r.rows.push_back({"fixed_components", fc.empty() ? "none" : fc});

    print_report(std::cout, r, format);
    return rep.conjecture_holds ? 0 : 1;
}

int cmd_local_curve_grid(int lo, int hi, int threads, const std::string& cache_dir,
                         bool no_cache, const std::string& format) {
    GridOutcome out = run_grid(lo, hi, threads, cache_dir, no_cache);

    Report r;
    r.doc = meta("local-curve-grid");
    r.doc["l1_range"] = {lo, hi};
    r.doc["l2_range"] = {lo, hi};
    r.doc["total"] = out.summary.total;
    r.doc["passed"] = out.summary.passed;
    json fails = json::array();
    for (const auto& f : out.summary.failures)
        fails.push_back({f[0], f[1], f[2]});
    r.doc["failures"] = fails;
    json mism = json::array();
    for (const std::string& m : out.mismatches)
        mism.push_back(m);
    r.doc["cache_mismatches"] = mism;

    r.columns = {"field", "value"};
    r.rows.push_back({"total", std::to_string(out.summary.total)});
    r.rows.push_back({"passed", std::to_string(out.summary.passed)});
    for (const auto& f : out.summary.failures)
        r.rows.push_back({"failure", "(" + std::to_string(f[0]) + "," + std::to_string(f[1])
                                         + "," + std::to_string(f[2]) + ")"});
    for (const std::string& m : out.mismatches)
        r.rows.push_back({"cache_mismatch", m});

    print_report(std::cout, r, format);
    if (!cache_dir.empty())
        std::cerr << "cache: " << out.cache_hits << " hits, " << out.computed
                  << " computed\n";
    const bool ok = out.summary.passed == out.summary.total && out.mismatches.empty();
    return ok ? 0 : 1;
}

int cmd_series(const std::string& op, const std::string& input, const std::string& format) {
    gv4::GeomDoc doc = gv4::load_geom_file(input);
    const gv4::ClassLattice& lat = doc.geom.lattice;

    auto series_from_table = [&](const gv4::ClassTable& t) {
        gv4::QSeries s = gv4::QSeries::zero(lat);
        for (const auto& [b, v] : t)
            s.set(b, v);
        return s;
    };

    if (op == "gv0") {
        gv4::QSeries s = gv4::gw0_from_n0(lat, gv4::doc_table(doc, "n0"), doc.insertions);
        json d = meta("series-gv0");
        d["insertions"] = doc.insertions;
        print_report(std::cout, series_report(std::move(d), s), format);
        return 0;
    }
    if (op == "gv0-invert") {
        gv4::N0Table n0 = gv4::n0_from_gw0(series_from_table(gv4::doc_table(doc, "gw0")),
                                           doc.insertions);
        json d = meta("series-gv0-invert");
        d["insertions"] = doc.insertions;
        print_report(std::cout, table_report(std::move(d), n0), format);
        return 0;
    }
    if (op == "genus1") {
        gv4::MeetingTable m = gv4::meeting_invariants(doc.geom);
        gv4::QSeries s = gv4::genus1_forward(lat, gv4::doc_table(doc, "n1"), doc.geom, m);
        print_report(std::cout, series_report(meta("series-genus1"), s), format);
        return 0;
    }
    if (op == "genus1-invert") {
        gv4::MeetingTable m = gv4::meeting_invariants(doc.geom);
        gv4::N1Table n1 = gv4::n1_from_genus1(series_from_table(gv4::doc_table(doc, "gw1")),
                                              doc.geom, m);
        print_report(std::cout, table_report(meta("series-genus1-invert"), n1), format);
        return 0;
    }
    if (op == "meeting") {
        gv4::MeetingTable m = gv4::meeting_invariants(doc.geom);
        Report r;
        r.doc = meta("series-meeting");
        r.doc["meeting"] = gv4::meeting_to_json(m);
        r.columns = {"b1", "b2", "value"};
        for (const auto& [key, v] : m.values)
            r.rows.push_back({gv4::class_str(key.first), gv4::class_str(key.second),
                              v.str()});
        print_report(std::cout, r, format);
        return 0;
    }
    if (op == "macmahon-product") {
        gv4::P0Table p0 = gv4::macmahon_product(lat, gv4::doc_table(doc, "n1"));
        print_report(std::cout, table_report(meta("series-macmahon-product"), p0), format);
        return 0;
    }
    if (op == "p0-invert") {
        gv4::N1Table n1 = gv4::n1_from_p0(lat, gv4::doc_table(doc, "p0"));
        print_report(std::cout, table_report(meta("series-p0-invert"), n1), format);
        return 0;
    }
    if (op == "multiple-cover") {
        auto covers = gv4::multiple_cover_expand(lat, gv4::doc_table(doc, "n0"), doc.n_max);
        Report r;
        r.doc = meta("series-multiple-cover");
        r.doc["n_max"] = doc.n_max;
        json rows = json::array();
        r.columns = {"n", "class", "value"};
        for (const auto& [key, v] : covers) {
            rows.push_back({{"n", key.first},
                            {"class", "[" + std::to_string(key.second) + "]"},
                            {"value", v.str()}});
            r.rows.push_back({std::to_string(key.first),
                              "[" + std::to_string(key.second) + "]", v.str()});
        }
        r.doc["covers"] = rows;
        print_report(std::cout, r, format);
        return 0;
    }
    // ideal-check
    const bool ok = gv4::ideal_generating_check(lat, gv4::doc_table(doc, "p0"),
                                                gv4::doc_table(doc, "n0"),
                                                gv4::doc_table(doc, "n1"), doc.y_cutoff,
                                                doc.q_cutoff);
    Report r;
    r.doc = meta("series-ideal-check");
    r.doc["passed"] = ok;
    r.doc["y_cutoff"] = doc.y_cutoff;
    r.doc["q_cutoff"] = doc.q_cutoff;
    r.columns = {"field", "value"};
    r.rows.push_back({"passed", ok ? "true" : "false"});
    r.rows.push_back({"y_cutoff", std::to_string(doc.y_cutoff)});
    r.rows.push_back({"q_cutoff", std::to_string(doc.q_cutoff)});
    print_report(std::cout, r, format);
    return ok ? 0 : 1;
}

int cmd_partitions(std::optional<int> count, std::optional<int> series,
                   std::optional<int> list, bool compare, const std::string& format) {
    const int given = int(count.has_value()) + int(series.has_value()) + int(list.has_value());
    if (given != 1)
        throw gv4::input_error("partitions wants exactly one of --count, --series, --list");
    if (compare && !series)
        throw gv4::input_error("--compare-macmahon only applies to --series");

    if (count) {
        const long c = gv4::count_plane_partitions(*count);
        Report r;
        r.doc = meta("partitions-count");
        r.doc["m"] = *count;
        r.doc["count"] = c;
        r.columns = {"field", "value"};
        r.rows.push_back({"m", std::to_string(*count)});
        r.rows.push_back({"count", std::to_string(c)});
        print_report(std::cout, r, format);
        return 0;
    }
    if (series) {
        gv4::QSeries s = gv4::p0_local_elliptic_series(*series);
        json d = meta("partitions-series");
        d["cutoff"] = *series;
        bool ok = true;
        if (compare) {
            ok = s == gv4::macmahon(*series);
            d["matches_macmahon"] = ok;
        }
        Report r = series_report(std::move(d), s);
        if (compare)
            r.rows.push_back({"matches_macmahon", ok ? "true" : "false"});
        print_report(std::cout, r, format);
        return ok ? 0 : 1;
    }
    auto pps = gv4::list_plane_partitions(*list);
    Report r;
    r.doc = meta("partitions-list");
    r.doc["m"] = *list;
    r.doc["count"] = pps.size();
    json parts = json::array();
    r.columns = {"index", "boxes"};
    for (std::size_t i = 0; i < pps.size(); ++i) {
        json boxes = json::array();
        std::string text;
        for (const gv4::Box& b : pps[i].boxes) {
            boxes.push_back({b[0], b[1], b[2]});
            text += (text.empty() ? "" : ";")
                    + (std::to_string(b[0]) + " " + std::to_string(b[1]) + " "
                       + std::to_string(b[2]));
        }
        parts.push_back(boxes);
        r.rows.push_back({std::to_string(i), text.empty() ? "empty" : text});
    }
    r.doc["partitions"] = parts;
    print_report(std::cout, r, format);
    return 0;
}

int cmd_verify_all(int parallel, const std::string& data_dir,
                   const std::vector<std::string>& only, const std::string& format) {
    gv4::VerifyOptions opt;
    opt.threads = parallel;
    opt.data_dir = data_dir;
    opt.only = only;
    const std::vector<gv4::CriterionResult> results = gv4::run_acceptance(opt);

    Report r;
    r.doc = meta("verify-all");
    json rows = json::array();
    r.columns = {"criterion", "result", "detail"};
    for (const gv4::CriterionResult& c : results) {
        rows.push_back({{"criterion", c.slug}, {"passed", c.passed}, {"detail", c.detail}});
        r.rows.push_back({c.slug, c.passed ? "PASS" : "FAIL", c.detail});
    }
    r.doc["criteria"] = rows;
    r.doc["all_passed"] = gv4::all_passed(results);
    print_report(std::cout, r, format);
    return gv4::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact invariant calculus for Calabi-Yau 4-fold local curves"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after the subcommand too

    std::string format = "json";
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    int threads = 1;
    app.add_option("--threads", threads, "worker count for grid evaluation")
        ->check(CLI::PositiveNumber);
    std::string cache_dir;
    app.add_option("--cache-dir", cache_dir, "grid verdict cache directory");

    auto* lc = app.add_subcommand("local-curve",
                                  "degree 1 and 2 invariants of a CY local curve");
    std::optional<int> l1, l2, l3;
    lc->add_option("--l1", l1, "degree of L1");
    lc->add_option("--l2", l2, "degree of L2");
    lc->add_option("--l3", l3, "degree of L3 (must complete a CY triple)");
    std::vector<int> grid;
    lc->add_option("--grid", grid, "check the conjecture on [A,B]^2")->expected(2);
    bool no_cache = false;
    lc->add_flag("--no-cache", no_cache,
                 "recompute everything and cross-check existing cache entries");

    auto* se = app.add_subcommand("series", "lattice series transforms on a geometry file");
    std::string op, input;
    se->add_option("op", op, "transform to run")
        ->required()
        ->check(CLI::IsMember({"gv0", "gv0-invert", "genus1", "genus1-invert", "meeting",
                               "macmahon-product", "p0-invert", "multiple-cover",
                               "ideal-check"}));
    se->add_option("--input", input, "geometry JSON document")->required();

    auto* pa = app.add_subcommand("partitions", "plane partition oracles");
    std::optional<int> count, series_cutoff, list;
    pa->add_option("--count", count, "count plane partitions of size m");
    pa->add_option("--series", series_cutoff, "counting series up to the cutoff");
    pa->add_option("--list", list, "list plane partitions of size m");
    bool compare = false;
    pa->add_flag("--compare-macmahon", compare,
                 "check the series against the MacMahon expansion");

    auto* ve = app.add_subcommand("verify-all", "run the full verification suite");
    int parallel = 1;
    ve->add_option("--parallel", parallel, "worker count for grid evaluation")
        ->check(CLI::PositiveNumber);
    std::string data_dir = GV4_DATA_DIR;
    ve->add_option("--data", data_dir, "directory holding literature_values.csv");
    std::vector<std::string> only;
    ve->add_option("--only", only, "run just the named criteria")
        ->check(CLI::IsMember(gv4::criterion_slugs()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (lc->parsed()) {
            if (!grid.empty()) {
                if (l1 || l2 || l3)
                    throw gv4::input_error("--grid excludes --l1/--l2/--l3");
                if (cache_dir.empty())
                    if (const char* env = std::getenv("GV4_CACHE_DIR"))
                        cache_dir = env;
                return cmd_local_curve_grid(grid[0], grid[1], threads, cache_dir, no_cache,
                                            format);
            }
            if (!l1 || !l2)
                throw gv4::input_error("local-curve wants --l1 and --l2 (or --grid A B)");
            return cmd_local_curve_single(*l1, *l2, l3, format);
        }
        if (se->parsed())
            return cmd_series(op, input, format);
        if (pa->parsed())
            return cmd_partitions(count, series_cutoff, list, compare, format);
        return cmd_verify_all(parallel, data_dir, only, format);
    } catch (const gv4::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const gv4::math_error& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
