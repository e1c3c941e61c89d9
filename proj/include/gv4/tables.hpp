#pragma once

// Published invariant values shipped as CSV data, plus the consistency
// checks tying them back to the transform machinery.  Format: header
// "source,geometry,kind,class,value", class as semicolon-separated integers,
// value as an integer or "p/q".

#include "gv4/transforms.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace gv4 {

struct ValueRecord {
    std::string source;
    std::string geometry;
    std::string kind; // P0 | P1_gamma | n0 | n1
    ClassVec cls;
    BigRat value;

    friend bool operator==(const ValueRecord&, const ValueRecord&) = default;
};

namespace detail {

inline bool known_kind(const std::string& k) {
    return k == "P0" || k == "P1_gamma" || k == "n0" || k == "n1";
}

inline ClassVec class_from_csv(const std::string& text, int line) {
    ClassVec out;
    std::istringstream in(text);
    std::string piece;
    while (std::getline(in, piece, ';')) {
        try {
            std::size_t used = 0;
            long v = std::stol(piece, &used);
            if (used != piece.size())
                throw std::invalid_argument(piece);
            out.push_back(v);
        } catch (const std::exception&) {
            throw input_error("line " + std::to_string(line) + ": invalid class entry \""
                              + piece + "\"");
        }
    }
    if (out.empty())
        throw input_error("line " + std::to_string(line) + ": empty class tuple");
    return out;
}

} // namespace detail

inline std::vector<ValueRecord> parse_value_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<ValueRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line != "source,geometry,kind,class,value")
                throw input_error("line 1: expected header source,geometry,kind,class,value");
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ','))
            fields.push_back(field);
        if (fields.size() != 5)
            throw input_error("line " + std::to_string(lineno) + ": expected 5 fields, got "
                              + std::to_string(fields.size()));
        ValueRecord r;
        r.source = fields[0];
        r.geometry = fields[1];
        r.kind = fields[2];
        if (!detail::known_kind(r.kind))
            throw input_error("line " + std::to_string(lineno) + ": unknown kind \"" + r.kind
                              + "\"");
        r.cls = detail::class_from_csv(fields[3], lineno);
        try {
            r.value = BigRat::parse(fields[4]);
        } catch (const input_error&) {
            throw input_error("line " + std::to_string(lineno) + ": invalid value \""
                              + fields[4] + "\"");
        }
        if (r.kind != "n0" && !r.value.is_integer())
            throw input_error("line " + std::to_string(lineno) + ": kind " + r.kind
                              + " requires an integer value, got " + r.value.str());
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ValueRecord> load_value_records(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open value table: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_value_records(buf.str());
}

inline std::string serialize_value_records(const std::vector<ValueRecord>& records) {
    std::string out = "source,geometry,kind,class,value\n";
    for (const ValueRecord& r : records) {
        out += r.source + "," + r.geometry + "," + r.kind + ",";
        for (std::size_t i = 0; i < r.cls.size(); ++i) {
            if (i)
                out += ";";
            out += std::to_string(r.cls[i]);
        }
        out += "," + r.value.str() + "\n";
    }
    return out;
}

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

// rows of one geometry and kind as a table; zero values drop out so the
// result compares cleanly against transform outputs
inline ClassTable records_as_table(const std::vector<ValueRecord>& records,
                                   const std::string& geometry, const std::string& kind) {
    ClassTable t;
    for (const ValueRecord& r : records)
        if (r.geometry == geometry && r.kind == kind && !r.value.is_zero())
            t.emplace(r.cls, r.value);
    return t;
}

inline bool has_record(const std::vector<ValueRecord>& records, const std::string& geometry,
                       const std::string& kind, const ClassVec& cls, BigRat* out = nullptr) {
    for (const ValueRecord& r : records)
        if (r.geometry == geometry && r.kind == kind && r.cls == cls) {
            if (out)
                *out = r.value;
            return true;
        }
    return false;
}

// unit-degree lattice big enough for every row of the geometry
inline ClassLattice lattice_for(const std::vector<ValueRecord>& records,
                                const std::string& geometry) {
    int rank = 0;
    long cutoff = 0;
    for (const ValueRecord& r : records)
        if (r.geometry == geometry) {
            if (rank == 0)
                rank = static_cast<int>(r.cls.size());
            else if (rank != static_cast<int>(r.cls.size()))
                throw input_error("geometry " + geometry + " mixes class ranks");
            long d = 0;
            for (long c : r.cls)
                d += c;
            cutoff = std::max(cutoff, d);
        }
    if (rank == 0)
        throw input_error("no rows for geometry " + geometry);
    return ClassLattice::make(rank, std::vector<long>(static_cast<std::size_t>(rank), 1),
                              cutoff);
}

inline std::string table_diff(const ClassTable& got, const ClassTable& want) {
    for (const auto& [b, v] : want)
        if (table_value(got, b) != v)
            return "at " + class_str(b) + " got " + table_value(got, b).str() + ", want "
                   + v.str();
    for (const auto& [b, v] : got)
        if (table_value(want, b) != v)
            return "at " + class_str(b) + " got " + v.str() + ", want "
                   + table_value(want, b).str();
    return "";
}

} // namespace detail

// Every relation the ingested numbers are claimed to satisfy, one verdict
// per relation.  Failures carry the offending class and values.
inline std::vector<CheckResult> run_consistency_checks(const std::vector<ValueRecord>& records) {
    std::vector<CheckResult> out;

    { // inverting the elliptic fibration's fiber-class P0 series recovers its n1 rows
        CheckResult c{"elliptic-fibration-n1", false, ""};
        try {
            const ClassLattice lat = detail::lattice_for(records, "elliptic-fibration");
            ClassTable p0 = detail::records_as_table(records, "elliptic-fibration", "P0");
            ClassTable n1 = detail::records_as_table(records, "elliptic-fibration", "n1");
            c.detail = detail::table_diff(n1_from_p0(lat, p0), n1);
            c.passed = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        out.push_back(std::move(c));
    }

    { // degree-one pair invariants with a point insertion equal genus-0 GV values
        CheckResult c{"del-pezzo-degree1", false, ""};
        std::string detail;
        auto expect = [&](const std::string& geom, const ClassVec& cls, long want) {
            BigRat p1, n0;
            if (!detail::has_record(records, geom, "P1_gamma", cls, &p1)
                || !detail::has_record(records, geom, "n0", cls, &n0)) {
                detail += geom + " lacks degree-1 rows at " + class_str(cls) + "; ";
                return;
            }
            if (p1 != n0 || p1 != BigRat(want))
                detail += geom + " at " + class_str(cls) + ": P1_gamma = " + p1.str()
                          + ", n0 = " + n0.str() + ", want " + std::to_string(want) + "; ";
        };
        expect("local-P2", {1}, -1);
        expect("local-P1xP1", {1, 0}, 1);
        expect("local-P1xP1", {0, 1}, 1);
        c.detail = detail;
        c.passed = detail.empty();
        out.push_back(std::move(c));
    }

    { // the sextic's pair moduli are empty in classes l and 2l
        CheckResult c{"sextic-vanishing", false, ""};
        std::string detail;
        for (long k : {1L, 2L}) {
            BigRat v;
            if (!detail::has_record(records, "sextic", "P0", {k}, &v))
                detail += "missing sextic P0 row at [" + std::to_string(k) + "]; ";
            else if (!v.is_zero())
                detail += "sextic P0 at [" + std::to_string(k) + "] is " + v.str()
                          + ", want 0; ";
        }
        c.detail = detail;
        c.passed = detail.empty();
        out.push_back(std::move(c));
    }

    { // fiber-class P0 series are MacMahon powers of their n1 rows
        CheckResult c{"fiber-class-macmahon", false, ""};
        std::string detail;
        for (const std::string geom : {"elliptic-fibration", "quintic-x-E"}) {
            try {
                const ClassLattice lat = detail::lattice_for(records, geom);
                ClassTable p0 = detail::records_as_table(records, geom, "P0");
                ClassTable n1 = detail::records_as_table(records, geom, "n1");
                std::string diff = detail::table_diff(macmahon_product(lat, n1), p0);
                if (!diff.empty())
                    detail += geom + ": " + diff + "; ";
            } catch (const std::exception& e) {
                detail += geom + ": " + std::string(e.what()) + "; ";
            }
        }
        c.detail = detail;
        c.passed = detail.empty();
        out.push_back(std::move(c));
    }

    return out;
}

} // namespace gv4
