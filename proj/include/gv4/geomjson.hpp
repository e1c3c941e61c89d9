#pragma once

// JSON ingestion and emission for geometry documents and result tables.
// Classes are encoded as "[b1,...,br]" keys and rationals as integers or
// "p/q" strings on input, canonical strings on output.  Emission goes
// through nlohmann's sorted-key objects, so reports are byte-deterministic.

#include "gv4/localcurve.hpp"
#include "gv4/transforms.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace gv4 {

using json = nlohmann::json;

inline BigRat rat_from_json(const json& v) {
    if (v.is_number_integer())
        return BigRat(static_cast<long>(v.get<long long>()));
    if (v.is_string())
        return BigRat::parse(v.get<std::string>());
    throw input_error("expected an integer or a \"p/q\" string, got " + v.dump());
}

inline ClassVec class_from_key(const std::string& key, int rank) {
    if (key.size() < 2 || key.front() != '[' || key.back() != ']')
        throw input_error("class key must look like \"[b1,...,br]\", got \"" + key + "\"");
    ClassVec out;
    std::string body = key.substr(1, key.size() - 2);
    std::istringstream in(body);
    std::string piece;
    while (std::getline(in, piece, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(piece, &used);
            if (used != piece.size())
                throw std::invalid_argument(piece);
            out.push_back(v);
        } catch (const std::exception&) {
            throw input_error("invalid integer \"" + piece + "\" in class key \"" + key + "\"");
        }
    }
    if (static_cast<int>(out.size()) != rank)
        throw input_error("class key \"" + key + "\" does not have " + std::to_string(rank)
                          + " entries");
    return out;
}

inline ClassTable table_from_json(const json& obj, const ClassLattice& lat, const char* what) {
    if (!obj.is_object())
        throw input_error(std::string(what) + " must be a JSON object");
    ClassTable t;
    for (const auto& [key, val] : obj.items()) {
        BigRat v = rat_from_json(val);
        if (!v.is_zero())
            t.emplace(class_from_key(key, lat.rank), v);
    }
    validate_class_table(lat, t, what);
    return t;
}

inline json table_to_json(const ClassTable& t) {
    json out = json::object();
    for (const auto& [b, v] : t)
        out[class_str(b)] = v.str();
    return out;
}

inline json qseries_to_json(const QSeries& s) {
    json out = json::object();
    for (const auto& [b, v] : s.coeffs)
        out[class_str(b)] = v.str();
    return out;
}

inline json meeting_to_json(const MeetingTable& m) {
    json rows = json::array();
    for (const auto& [key, v] : m.values)
        rows.push_back(json{{"b1", class_str(key.first)},
                            {"b2", class_str(key.second)},
                            {"value", v.str()}});
    return rows;
}

inline json invariant_report_to_json(const InvariantReport& r) {
    json fc = json::array();
    for (const FixedComponent& c : r.fixed_components)
        fc.push_back(json{{"axis", c.axis}, {"d0", c.d0}, {"di", c.di}});
    return json{{"l", {r.geom.l[0], r.geom.l[1], r.geom.l[2]}},
                {"gw01", r.gw01.str()},
                {"gw02", r.gw02.str()},
                {"p11", r.p11.str()},
                {"p12", r.p12.str()},
                {"conjecture_holds", r.conjecture_holds},
                {"fixed_components", fc}};
}

// A geometry document: the lattice, the optional pairing data, and whatever
// named tables and knobs the series subcommands need.
struct GeomDoc {
    GeomData geom;
    std::map<std::string, ClassTable> tables;
    long insertions = 0;
    long y_cutoff = 3;
    long q_cutoff = 4;
    long n_max = 4;
};

inline GeomDoc geomdoc_from_json(const json& j) {
    if (!j.is_object())
        throw input_error("geometry document must be a JSON object");
    for (const char* field : {"rank", "degree", "cutoff"})
        if (!j.contains(field))
            throw input_error(std::string("geometry document lacks \"") + field + "\"");
    const int rank = j.at("rank").get<int>();
    std::vector<long> degree;
    for (const auto& d : j.at("degree"))
        degree.push_back(d.get<long>());
    ClassLattice lat = ClassLattice::make(rank, std::move(degree), j.at("cutoff").get<long>());

    const int basis_size = j.value("basis_size", 0);
    std::vector<std::vector<BigRat>> kunneth;
    if (j.contains("kunneth"))
        for (const auto& row : j.at("kunneth")) {
            std::vector<BigRat> r;
            for (const auto& v : row)
                r.push_back(rat_from_json(v));
            kunneth.push_back(std::move(r));
        }
    else
        kunneth.assign(static_cast<std::size_t>(basis_size),
                       std::vector<BigRat>(static_cast<std::size_t>(basis_size), BigRat(0)));

    std::map<ClassVec, std::vector<BigRat>> n0s;
    if (j.contains("n0_S"))
        for (const auto& [key, val] : j.at("n0_S").items()) {
            std::vector<BigRat> row;
            for (const auto& v : val)
                row.push_back(rat_from_json(v));
            n0s.emplace(class_from_key(key, rank), std::move(row));
        }

    ClassTable n0c2;
    if (j.contains("n0_c2"))
        n0c2 = table_from_json(j.at("n0_c2"), lat, "n0_c2");

    GeomDoc doc;
    doc.geom = GeomData::make(lat, basis_size, std::move(kunneth), std::move(n0s),
                              std::move(n0c2));
    for (const char* name : {"n0", "n1", "p0", "gw0", "gw1"})
        if (j.contains(name))
            doc.tables.emplace(name, table_from_json(j.at(name), lat, name));
    doc.insertions = j.value("insertions", 0L);
    doc.y_cutoff = j.value("y_cutoff", 3L);
    doc.q_cutoff = j.value("q_cutoff", 4L);
    doc.n_max = j.value("n_max", 4L);
    if (doc.insertions < 0 || doc.y_cutoff < 0 || doc.q_cutoff < 0 || doc.n_max < 0)
        throw input_error("insertions, y_cutoff, q_cutoff and n_max must be nonnegative");
    return doc;
}

inline GeomDoc load_geom_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open geometry file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error("invalid JSON in " + path + ": " + e.what());
    }
    return geomdoc_from_json(j);
}

// fetch a named table, with a clear error when the document lacks it
inline const ClassTable& doc_table(const GeomDoc& doc, const std::string& name) {
    auto it = doc.tables.find(name);
    if (it == doc.tables.end())
        throw input_error("geometry document lacks the \"" + name + "\" table");
    return it->second;
}

} // namespace gv4
