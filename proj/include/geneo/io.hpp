#pragma once

#include <cstddef>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "geneo/error.hpp"
#include "geneo/group.hpp"
#include "geneo/measure.hpp"
#include "geneo/operator.hpp"

namespace geneo::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << content;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return ss.str();
}

/// A generator is either a 0-based image array or a 1-based cycle string.
inline Permutation permutation_from_json(const json& j, std::size_t degree) {
    if (j.is_string()) return Permutation::from_cycles(j.get<std::string>(), degree, true);
    if (!j.is_array()) throw FormatError("permutation must be an image array or a cycle string");
    std::vector<Index> images;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw FormatError("image entries must be indices >= 0");
        images.push_back(static_cast<Index>(v.get<long long>()));
    }
    if (images.size() != degree)
        throw FormatError("permutation has " + std::to_string(images.size()) + " images, expected " +
                          std::to_string(degree));
    try {
        return Permutation(std::move(images));
    } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
    }
}

inline json permutation_to_json(const Permutation& p) { return json(std::vector<Index>(p.images().begin(), p.images().end())); }

/// { "degree": n, "generators": [[images...] | "(1 2)(3 4)", ...] }
inline PermutationGroup group_from_json(const json& j, std::size_t element_cap = kDefaultElementCap) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
        throw FormatError("group JSON needs \"degree\" and \"generators\"");
    if (!j["degree"].is_number_integer() || j["degree"].get<long long>() < 1)
        throw FormatError("group degree must be a positive integer");
    const auto n = static_cast<std::size_t>(j["degree"].get<long long>());
    std::vector<Permutation> gens;
    for (const auto& g : j["generators"]) gens.push_back(permutation_from_json(g, n));
    if (gens.empty()) gens.push_back(Permutation::identity(n));
    return PermutationGroup::close(std::move(gens), element_cap);
}

inline json group_to_json(const PermutationGroup& G) {
    json gens = json::array();
    for (const auto& g : G.generators()) gens.push_back(permutation_to_json(g));
    return {{"degree", G.degree()}, {"generators", gens}};
}

inline PermutationGroup load_group(const std::string& path) {
    try {
        return group_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

/// [ { "perm": [images...], "weight": w }, ... ]; duplicate permutations are rejected.
inline SignedMeasure measure_from_json(const json& j) {
    if (!j.is_array()) throw FormatError("measure JSON must be an array");
    if (j.empty()) throw FormatError("measure JSON is empty; the degree cannot be inferred");
    const std::size_t n = j.front().at("perm").size();
    SignedMeasure m(n);
    std::set<Permutation> seen;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("perm") || !entry.contains("weight"))
            throw FormatError("measure entries need \"perm\" and \"weight\"");
        Permutation h = permutation_from_json(entry["perm"], n);
        if (!seen.insert(h).second) throw FormatError("duplicate permutation in measure: " + h.to_cycles());
        if (!entry["weight"].is_number()) throw FormatError("measure weight must be a number");
        m.set(h, entry["weight"].get<double>());
    }
    return m;
}

inline json measure_to_json(const SignedMeasure& m) {
    json out = json::array();
    for (const auto& [h, w] : m.weights()) out.push_back({{"perm", permutation_to_json(h)}, {"weight", w}});
    return out;
}

inline SignedMeasure load_measure(const std::string& path) {
    try {
        return measure_from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

namespace detail {

inline std::vector<double> parse_csv_row(const std::string& line, std::size_t lineno) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw FormatError("CSV line " + std::to_string(lineno) + ": not a number: \"" + cell + "\"");
        }
        while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\r' || cell[used] == '\t')) ++used;
        if (used != cell.size())
            throw FormatError("CSV line " + std::to_string(lineno) + ": trailing characters in \"" + cell + "\"");
        row.push_back(v);
    }
    return row;
}

inline bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace detail

/// n rows of n comma-separated decimals; row i of the file is matrix row i.
inline OperatorMatrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (detail::blank(line)) continue;
        rows.push_back(detail::parse_csv_row(line, lineno));
    }
    if (rows.empty()) throw FormatError("matrix CSV is empty");
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw FormatError("matrix CSV is not square");
    try {
        return OperatorMatrix::from_rows(rows);
    } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
    }
}

inline std::string matrix_to_csv(const OperatorMatrix& B) {
    std::string out;
    for (std::size_t i = 0; i < B.size(); ++i) {
        for (std::size_t j = 0; j < B.size(); ++j) {
            if (j) out += ',';
            out += format_double(B(i, j));
        }
        out += '\n';
    }
    return out;
}

inline OperatorMatrix load_matrix(const std::string& path) { return matrix_from_csv(read_file(path)); }

/// A single CSV row.
inline Signal signal_from_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (!detail::blank(line)) return Signal(detail::parse_csv_row(line, lineno));
    }
    throw FormatError("signal CSV is empty");
}

inline std::string signal_to_csv(const Signal& s) {
    std::string out;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (j) out += ',';
        out += format_double(s[j]);
    }
    return out + '\n';
}

}  // namespace geneo::io
