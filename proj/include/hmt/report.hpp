#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "hmt/lemma.hpp"
#include "hmt/profile.hpp"

namespace hmt {

using json = nlohmann::json;  // object keys kept sorted

/// Fixed-width real formatting used in CSV output: 17 significant digits
/// round-trips any double.
inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline json to_json(const RadialProfile& v, int n) {
    return json{{"knots", v.knots}, {"n", n}, {"values", v.values}};
}

inline RadialProfile profile_from_json(const json& j, int* n_out = nullptr) {
    RadialProfile v;
    v.knots = j.at("knots").get<std::vector<double>>();
    v.values = j.at("values").get<std::vector<double>>();
    if (n_out) *n_out = j.at("n").get<int>();
    validate(v);
    return v;
}

inline json to_json(const InequalityCheckResult& r) {
    return json{{"context", r.context}, {"lhs", r.lhs},
                {"name", r.name},       {"pass", r.pass},
                {"rhs", r.rhs},         {"slack", r.slack},
                {"tolerance", r.tolerance}};
}

/// Write content atomically: temp file in the same directory, then rename.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

/// CSV from an array of flat JSON objects; fixed header from sorted keys of
/// the first row, reals with 17 significant digits.
inline std::string to_csv(const json& rows) {
    std::ostringstream out;
    if (!rows.is_array() || rows.empty()) return "";
    std::vector<std::string> keys;
    for (auto& [k, _] : rows.front().items()) keys.push_back(k);
    for (std::size_t i = 0; i < keys.size(); ++i)
        out << keys[i] << (i + 1 < keys.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const auto& cell = row.at(keys[i]);
            if (cell.is_number_float())
                out << format_real(cell.get<double>());
            else if (cell.is_string())
                out << cell.get<std::string>();
            else
                out << cell.dump();
            out << (i + 1 < keys.size() ? "," : "\n");
        }
    }
    return out.str();
}

}  // namespace hmt
