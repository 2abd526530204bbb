#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "suntrack/errors.hpp"

namespace suntrack {

/// Sampled irradiance over a (tracker angle x sun time) lattice.
///
/// Columns index the tracker angle, rows index sun time; row 0 is the start of
/// the day and row n_rows-1 its end. weight(i, j) is the constant irradiance
/// of the half-open cell whose lower-left corner is vertex (i, j); no
/// interpolation is applied anywhere. Treat instances as immutable once built:
/// solvers share them concurrently by const reference.
struct IrradianceGrid {
    int n_cols = 0;
    int n_rows = 0;
    double eps_deg = 1.0;       ///< angular cell size, degrees
    double sca_start_deg = 0.0; ///< angle of column 0, degrees
    double time_step_min = 1.0; ///< duration of one row, minutes
    double scale = 1.0;         ///< divisor already applied to the raw values
    std::vector<double> weights; ///< row-major: weights[row * n_cols + col]

    double weight(int col, int row) const {
        return weights[static_cast<std::size_t>(row) * n_cols + col];
    }
    double& weight(int col, int row) {
        return weights[static_cast<std::size_t>(row) * n_cols + col];
    }
    int top_row() const { return n_rows - 1; }
};

/// Throws DimensionError for shape problems, ValidationError for bad values.
inline void validate_grid(const IrradianceGrid& g) {
    if (g.n_cols < 2)
        throw DimensionError("grid needs at least 2 columns, got " + std::to_string(g.n_cols));
    if (g.n_rows < 2)
        throw DimensionError("grid needs at least 2 rows, got " + std::to_string(g.n_rows));
    const std::size_t expected =
        static_cast<std::size_t>(g.n_cols) * static_cast<std::size_t>(g.n_rows);
    if (g.weights.size() != expected)
        throw DimensionError("weight matrix holds " + std::to_string(g.weights.size()) +
                             " cells, expected " + std::to_string(expected));
    if (!(g.eps_deg > 0.0) || !std::isfinite(g.eps_deg))
        throw ValidationError("eps_deg must be positive and finite");
    if (!std::isfinite(g.sca_start_deg))
        throw ValidationError("sca_start_deg must be finite");
    if (!(g.time_step_min > 0.0) || !std::isfinite(g.time_step_min))
        throw ValidationError("time_step_min must be positive and finite");
    if (!(g.scale > 0.0) || !std::isfinite(g.scale))
        throw ValidationError("scale must be positive and finite");
    for (int j = 0; j < g.n_rows; ++j) {
        for (int i = 0; i < g.n_cols; ++i) {
            const double w = g.weight(i, j);
            if (!std::isfinite(w) || w < 0.0)
                throw ValidationError("weight at column " + std::to_string(i) + ", row " +
                                      std::to_string(j) + " must be finite and non-negative");
        }
    }
}

/// Largest cell weight of the whole grid.
inline double global_max(const IrradianceGrid& g) {
    validate_grid(g);
    return *std::max_element(g.weights.begin(), g.weights.end());
}

/// Copy of rows [row_begin, row_end], metadata preserved.
inline IrradianceGrid slice_rows(const IrradianceGrid& g, int row_begin, int row_end) {
    if (row_begin < 0 || row_end >= g.n_rows || row_end - row_begin + 1 < 2)
        throw DimensionError("row slice [" + std::to_string(row_begin) + ", " +
                             std::to_string(row_end) + "] is not a valid sub-day");
    IrradianceGrid out = g;
    out.n_rows = row_end - row_begin + 1;
    out.weights.assign(g.weights.begin() + static_cast<std::size_t>(row_begin) * g.n_cols,
                       g.weights.begin() + static_cast<std::size_t>(row_end + 1) * g.n_cols);
    return out;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double_field(std::string_view text, int line, int field) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    double value = 0.0;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || first == last)
        throw ParseError("matrix line " + std::to_string(line) + ", field " +
                         std::to_string(field) + ": '" + std::string(text) +
                         "' is not a number");
    return value;
}

inline std::map<std::string, double> parse_meta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open meta file '" + path + "'");
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("meta line " + std::to_string(lineno) +
                             ": expected 'key = value', got '" + line + "'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        double value = 0.0;
        auto res = std::from_chars(val.data(), val.data() + val.size(), value);
        if (res.ec != std::errc() || res.ptr != val.data() + val.size() || val.empty())
            throw ParseError("meta line " + std::to_string(lineno) + ": value '" + val +
                             "' of key '" + key + "' is not a number");
        kv[key] = value;
    }
    return kv;
}

} // namespace detail

/// Reads a weight matrix (CSV, no header) and its metadata file.
///
/// The matrix file holds one line per row, comma-separated decimal fields,
/// field i of line j becoming weight(i, j). The meta file holds `key = value`
/// lines and must define eps_deg, sca_start_deg, time_step_min and scale.
inline IrradianceGrid load_grid(const std::string& matrix_path, const std::string& meta_path) {
    std::ifstream in(matrix_path);
    if (!in) throw IoError("cannot open matrix file '" + matrix_path + "'");

    IrradianceGrid g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        int field = 0;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            const std::string_view cell(line.data() + pos,
                                        (comma == std::string::npos ? line.size() : comma) - pos);
            ++field;
            g.weights.push_back(detail::parse_double_field(cell, lineno, field));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (g.n_cols == 0)
            g.n_cols = field;
        else if (field != g.n_cols)
            throw DimensionError("matrix line " + std::to_string(lineno) + " has " +
                                 std::to_string(field) + " fields, expected " +
                                 std::to_string(g.n_cols));
        ++g.n_rows;
    }

    const auto meta = detail::parse_meta_file(meta_path);
    auto require = [&](const char* key) {
        auto it = meta.find(key);
        if (it == meta.end())
            throw SchemaError("meta file '" + meta_path + "' is missing key '" + key + "'");
        return it->second;
    };
    g.eps_deg = require("eps_deg");
    g.sca_start_deg = require("sca_start_deg");
    g.time_step_min = require("time_step_min");
    g.scale = require("scale");

    validate_grid(g);
    return g;
}

/// Writes the matrix + metadata pair read back verbatim by load_grid.
/// Weights are emitted in shortest round-trip decimal form, so a save/load
/// cycle reproduces the grid bit-exactly.
inline void save_grid(const IrradianceGrid& g, const std::string& matrix_path,
                      const std::string& meta_path) {
    validate_grid(g);

    std::ofstream mat(matrix_path);
    if (!mat) throw IoError("cannot write matrix file '" + matrix_path + "'");
    std::string line;
    for (int j = 0; j < g.n_rows; ++j) {
        line.clear();
        for (int i = 0; i < g.n_cols; ++i) {
            if (i) line += ',';
            line += detail::format_double(g.weight(i, j));
        }
        line += '\n';
        mat << line;
    }
    mat.flush();
    if (!mat) throw IoError("failed while writing matrix file '" + matrix_path + "'");

    std::ofstream meta(meta_path);
    if (!meta) throw IoError("cannot write meta file '" + meta_path + "'");
    meta << "eps_deg = " << detail::format_double(g.eps_deg) << '\n'
         << "sca_start_deg = " << detail::format_double(g.sca_start_deg) << '\n'
         << "time_step_min = " << detail::format_double(g.time_step_min) << '\n'
         << "scale = " << detail::format_double(g.scale) << '\n';
    meta.flush();
    if (!meta) throw IoError("failed while writing meta file '" + meta_path + "'");
}

} // namespace suntrack
