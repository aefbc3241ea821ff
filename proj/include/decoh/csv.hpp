#pragma once

// CSV output with a fixed header per artifact. Floating-point cells are
// written in scientific notation with 17 significant digits; integer cells
// (flags, branch signs) are written as integers.

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "decoh/errors.hpp"

namespace decoh::csv {

using Cell = std::variant<double, long long>;

namespace columns {
inline const std::vector<std::string> scan{"field_gauss",  "alpha_a_bohr",   "beta_a_bohr", "alpha_b_bohr",
                                           "beta_b_bohr",  "delta_abs_bohr", "rate_per_s",  "zeta0_per_s"};
inline const std::vector<std::string> evolve{"time_s", "eta", "rho_offdiag", "rho_aa", "rho_bb", "within_validity"};
inline const std::vector<std::string> invert{"field_gauss",    "q_plus_bohr",          "q_minus_bohr",
                                             "branch_choice",  "alpha_recovered_bohr", "discriminant_clamped"};
inline const std::vector<std::string> synth{"field_gauss", "rate_per_s", "zeta0_per_s"};
}  // namespace columns

inline std::string format_double(double v, int significant = 17) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*e", significant - 1, v);
    return buf;
}

class Writer {
public:
    Writer(std::ostream& out, const std::vector<std::string>& header, int significant = 17)
        : out_(out), width_(header.size()), digits_(significant) {
        for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }

    void row(const std::vector<Cell>& cells) {
        if (cells.size() != width_) throw Error("csv row width does not match header");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            if (const double* d = std::get_if<double>(&cells[i])) out_ << format_double(*d, digits_);
            else out_ << std::get<long long>(cells[i]);
        }
        out_ << "\n";
    }

private:
    std::ostream& out_;
    std::size_t width_;
    int digits_;
};

/// Column-major numeric table.
struct Table {
    std::vector<std::string> header;
    std::map<std::string, std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const {
        auto it = columns.find(name);
        if (it == columns.end()) throw ConfigError("csv is missing column '" + name + "'");
        return it->second;
    }
    bool has(const std::string& name) const { return columns.count(name) != 0; }
    std::size_t rows() const { return columns.empty() ? 0 : columns.begin()->second.size(); }
};

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    return out;
}

inline Table read(std::istream& in, const std::string& source = "<csv>") {
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(source + ": empty csv");
    t.header = split_line(line);
    for (const auto& h : t.header) t.columns[h];
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_line(line);
        if (cells.size() != t.header.size())
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(t.header.size()) + " cells");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cells[i], &used);
                if (used != cells[i].size()) throw std::invalid_argument("trailing");
                t.columns[t.header[i]].push_back(v);
            } catch (const std::logic_error&) {
                throw ConfigError(source + ":" + std::to_string(lineno) + ": malformed number '" + cells[i] + "'");
            }
        }
    }
    return t;
}

inline Table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read csv '" + path + "'");
    return read(in, path);
}

}  // namespace decoh::csv
