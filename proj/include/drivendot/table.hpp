#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace drivendot {

// Column-oriented numeric table written as CSV. A leading '#' comment line
// states the unit conventions; values use shortest round-trip formatting so
// identical inputs produce byte-identical files.
struct Table {
    std::string units_comment = "units: hbar = m* = omega = 1 (x in sigma, t in 1/omega, E in hbar*omega)";
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    void write_csv(std::ostream& out) const;
    void write_csv(const std::filesystem::path& path) const;
};

std::string format_double(double v);

// Minimal CSV reader for numeric tables written by Table (skips '#' lines
// and the header row).
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path);

}  // namespace drivendot
