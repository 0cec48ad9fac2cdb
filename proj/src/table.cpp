#include "drivendot/table.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace drivendot {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row width does not match column count");
    }
    rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
    if (!units_comment.empty()) out << "# " << units_comment << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
        }
    }
}

void Table::write_csv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(out);
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace drivendot
