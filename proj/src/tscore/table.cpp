#include "mpcbench/tscore/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "mpcbench/tscore/time_series.hpp"

namespace mpcbench::tscore {

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw DataError("row has " + std::to_string(row.size()) + " cells, table has " +
                        std::to_string(columns_.size()) + " columns");
    }
    rows_.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i] == name) return i;
    }
    throw DataError("missing column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
    const Cell& c = rows_.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw DataError("column '" + name + "' is not numeric");
}

std::string Table::text(std::size_t row, const std::string& name) const {
    return format_cell(rows_.at(row).at(column(name)));
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

std::string format_cell(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    return std::to_string(std::get<std::int64_t>(c));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += quote(columns_[i]);
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += quote(format_cell(row[i]));
        }
        out += '\n';
    }
    return out;
}

void Table::write_csv(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path.string() + "' for writing");
    f << to_csv();
    if (!f) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace mpcbench::tscore
