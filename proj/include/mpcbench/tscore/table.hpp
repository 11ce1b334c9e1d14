#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace mpcbench::tscore {

using Cell = std::variant<std::string, double, std::int64_t>;

/// Column-named table of mixed cells written as CSV. Doubles use the shortest
/// representation that round-trips, so equal tables produce equal bytes.
class Table {
public:
    Table() = default;
    explicit Table(std::vector<std::string> columns);

    void add_row(std::vector<Cell> row);
    void add_row(std::initializer_list<Cell> row) { add_row(std::vector<Cell>(row)); }

    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    [[nodiscard]] std::size_t size() const { return rows_.size(); }
    [[nodiscard]] bool empty() const { return rows_.empty(); }
    /// Index of a column; throws DataError if absent.
    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] double number(std::size_t row, const std::string& name) const;
    [[nodiscard]] std::string text(std::size_t row, const std::string& name) const;

    [[nodiscard]] std::string to_csv() const;
    /// Creates parent directories as needed.
    void write_csv(const std::filesystem::path& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_cell(const Cell& c);
std::string format_double(double v);

}  // namespace mpcbench::tscore
