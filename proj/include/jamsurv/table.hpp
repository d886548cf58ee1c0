#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace jamsurv {

/// Empty cells (monostate) print as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    [[nodiscard]] std::size_t column_index(const std::string& name) const;
    [[nodiscard]] const Cell& at(std::size_t row, const std::string& column) const;
    [[nodiscard]] double number(std::size_t row, const std::string& column) const;
};

/// Shortest round-trip is not wanted here; always 12 significant digits,
/// '.' as the decimal point regardless of locale.
std::string format_number(double v);

/// Header comments are written first, each prefixed by "# ".
void write_csv(std::ostream& out, const Table& table, const std::vector<std::string>& header_comments = {});

/// One JSON object per row, keys in column order.
void write_jsonl(std::ostream& out, const Table& table);

}  // namespace jamsurv
