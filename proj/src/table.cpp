#include "jamsurv/table.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace jamsurv {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
};

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("row has " + std::to_string(row.size()) + " cells, table has " +
                               std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw std::out_of_range("no column named '" + name + "'");
}

const Cell& Table::at(std::size_t row, const std::string& column) const {
    return rows.at(row).at(column_index(column));
}

double Table::number(std::size_t row, const std::string& column) const {
    const Cell& c = at(row, column);
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    return std::nan("");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Table& table, const std::vector<std::string>& header_comments) {
    for (const auto& line : header_comments) out << "# " << line << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
        }
        out << '\n';
    }
}

void write_jsonl(std::ostream& out, const Table& table) {
    for (const auto& row : table.rows) {
        // doubles go through format_number so JSON and CSV carry the same digits
        std::string line = "{";
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += ',';
            line += nlohmann::json(table.columns[i]).dump();
            line += ':';
            const Cell& c = row[i];
            if (std::holds_alternative<std::monostate>(c)) {
                line += "null";
            } else if (const auto* d = std::get_if<double>(&c)) {
                line += std::isfinite(*d) ? format_number(*d) : "null";
            } else if (const auto* n = std::get_if<std::int64_t>(&c)) {
                line += std::to_string(*n);
            } else {
                line += nlohmann::json(std::get<std::string>(c)).dump();
            }
        }
        out << line << "}\n";
    }
}

}  // namespace jamsurv
