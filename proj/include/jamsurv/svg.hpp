#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jamsurv/table.hpp"

namespace jamsurv {

struct LinePlot {
    std::string title;
    std::string x_column;
    std::vector<std::string> y_columns;
    std::string group_column;  ///< optional: one series per distinct value
};

struct Heatmap {
    std::string title;
    std::string x_column;
    std::string y_column;
    std::string value_column;
};

/// Static SVG renderings of a sweep table. Rows with non-numeric cells in the
/// plotted columns are skipped.
void write_line_svg(std::ostream& out, const Table& table, const LinePlot& plot);
void write_heatmap_svg(std::ostream& out, const Table& table, const Heatmap& map);

}  // namespace jamsurv
