#include "jamsurv/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

namespace jamsurv {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 56.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    [[nodiscard]] double span() const { return hi > lo ? hi - lo : 1.0; }
};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void header(std::ostream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << xml_escape(title) << "</text>\n";
}

void axes(std::ostream& out, const Range& xr, const Range& yr, const std::string& xlabel) {
    const double x0 = kMargin;
    const double y0 = kHeight - kMargin;
    out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << y0
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << kMargin
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x0 << "\" y=\"" << y0 + 16 << "\">" << format_number(xr.lo) << "</text>\n"
        << "<text x=\"" << kWidth - kMargin << "\" y=\"" << y0 + 16 << "\" text-anchor=\"end\">"
        << format_number(xr.hi) << "</text>\n"
        << "<text x=\"" << x0 - 4 << "\" y=\"" << y0 << "\" text-anchor=\"end\">" << format_number(yr.lo)
        << "</text>\n"
        << "<text x=\"" << x0 - 4 << "\" y=\"" << kMargin + 4 << "\" text-anchor=\"end\">" << format_number(yr.hi)
        << "</text>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
        << xml_escape(xlabel) << "</text>\n";
}

}  // namespace

void write_line_svg(std::ostream& out, const Table& table, const LinePlot& plot) {
    // series key: (group value, y column)
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, double>>> series;
    Range xr;
    Range yr;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double x = table.number(r, plot.x_column);
        if (!std::isfinite(x)) continue;
        std::string group;
        if (!plot.group_column.empty()) group = plot.group_column + "=" + format_number(table.number(r, plot.group_column));
        for (const auto& yc : plot.y_columns) {
            const double y = table.number(r, yc);
            if (!std::isfinite(y)) continue;
            series[{group, yc}].emplace_back(x, y);
            xr.add(x);
            yr.add(y);
        }
    }
    header(out, plot.title);
    axes(out, xr, yr, plot.x_column);
    auto px = [&](double x) { return kMargin + (x - xr.lo) / xr.span() * (kWidth - 2 * kMargin); };
    auto py = [&](double y) { return kHeight - kMargin - (y - yr.lo) / yr.span() * (kHeight - 2 * kMargin); };
    std::size_t k = 0;
    for (const auto& [key, pts] : series) {
        const char* color = kPalette[k % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) out << format_number(px(x)) << ',' << format_number(py(y)) << ' ';
        out << "\"/>\n";
        const std::string label = key.first.empty() ? key.second : key.first + " " + key.second;
        out << "<text x=\"" << kWidth - kMargin + 4 - 120 << "\" y=\"" << kMargin + 14 * k << "\" fill=\"" << color
            << "\">" << xml_escape(label) << "</text>\n";
        ++k;
    }
    out << "</svg>\n";
}

void write_heatmap_svg(std::ostream& out, const Table& table, const Heatmap& map) {
    std::vector<double> xs;
    std::vector<double> ys;
    Range vr;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        xs.push_back(table.number(r, map.x_column));
        ys.push_back(table.number(r, map.y_column));
        const double v = table.number(r, map.value_column);
        if (std::isfinite(v)) vr.add(v);
    }
    auto distinct = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const std::vector<double> ux = distinct(xs);
    const std::vector<double> uy = distinct(ys);
    Range xr;
    Range yr;
    for (double x : ux) xr.add(x);
    for (double y : uy) yr.add(y);
    header(out, map.title + " (" + map.value_column + ": " + format_number(vr.lo) + " .. " + format_number(vr.hi) + ")");
    axes(out, xr, yr, map.x_column);
    const double cw = (kWidth - 2 * kMargin) / std::max<std::size_t>(ux.size(), 1);
    const double ch = (kHeight - 2 * kMargin) / std::max<std::size_t>(uy.size(), 1);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double v = table.number(r, map.value_column);
        const auto ix = static_cast<double>(std::lower_bound(ux.begin(), ux.end(), xs[r]) - ux.begin());
        const auto iy = static_cast<double>(std::lower_bound(uy.begin(), uy.end(), ys[r]) - uy.begin());
        std::string fill = "#cccccc";
        if (std::isfinite(v)) {
            const double t = (v - vr.lo) / vr.span();
            const int red = static_cast<int>(255 * t);
            const int blue = static_cast<int>(255 * (1 - t));
            fill = "rgb(" + std::to_string(red) + ",64," + std::to_string(blue) + ")";
        }
        out << "<rect x=\"" << format_number(kMargin + ix * cw) << "\" y=\""
            << format_number(kHeight - kMargin - (iy + 1) * ch) << "\" width=\"" << format_number(cw)
            << "\" height=\"" << format_number(ch) << "\" fill=\"" << fill << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace jamsurv
