#pragma once

#include <string>
#include <vector>

namespace atomsg {

// Shortest decimal that round-trips to the same double; the CSV contract
// relies on this being byte-stable across reruns.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
    std::string to_string() const;
    void write(const std::string& path) const;
};

// Minimal SVG line/scatter plot; enough to carry Fig.-style data next to
// its CSV, not a plotting library.
struct SvgSeries {
    std::vector<double> x, y;
    std::string color = "#1f77b4";
    bool markers = true;
};

void write_svg_plot(const std::string& path, const std::vector<SvgSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label);

} // namespace atomsg
