// Copyright 2026 The qdgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qdgate/sweep.hpp"

namespace qdgate {

namespace {

constexpr int kSignificantDigits = 9;

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
    return std::string(buf, end);
}

std::string format_cell(const std::optional<double> &v) {
    return v ? format_number(*v) : std::string();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find(sep, pos);
        out.push_back(line.substr(pos, next - pos));
        if (next == std::string_view::npos) {
            return out;
        }
        pos = next + 1;
    }
}

double parse_cell_number(std::string_view text) {
    double v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError("malformed number in CSV: '" + std::string(text) + "'");
    }
    return v;
}

// Plot area inside a fixed canvas.
constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;
constexpr std::string_view kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string svg_number(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, end);
}

}  // namespace

double round_sig9(double value) {
    if (!std::isfinite(value)) {
        return value;
    }
    std::string s = format_number(value);
    double out = 0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

std::string to_csv(const Table &table) {
    std::string out = "axis,value";
    for (const std::string &c : table.columns) {
        out += "," + c;
    }
    out += ",status\n";
    for (const Row &row : table.rows) {
        out += table.axis + "," + format_number(row.value);
        for (const auto &cell : row.cells) {
            out += "," + format_cell(cell);
        }
        out += "," + row.status + "\n";
    }
    return out;
}

std::string to_json_lines(const Table &table) {
    std::string out;
    for (const Row &row : table.rows) {
        nlohmann::ordered_json obj;
        obj["axis"] = table.axis;
        obj["value"] = row.value;
        for (std::size_t c = 0; c < table.columns.size(); c++) {
            if (row.cells[c] && std::isfinite(*row.cells[c])) {
                obj[table.columns[c]] = *row.cells[c];
            } else {
                obj[table.columns[c]] = nullptr;
            }
        }
        obj["status"] = row.status;
        out += obj.dump() + "\n";
    }
    return out;
}

std::string to_svg(const Table &table) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    std::vector<std::size_t> series;
    for (std::size_t c = 0; c < table.columns.size(); c++) {
        if (table.columns[c] != "mc_stderr") {
            series.push_back(c);
        }
    }
    for (const Row &row : table.rows) {
        x_min = std::min(x_min, row.value);
        x_max = std::max(x_max, row.value);
        for (std::size_t c : series) {
            if (row.cells[c] && std::isfinite(*row.cells[c])) {
                y_min = std::min(y_min, *row.cells[c]);
                y_max = std::max(y_max, *row.cells[c]);
            }
        }
    }
    if (!std::isfinite(y_min)) {
        y_min = 0;
        y_max = 1;
    }
    y_min = std::min(y_min, 0.0);
    if (y_max <= y_min) {
        y_max = y_min + 1;
    }
    if (x_max <= x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<line class=\"axis\" x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line class=\"axis\" x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<text id=\"x-label\" x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << table.axis << "</text>\n";
    svg << "<text id=\"y-label\" x=\"15\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << kTop + plot_h / 2 << ")\">efficiency</text>\n";
    for (double x : {x_min, x_max}) {
        svg << "<text class=\"tick\" x=\"" << svg_number(px(x)) << "\" y=\"" << kTop + plot_h + 16
            << "\" text-anchor=\"middle\">" << format_number(x) << "</text>\n";
    }
    for (double y : {y_min, y_max}) {
        svg << "<text class=\"tick\" x=\"" << kLeft - 6 << "\" y=\"" << svg_number(py(y) + 4)
            << "\" text-anchor=\"end\">" << format_number(y) << "</text>\n";
    }
    for (std::size_t k = 0; k < series.size(); k++) {
        const std::size_t c = series[k];
        const std::string_view color = kPalette[k % std::size(kPalette)];
        svg << "<polyline id=\"" << table.columns[c] << "\" class=\"series\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const Row &row : table.rows) {
            if (!row.cells[c] || !std::isfinite(*row.cells[c])) {
                continue;
            }
            svg << (first ? "" : " ") << svg_number(px(row.value)) << "," << svg_number(py(*row.cells[c]));
            first = false;
        }
        svg << "\"/>\n";
        svg << "<text class=\"legend\" x=\"" << kLeft + plot_w - 110 << "\" y=\"" << kTop + 16 * (k + 1)
            << "\" fill=\"" << color << "\">" << table.columns[c] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render(const Table &table, Format format) {
    switch (format) {
        case Format::CSV:
            return to_csv(table);
        case Format::JSONLines:
            return to_json_lines(table);
        case Format::SVG:
            return to_svg(table);
    }
    throw std::invalid_argument("unknown format");
}

Table parse_csv(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw ConfigError("empty CSV");
    }
    std::vector<std::string_view> header = split(lines[0], ',');
    if (header.size() < 3 || header[0] != "axis" || header[1] != "value" || header.back() != "status") {
        throw ConfigError("CSV header must be axis,value,...,status");
    }
    Table table;
    for (std::size_t i = 2; i + 1 < header.size(); i++) {
        table.columns.emplace_back(header[i]);
    }
    for (std::size_t l = 1; l < lines.size(); l++) {
        std::vector<std::string_view> fields = split(lines[l], ',');
        if (fields.size() != header.size()) {
            throw ConfigError("CSV line " + std::to_string(l + 1) + " has the wrong number of fields");
        }
        if (l == 1) {
            table.axis = std::string(fields[0]);
        } else if (fields[0] != table.axis) {
            throw ConfigError("CSV mixes several axes");
        }
        Row row{parse_cell_number(fields[1]), {}, std::string(fields.back())};
        for (std::size_t i = 2; i + 1 < fields.size(); i++) {
            if (fields[i].empty()) {
                row.cells.emplace_back(std::nullopt);
            } else {
                row.cells.emplace_back(parse_cell_number(fields[i]));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_table(const Table &table, Format format, const std::string &path) {
    if (table.rows.empty()) {
        throw std::invalid_argument("refusing to write an empty table");
    }
    const std::string body = render(table, format);
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + target.parent_path().string() + ": " + ec.message());
        }
    }
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << body;
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

}  // namespace qdgate
