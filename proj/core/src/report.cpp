// Copyright 2026 The Blockade Authors
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


#include "blockade/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "blockade/errors.hpp"

namespace blockade {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string render_csv(const Metadata &metadata, const Table &table) {
    std::ostringstream out;
    for (const auto &[key, value] : metadata.entries) {
        if (value.find('\n') == std::string::npos) {
            out << "# " << key << ": " << value << '\n';
            continue;
        }
        out << "# " << key << ":\n";
        std::istringstream lines(value);
        for (std::string line; std::getline(lines, line);) {
            out << "#   " << line << '\n';
        }
    }
    bool first = true;
    if (!table.label_column.empty()) {
        out << table.label_column;
        first = false;
    }
    for (const auto &c : table.columns) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        first = true;
        if (!table.label_column.empty()) {
            out << table.labels.at(r);
            first = false;
        }
        for (double v : table.rows[r]) {
            out << (first ? "" : ",") << format_double(v);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::string escape_xml(const std::string &text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string tick_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

constexpr const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

std::string render_svg(const Plot &plot) {
    constexpr double width = 640, height = 420;
    constexpr double left = 70, right = 160, top = 40, bottom = 55;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto &s : plot.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                continue;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    }
    if (xmax - xmin < 1e-300) {
        xmin -= 0.5, xmax += 0.5;
    }
    if (ymax - ymin < 1e-12 * std::max(1.0, std::abs(ymax))) {
        const double pad = std::max(1e-3, 0.1 * std::abs(ymax));
        ymin -= pad, ymax += pad;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad, ymax += pad;
    }
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape_xml(plot.title) << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << fixed(pw) << "\" height=\"" << fixed(ph)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0;
        const double yv = ymin + (ymax - ymin) * k / 4.0;
        out << "<line x1=\"" << fixed(px(xv)) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(px(xv))
            << "\" y2=\"" << fixed(top + ph + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << fixed(top + ph + 18) << "\" text-anchor=\"middle\">"
            << tick_label(xv) << "</text>\n";
        out << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(py(yv)) << "\" x2=\"" << left << "\" y2=\""
            << fixed(py(yv)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(py(yv) + 4) << "\" text-anchor=\"end\">"
            << tick_label(yv) << "</text>\n";
    }
    out << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(height - 12) << "\" text-anchor=\"middle\">"
        << escape_xml(plot.x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fixed(top + ph / 2) << ")\">" << escape_xml(plot.y_label) << "</text>\n";

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const auto &series = plot.series[s];
        const char *color = kColors[s % std::size(kColors)];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
                    << "\"/>\n";
                points.clear();
            }
        };
        for (std::size_t i = 0; i < series.x.size() && i < series.y.size(); ++i) {
            if (!std::isfinite(series.x[i]) || !std::isfinite(series.y[i])) {
                flush();
                continue;
            }
            points += (points.empty() ? "" : " ") + fixed(px(series.x[i])) + "," + fixed(py(series.y[i]));
        }
        flush();
        const double ly = top + 12 + 18.0 * static_cast<double>(s);
        out << "<line x1=\"" << fixed(left + pw + 12) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(left + pw + 36)
            << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fixed(left + pw + 42) << "\" y=\"" << fixed(ly + 4) << "\">" << escape_xml(series.name)
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw OutputError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw OutputError("failed writing '" + path.string() + "'");
    }
}

}  // namespace blockade
