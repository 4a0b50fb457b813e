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


#pragma once

// Output artifacts: '#'-prefixed metadata block, CSV body with 17 significant digits,
// and a small self-contained SVG line chart.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace blockade {

/// Ordered "key: value" lines. Multi-line values are indented under their key.
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }
};

/// Numeric table with an optional leading text column (e.g. truth-table input labels).
struct Table {
    std::string label_column;         ///< empty: no text column
    std::vector<std::string> labels;  ///< one per row when label_column is set
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// printf("%.17g"); non-finite values print as nan, inf, -inf.
std::string format_double(double value);

std::string render_csv(const Metadata &metadata, const Table &table);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;  ///< NaN breaks the line
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

std::string render_svg(const Plot &plot);

/// Throws OutputError when the file cannot be created or written.
void write_text_file(const std::filesystem::path &path, const std::string &content);

}  // namespace blockade
