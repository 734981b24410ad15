/**
 * Copyright 2026 The fanolattice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <vector>

namespace fano::svg {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> y;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;
    std::vector<Series> series;
    std::vector<std::string> comments;
};

/// Probabilities are clamped to [0, 1] for display only.
std::string render(const LinePlot& plot);

struct Heatmap {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;  // columns
    std::vector<double> y;  // rows
    std::vector<double> values;  // row-major, values[iy * x.size() + ix]
    std::vector<std::string> comments;
};

std::string render(const Heatmap& map);

}  // namespace fano::svg
