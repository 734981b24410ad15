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

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "fano/experiments.hpp"

namespace fano {

namespace {

using json = nlohmann::ordered_json;

using Field = double ResultRow::*;

struct Column {
    const char* name;
    Field field;
};

constexpr std::array<Column, 9> kColumns = {{
    {"z_mm", &ResultRow::z_mm},
    {"eps1_inv_mm", &ResultRow::eps1_inv_mm},
    {"eps2_inv_mm", &ResultRow::eps2_inv_mm},
    {"kappa_z", &ResultRow::kappa_z},
    {"detuning_over_kappa", &ResultRow::detuning_over_kappa},
    {"p_boson", &ResultRow::p_boson},
    {"p_fermion", &ResultRow::p_fermion},
    {"p_classical", &ResultRow::p_classical},
    {"p_entangled", &ResultRow::p_entangled},
}};

void append_number(std::string& out, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    out += buf;
}

json encode(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

double decode(const json& value, const char* name) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const auto& s = value.get_ref<const std::string&>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw std::invalid_argument(std::string("field ") + name + " is not a number");
}

}  // namespace

std::vector<std::pair<std::string, double>> row_fields(const ResultRow& row) {
    std::vector<std::pair<std::string, double>> fields;
    for (const Column& col : kColumns) fields.emplace_back(col.name, row.*col.field);
    return fields;
}

ResultRow to_row(const SweepPoint& p) {
    const SurvivalRecord& s = p.survival;
    return {s.z,
            p.eps1,
            p.eps2,
            p.kappa * s.z,
            (p.eps2 - p.eps1) / p.kappa,
            s.p_boson,
            s.p_fermion,
            s.p_classical,
            s.p_entangled};
}

std::vector<ResultRow> to_rows(std::span<const SweepPoint> points) {
    std::vector<ResultRow> rows;
    rows.reserve(points.size());
    for (const SweepPoint& p : points) rows.push_back(to_row(p));
    return rows;
}

std::string format_csv(std::span<const ResultRow> rows, std::span<const std::string> preamble) {
    std::string out;
    for (const std::string& line : preamble) {
        out += "# ";
        out += line;
        out += '\n';
    }
    out += kCsvHeader;
    out += '\n';
    for (const ResultRow& row : rows) {
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
            if (c > 0) out += ',';
            append_number(out, row.*kColumns[c].field);
        }
        out += '\n';
    }
    return out;
}

std::string format_json(std::span<const ResultRow> rows) {
    json array = json::array();
    for (const ResultRow& row : rows) {
        json obj = json::object();
        for (const auto& [name, value] : row_fields(row)) obj[name] = encode(value);
        array.push_back(std::move(obj));
    }
    return array.dump(2) + "\n";
}

std::vector<ResultRow> parse_json(const std::string& text) {
    const json array = json::parse(text);
    if (!array.is_array()) {
        throw std::invalid_argument("expected a JSON array of result rows");
    }
    std::vector<ResultRow> rows;
    for (const json& obj : array) {
        ResultRow row;
        for (const Column& col : kColumns) row.*col.field = decode(obj.at(col.name), col.name);
        rows.push_back(row);
    }
    return rows;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw OutputError("cannot open '" + path + "' for writing: " + std::strerror(errno));
    }
    file << text;
    file.flush();
    if (!file) {
        throw OutputError("failed writing '" + path + "'");
    }
}

void emit_results(std::span<const ResultRow> rows, OutputFormat format, const std::string& path,
                  std::span<const std::string> preamble) {
    write_text_file(path, format == OutputFormat::Csv ? format_csv(rows, preamble) : format_json(rows));
}

}  // namespace fano
