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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fano/lattice.hpp"
#include "fano/statistics.hpp"

namespace fano {

/// How the chain length of a sweep is chosen.
enum class ChainMode {
    Converged,  ///< chain_length_for(largest z, kappa, safety)
    Faithful,   ///< the fabricated 25-site array
    Explicit,   ///< base.n_chain as given
};

struct SweepConfig {
    LatticeSpec base;
    std::vector<double> z_values;
    std::optional<std::vector<double>> eps2_values;
    ChainMode chain = ChainMode::Converged;
    double safety = 1.5;
    std::string output_path;

    /// Throws InvalidParameter when grids are empty, negative or not strictly increasing.
    void validate() const;
};

/// Lattice the sweep actually runs on for a given largest distance.
LatticeSpec resolve_lattice(const SweepConfig& cfg, double z_max);

/// One evaluated parameter point.
struct SweepPoint {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double kappa = 0.0;
    SurvivalRecord survival;

    bool operator==(const SweepPoint&) const = default;
};

/// Dense (z x eps2) grid, stored z-major: cell(iz, ie) = cells[iz * n_eps2 + ie].
struct SurvivalMap {
    std::vector<double> z_values;
    std::vector<double> eps2_values;
    std::vector<SweepPoint> cells;

    const SweepPoint& cell(std::size_t iz, std::size_t ie) const {
        return cells[iz * eps2_values.size() + ie];
    }
};

/// Single point through the same block kernel the sweeps use.
SweepPoint evaluate_point(const LatticeSpec& spec, double z);

/// Survival versus z at fixed eps2 = base.eps2. One eigendecomposition is
/// shared by every z; points are evaluated in parallel.
std::vector<SweepPoint> sweep_z(const SweepConfig& cfg);

/// Survival versus eps2 at fixed z. One decomposition per eps2, in parallel.
std::vector<SweepPoint> sweep_detuning(const SweepConfig& cfg, double z_fixed);

/// Both grids. Columns (eps2 values) are decomposed and evaluated in parallel.
SurvivalMap survival_map(const SweepConfig& cfg);

namespace serial {

// Straightforward single-threaded references: a fresh full propagator per
// point, no decomposition reuse. Kept for tests and benchmarks.
std::vector<SweepPoint> sweep_z(const SweepConfig& cfg);
std::vector<SweepPoint> sweep_detuning(const SweepConfig& cfg, double z_fixed);
SurvivalMap survival_map(const SweepConfig& cfg);

}  // namespace serial

/// Coincidence counts of the four measurement configurations.
class CountsRecord {
public:
    /// Throws InvalidParameter for zero denominators or p_clas outside [0, 1].
    CountsRecord(std::uint64_t c_vv, std::uint64_t c_vv_dist, std::uint64_t c_ent,
                 std::uint64_t c_vh_dist, double p_clas);

    std::uint64_t c_vv() const noexcept { return c_vv_; }
    std::uint64_t c_vv_dist() const noexcept { return c_vv_dist_; }
    std::uint64_t c_ent() const noexcept { return c_ent_; }
    std::uint64_t c_vh_dist() const noexcept { return c_vh_dist_; }
    double p_clas() const noexcept { return p_clas_; }

private:
    std::uint64_t c_vv_;
    std::uint64_t c_vv_dist_;
    std::uint64_t c_ent_;
    std::uint64_t c_vh_dist_;
    double p_clas_;
};

struct CountEstimate {
    double p_boson = 0.0;
    double p_fermion = 0.0;
};

/// Boson and fermion survival estimates from delayed/undelayed count ratios
/// scaled by the classical survival. Values above 1 are returned as is.
CountEstimate normalize_counts(const CountsRecord& counts);

// ---------------------------------------------------------------------------
// Output

/// Flat row as written to CSV and JSON.
struct ResultRow {
    double z_mm = 0.0;
    double eps1_inv_mm = 0.0;
    double eps2_inv_mm = 0.0;
    double kappa_z = 0.0;
    double detuning_over_kappa = 0.0;
    double p_boson = 0.0;
    double p_fermion = 0.0;
    double p_classical = 0.0;
    double p_entangled = 0.0;

    bool operator==(const ResultRow&) const = default;
};

/// (column name, value) pairs in CSV column order.
std::vector<std::pair<std::string, double>> row_fields(const ResultRow& row);

ResultRow to_row(const SweepPoint& point);
std::vector<ResultRow> to_rows(std::span<const SweepPoint> points);

enum class OutputFormat { Csv, Json };

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader =
    "z_mm,eps1_inv_mm,eps2_inv_mm,kappa_z,detuning_over_kappa,"
    "p_boson,p_fermion,p_classical,p_entangled";

/// CSV text. Each preamble line is written first, prefixed with "# ".
/// Floats use 12 significant digits.
std::string format_csv(std::span<const ResultRow> rows,
                       std::span<const std::string> preamble = {});

/// JSON array of objects keyed by the CSV column names. Non-finite values are
/// written as the strings "inf", "-inf" or "nan".
std::string format_json(std::span<const ResultRow> rows);
std::vector<ResultRow> parse_json(const std::string& text);

/// Writes rows to `path`. Throws OutputError naming the path on I/O failure.
void emit_results(std::span<const ResultRow> rows, OutputFormat format, const std::string& path,
                  std::span<const std::string> preamble = {});

/// Writes text to path, throwing OutputError naming the path on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fano
