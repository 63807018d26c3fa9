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

#ifndef QDGATE_SWEEP_HPP
#define QDGATE_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdgate/cavity.hpp"
#include "qdgate/cluster.hpp"
#include "qdgate/gate.hpp"

namespace qdgate {

enum class Axis { KappaRatio, Cooperativity, Detuning, Bandwidth, EtaIn };

enum class Output { EtaH, EtaV, EtaS, McEtaS, PulseEtaS, MeanAttempts };

enum class Format { CSV, JSONLines, SVG };

/// Invalid user input (flags, config file, grid). The CLI maps it to exit 2.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Unreadable or unwritable file. The CLI maps it to exit 3.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string_view axis_name(Axis axis);
Axis parse_axis(std::string_view text);
std::string_view output_name(Output output);
Output parse_output(std::string_view text);
Format parse_format(std::string_view text);

/// Parameters held fixed while one of them is swept. Detuning is the probe
/// offset (omega_c - omega)/kappa, applied with omega_X = omega_c.
struct Baseline {
    double cooperativity = 0.25;
    double kappa_ratio = 13;  // kappa / kappa_s
    double gamma = 0.1;
    double detuning = 0;
    double eta_in = 1;
    double detector_efficiency = 1;
    double dephasing = 0;
    double bandwidth = 1e-4;  // pulse delta
    int max_recycles = 50;

    /// Copy with the swept quantity replaced by `value`.
    Baseline with(Axis axis, double value) const;
    CavityParams cavity() const;
    GateConfig gate() const;
};

struct SweepSpec {
    Axis axis = Axis::KappaRatio;
    std::vector<double> grid;
    Baseline fixed;
    std::vector<Output> outputs = {Output::EtaH, Output::EtaV, Output::EtaS};
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;

    /// Throws ConfigError.
    void validate() const;
};

/// "start:stop:step", inclusive of stop up to rounding. A bare number is a
/// one-point grid.
std::vector<double> parse_grid(std::string_view text);

/// Integers 1..30.
std::vector<double> default_grid();

/// Rounds to the 9 significant digits used in every emitted file.
double round_sig9(double value);

struct Row {
    double value;
    std::vector<std::optional<double>> cells;  // parallel to Table::columns
    std::string status = "ok";

    bool operator==(const Row &) const = default;
};

struct Table {
    std::string axis;
    std::vector<std::string> columns;
    std::vector<Row> rows;

    /// Index of `name` in columns, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;

    bool operator==(const Table &) const = default;
};

/// One row per grid point. Rows are computed in parallel, row i drawing its
/// Monte Carlo stream from seed ^ i. Degenerate points are flagged in the
/// row's status and leave the affected cells empty.
Table run_sweep(const SweepSpec &spec);

/// Factory statistics in the same schema: axis "target", one row, status set
/// to the strategy name ("sequential" or "doubling").
Table factory_table(int target, FactoryStrategy strategy, const FactoryStats &stats);

FactoryStrategy parse_strategy(std::string_view text);

std::string to_csv(const Table &table);
std::string to_json_lines(const Table &table);
std::string to_svg(const Table &table);
std::string render(const Table &table, Format format);

/// Inverse of to_csv. Throws ConfigError on malformed input.
Table parse_csv(std::string_view text);

/// Writes render(table, format) to `path`, creating parent directories.
/// Throws IoError.
void write_table(const Table &table, Format format, const std::string &path);

}  // namespace qdgate

#endif
