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

#include "qdgate/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "qdgate/parallel.hpp"
#include "qdgate/pulse.hpp"

namespace qdgate {

namespace {

constexpr std::array<std::pair<Axis, std::string_view>, 5> kAxes{{
    {Axis::KappaRatio, "kappa_ratio"},
    {Axis::Cooperativity, "c"},
    {Axis::Detuning, "detuning"},
    {Axis::Bandwidth, "bandwidth"},
    {Axis::EtaIn, "eta_in"},
}};

constexpr std::array<std::pair<Output, std::string_view>, 6> kOutputs{{
    {Output::EtaH, "eta_H"},
    {Output::EtaV, "eta_V"},
    {Output::EtaS, "eta_S"},
    {Output::McEtaS, "mc_eta_S"},
    {Output::PulseEtaS, "pulse_eta_S"},
    {Output::MeanAttempts, "mean_attempts"},
}};

bool wants(const SweepSpec &spec, Output o) {
    return std::find(spec.outputs.begin(), spec.outputs.end(), o) != spec.outputs.end();
}

double parse_number(std::string_view text) {
    double value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

StateVector plus_plus() {
    const double h = std::numbers::sqrt2 / 2;
    std::array<cplx, 2> plus{h, h};
    std::array<std::array<cplx, 2>, 2> factors{plus, plus};
    return StateVector::product(factors);
}

Row compute_row(const SweepSpec &spec, const std::vector<std::string> &columns, std::size_t index) {
    const double x = spec.grid[index];
    const Baseline point = spec.fixed.with(spec.axis, x);
    Row row{round_sig9(x), std::vector<std::optional<double>>(columns.size()), "ok"};
    auto set = [&](std::string_view name, double v) {
        for (std::size_t c = 0; c < columns.size(); c++) {
            if (columns[c] == name) {
                row.cells[c] = round_sig9(v);
            }
        }
    };
    auto flag = [&](std::string_view what) {
        row.status = row.status == "ok" ? std::string(what) : row.status + ";" + std::string(what);
    };

    const CavityParams cavity = point.cavity();
    const GateConfig gate = point.gate();

    const double eta_in2 = gate.eta_in * gate.eta_in;
    const double eta_h = gate.detector_efficiency * eta_in2 * std::norm(gate.pair.d);
    const double eta_v = gate.detector_efficiency * (eta_in2 * std::norm(gate.pair.s) + 1 - eta_in2);
    set("eta_H", eta_h);
    set("eta_V", eta_v);
    if (wants(spec, Output::EtaS)) {
        try {
            set("eta_S", effective_etas(gate).eta_s);
        } catch (const DegenerateRecycling &) {
            flag("degenerate_recycling");
        }
    }

    if (wants(spec, Output::McEtaS) || wants(spec, Output::MeanAttempts)) {
        const RandomStream rng(spec.seed ^ static_cast<std::uint64_t>(index));
        GateStatistics stats = simulate_gate(gate, plus_plus(), 0, 1, spec.trials, rng, 1);
        set("mc_eta_S", stats.success_rate());
        set("mc_stderr", stats.standard_error());
        set("mean_attempts", stats.mean_attempts());
    }

    if (wants(spec, Output::PulseEtaS)) {
        PulseSpec pulse;
        pulse.delta = point.bandwidth;
        pulse.center = -point.detuning;
        try {
            set("pulse_eta_S", pulse_etas(cavity, pulse).eta_s);
        } catch (const QuadratureError &) {
            flag("quadrature_unresolved");
        } catch (const DegenerateRecycling &) {
            flag("degenerate_recycling");
        }
    }
    return row;
}

}  // namespace

std::string_view axis_name(Axis axis) {
    for (auto [a, name] : kAxes) {
        if (a == axis) {
            return name;
        }
    }
    throw std::invalid_argument("unknown axis");
}

Axis parse_axis(std::string_view text) {
    for (auto [a, name] : kAxes) {
        if (name == text) {
            return a;
        }
    }
    throw ConfigError(
        "unknown axis '" + std::string(text) + "' (expected kappa_ratio, c, detuning, bandwidth or eta_in)");
}

std::string_view output_name(Output output) {
    for (auto [o, name] : kOutputs) {
        if (o == output) {
            return name;
        }
    }
    throw std::invalid_argument("unknown output");
}

Output parse_output(std::string_view text) {
    for (auto [o, name] : kOutputs) {
        if (name == text) {
            return o;
        }
    }
    throw ConfigError("unknown output column '" + std::string(text) + "'");
}

Format parse_format(std::string_view text) {
    if (text == "csv") {
        return Format::CSV;
    }
    if (text == "jsonl" || text == "json") {
        return Format::JSONLines;
    }
    if (text == "svg") {
        return Format::SVG;
    }
    throw ConfigError("unknown format '" + std::string(text) + "' (expected csv, jsonl or svg)");
}

Baseline Baseline::with(Axis axis, double value) const {
    Baseline out = *this;
    switch (axis) {
        case Axis::KappaRatio:
            out.kappa_ratio = value;
            break;
        case Axis::Cooperativity:
            out.cooperativity = value;
            break;
        case Axis::Detuning:
            out.detuning = value;
            break;
        case Axis::Bandwidth:
            out.bandwidth = value;
            break;
        case Axis::EtaIn:
            out.eta_in = value;
            break;
    }
    return out;
}

CavityParams Baseline::cavity() const {
    CavityParams p;
    p.gamma = gamma;
    p.cavity_detuning = detuning;
    p.trion_detuning = detuning;
    p = p.with_kappa_ratio(kappa_ratio).with_cooperativity(cooperativity);
    p.validate();
    return p;
}

GateConfig Baseline::gate() const {
    GateConfig g;
    g.pair = reflection_pair(cavity());
    g.eta_in = eta_in;
    g.detector_efficiency = detector_efficiency;
    g.dephasing_per_attempt = dephasing;
    g.max_recycles = max_recycles;
    g.validate();
    return g;
}

void SweepSpec::validate() const {
    if (grid.empty()) {
        throw ConfigError("sweep grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); i++) {
        if (!std::isfinite(grid[i])) {
            throw ConfigError("sweep grid values must be finite");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ConfigError("sweep grid must be strictly increasing");
        }
    }
    if (outputs.empty()) {
        throw ConfigError("no output columns requested");
    }
    if (trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    try {
        for (double x : grid) {
            Baseline point = fixed.with(axis, x);
            point.gate();
            PulseSpec pulse;
            pulse.delta = point.bandwidth;
            pulse.validate();
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon - pos));
        if (colon == std::string_view::npos) {
            break;
        }
        pos = colon + 1;
    }
    if (parts.size() == 1) {
        return {round_sig9(parse_number(parts[0]))};
    }
    if (parts.size() != 3) {
        throw ConfigError("grid must be start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = parse_number(parts[0]);
    const double stop = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0) || !std::isfinite(step) || stop < start) {
        throw ConfigError("grid needs finite start <= stop and a positive step");
    }
    const double count = std::floor((stop - start) / step + 1e-9) + 1;
    if (count > 1e6) {
        throw ConfigError("grid has more than a million points");
    }
    std::vector<double> grid;
    for (int i = 0; i < static_cast<int>(count); i++) {
        grid.push_back(round_sig9(start + i * step));
    }
    return grid;
}

std::vector<double> default_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 30; k++) {
        grid.push_back(k);
    }
    return grid;
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); i++) {
        if (columns[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

Table run_sweep(const SweepSpec &spec) {
    spec.validate();
    Table table;
    table.axis = std::string(axis_name(spec.axis));
    for (auto [o, name] : kOutputs) {
        if (wants(spec, o)) {
            table.columns.emplace_back(name);
        }
        if (o == Output::McEtaS && wants(spec, o)) {
            table.columns.emplace_back("mc_stderr");
        }
    }
    table.rows.resize(spec.grid.size());
    parallel_for(spec.grid.size(), spec.threads, [&](std::size_t i) {
        table.rows[i] = compute_row(spec, table.columns, i);
    });
    return table;
}

FactoryStrategy parse_strategy(std::string_view text) {
    if (text == "sequential") {
        return FactoryStrategy::SequentialGrowth;
    }
    if (text == "doubling") {
        return FactoryStrategy::PairwiseDoubling;
    }
    throw ConfigError("unknown strategy '" + std::string(text) + "' (expected sequential or doubling)");
}

Table factory_table(int target, FactoryStrategy strategy, const FactoryStats &stats) {
    Table table;
    table.axis = "target";
    table.columns = {"trials",        "builds",       "budget_exhausted", "mean_photons",
                     "var_photons",   "mean_gate_ops", "var_gate_ops",     "mean_fidelity"};
    Row row{static_cast<double>(target), {}, strategy == FactoryStrategy::SequentialGrowth ? "sequential" : "doubling"};
    for (double v : {static_cast<double>(stats.trials), static_cast<double>(stats.builds),
                     static_cast<double>(stats.budget_exhausted), stats.mean_photons, stats.var_photons,
                     stats.mean_gate_ops, stats.var_gate_ops, stats.mean_fidelity}) {
        row.cells.emplace_back(round_sig9(v));
    }
    if (stats.builds == 0) {
        for (std::size_t c = 3; c < row.cells.size(); c++) {
            row.cells[c].reset();
        }
    }
    table.rows.push_back(std::move(row));
    return table;
}

}  // namespace qdgate
