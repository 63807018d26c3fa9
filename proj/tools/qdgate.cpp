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

// qdgate: parameter sweeps and cluster-factory runs for the heralded
// spin-spin parity gate.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qdgate/config.hpp"
#include "qdgate/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Flags {
    std::string config;
    std::string axis;
    std::string grid;
    double c = 0;
    double kappa_ratio = 0;
    double gamma = 0;
    double detuning = 0;
    double eta_in = 0;
    double detector_eff = 0;
    double dephasing = 0;
    double bandwidth = 0;
    int max_recycles = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string outputs;
    std::string format;
    std::string out;
};

struct Registered {
    CLI::Option *c, *kappa_ratio, *gamma, *detuning, *eta_in, *detector_eff, *dephasing, *bandwidth,
        *max_recycles, *trials, *seed, *threads, *format, *out;
};

Registered add_common(CLI::App &app, Flags &f) {
    Registered r{};
    r.c = app.add_option("--c", f.c, "Cooperativity g^2/(gamma kappa_T)");
    r.kappa_ratio = app.add_option("--kappa-ratio", f.kappa_ratio, "kappa / kappa_s");
    r.gamma = app.add_option("--gamma", f.gamma, "Trion decay rate in units of kappa");
    r.detuning = app.add_option("--detuning", f.detuning, "Probe detuning (omega_c - omega)/kappa, omega_X = omega_c");
    r.eta_in = app.add_option("--eta-in", f.eta_in, "Cavity mode-matching amplitude");
    r.detector_eff = app.add_option("--detector-eff", f.detector_eff, "Detector efficiency");
    r.dephasing = app.add_option("--dephasing", f.dephasing, "Dephasing probability per attempt");
    r.bandwidth = app.add_option("--bandwidth", f.bandwidth, "Pulse bandwidth delta in units of kappa");
    r.max_recycles = app.add_option("--max-recycles", f.max_recycles, "Recycling attempts before giving up");
    r.trials = app.add_option("--trials", f.trials, "Monte Carlo trials");
    r.seed = app.add_option("--seed", f.seed, "RNG seed");
    r.threads = app.add_option("--threads", f.threads, "Worker threads (0 = all cores)");
    r.format = app.add_option("--format", f.format, "csv, jsonl or svg");
    r.out = app.add_option("--out", f.out, "Output file (default: standard output)");
    return r;
}

void override_baseline(const Registered &r, const Flags &f, qdgate::RunOptions &o) {
    qdgate::Baseline &b = o.spec.fixed;
    if (r.c->count()) b.cooperativity = f.c;
    if (r.kappa_ratio->count()) b.kappa_ratio = f.kappa_ratio;
    if (r.gamma->count()) b.gamma = f.gamma;
    if (r.detuning->count()) b.detuning = f.detuning;
    if (r.eta_in->count()) b.eta_in = f.eta_in;
    if (r.detector_eff->count()) b.detector_efficiency = f.detector_eff;
    if (r.dephasing->count()) b.dephasing = f.dephasing;
    if (r.bandwidth->count()) b.bandwidth = f.bandwidth;
    if (r.max_recycles->count()) b.max_recycles = f.max_recycles;
    if (r.trials->count()) o.spec.trials = f.trials;
    if (r.seed->count()) o.spec.seed = f.seed;
    if (r.threads->count()) o.spec.threads = f.threads;
    if (r.format->count()) o.format = qdgate::parse_format(f.format);
    if (r.out->count()) o.out = f.out;
}

std::string_view extension(qdgate::Format format) {
    switch (format) {
        case qdgate::Format::CSV:
            return ".csv";
        case qdgate::Format::JSONLines:
            return ".jsonl";
        case qdgate::Format::SVG:
            return ".svg";
    }
    return "";
}

/// Relative paths, and the default file name when --out is absent, resolve
/// against $QDGATE_OUTPUT_DIR when it is set.
std::optional<std::string> resolve_output(const std::string &out, const std::string &stem, qdgate::Format format) {
    const char *dir = std::getenv("QDGATE_OUTPUT_DIR");
    const bool have_dir = dir != nullptr && *dir != '\0';
    if (out.empty()) {
        if (!have_dir) {
            return std::nullopt;
        }
        return (std::filesystem::path(dir) / (stem + std::string(extension(format)))).string();
    }
    std::filesystem::path p(out);
    if (have_dir && p.is_relative()) {
        p = std::filesystem::path(dir) / p;
    }
    return p.string();
}

void emit(const qdgate::Table &table, qdgate::Format format, const std::string &out, const std::string &stem) {
    if (auto path = resolve_output(out, stem, format)) {
        qdgate::write_table(table, format, *path);
    } else {
        std::cout << qdgate::render(table, format);
        std::cout.flush();
        if (!std::cout) {
            throw qdgate::IoError("failed writing to standard output");
        }
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heralded parity gate simulator: efficiency sweeps and cluster-state factory runs"};
    app.require_subcommand(1);

    Flags sweep_flags;
    CLI::App *sweep = app.add_subcommand("sweep", "Sweep one parameter and tabulate gate efficiencies");
    Registered sweep_opts = add_common(*sweep, sweep_flags);
    CLI::Option *axis = sweep->add_option("--axis", sweep_flags.axis, "kappa_ratio, c, detuning, bandwidth or eta_in");
    CLI::Option *grid = sweep->add_option("--grid", sweep_flags.grid, "start:stop:step (default 1:30:1)");
    CLI::Option *outputs = sweep->add_option(
        "--outputs", sweep_flags.outputs, "Comma-separated: eta_H,eta_V,eta_S,mc_eta_S,pulse_eta_S,mean_attempts");
    sweep->add_option("--config", sweep_flags.config, "YAML file with the same keys; flags take precedence");

    Flags factory_flags;
    int target = 4;
    std::string strategy = "sequential";
    std::uint64_t max_ops = 100000;
    CLI::App *factory = app.add_subcommand("factory", "Monte Carlo cost of building a linear cluster");
    Registered factory_opts = add_common(*factory, factory_flags);
    factory->add_option("--target", target, "Cluster length (1-10)")->capture_default_str();
    factory->add_option("--strategy", strategy, "sequential or doubling")->capture_default_str();
    factory->add_option("--max-ops", max_ops, "Gate operations before a build is abandoned")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        qdgate::RunOptions options;
        options.spec.grid = qdgate::default_grid();
        if (sweep->parsed()) {
            if (!sweep_flags.config.empty()) {
                qdgate::apply_config_file(sweep_flags.config, options);
            }
            override_baseline(sweep_opts, sweep_flags, options);
            if (axis->count()) options.spec.axis = qdgate::parse_axis(sweep_flags.axis);
            if (grid->count()) options.spec.grid = qdgate::parse_grid(sweep_flags.grid);
            if (outputs->count()) options.spec.outputs = qdgate::parse_outputs(sweep_flags.outputs);
            options.spec.validate();
            qdgate::Table table = qdgate::run_sweep(options.spec);
            emit(table, options.format, options.out, "sweep_" + table.axis);
        } else {
            options.spec.trials = 1000;
            override_baseline(factory_opts, factory_flags, options);
            const qdgate::FactoryStrategy s = qdgate::parse_strategy(strategy);
            qdgate::GateConfig gate;
            try {
                gate = options.spec.fixed.gate();
            } catch (const std::invalid_argument &e) {
                throw qdgate::ConfigError(e.what());
            }
            if (target < 1 || target > 10) {
                throw qdgate::ConfigError("--target must be in [1, 10]");
            }
            qdgate::FactoryStats stats = qdgate::simulate_factory(
                target, gate, s, qdgate::RandomStream(options.spec.seed), options.spec.trials, options.spec.threads,
                max_ops);
            emit(qdgate::factory_table(target, s, stats), options.format, options.out,
                 "factory_" + std::to_string(target));
        }
    } catch (const qdgate::IoError &e) {
        std::cerr << "qdgate: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "qdgate: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
