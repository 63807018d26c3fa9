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

#ifndef QDGATE_CONFIG_HPP
#define QDGATE_CONFIG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qdgate/sweep.hpp"

namespace qdgate {

/// Everything a sweep run needs besides the command line itself.
struct RunOptions {
    SweepSpec spec;
    Format format = Format::CSV;
    std::string out;  // empty: standard output
};

/// Comma-separated output column names, e.g. "eta_H,eta_S,mc_eta_S".
std::vector<Output> parse_outputs(std::string_view text);

/// Applies a YAML mapping whose keys mirror the CLI flags with underscores
/// (axis, grid, c, kappa_ratio, gamma, detuning, eta_in, detector_eff,
/// dephasing, bandwidth, max_recycles, trials, seed, threads, outputs,
/// format, out). `grid` is either "start:stop:step" or a list of numbers.
/// Keys not present leave `options` unchanged. Throws ConfigError.
void apply_config_text(std::string_view yaml, RunOptions &options);

/// apply_config_text on a file's contents. Throws IoError when unreadable.
void apply_config_file(const std::string &path, RunOptions &options);

}  // namespace qdgate

#endif
