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

#include "qdgate/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace qdgate {

namespace {

const std::set<std::string> kKnownKeys = {
    "axis", "grid", "c", "kappa_ratio", "gamma", "detuning", "eta_in", "detector_eff", "dephasing",
    "bandwidth", "max_recycles", "trials", "seed", "threads", "outputs", "format", "out",
};

template <typename T>
T scalar(const YAML::Node &node, const std::string &key) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception &) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

template <typename T>
void read(const YAML::Node &root, const std::string &key, T &target) {
    if (const YAML::Node node = root[key]) {
        target = scalar<T>(node, key);
    }
}

}  // namespace

std::vector<Output> parse_outputs(std::string_view text) {
    std::vector<Output> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view name = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        Output o = parse_output(name);
        if (std::find(out.begin(), out.end(), o) == out.end()) {
            out.push_back(o);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

void apply_config_text(std::string_view yaml, RunOptions &options) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml));
    } catch (const YAML::Exception &e) {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }
    if (root.IsNull()) {
        return;
    }
    if (!root.IsMap()) {
        throw ConfigError("config must be a key-value mapping");
    }
    for (const auto &entry : root) {
        const std::string key = scalar<std::string>(entry.first, "<key>");
        if (!kKnownKeys.contains(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    SweepSpec &spec = options.spec;
    if (const YAML::Node node = root["axis"]) {
        spec.axis = parse_axis(scalar<std::string>(node, "axis"));
    }
    if (const YAML::Node node = root["grid"]) {
        if (node.IsSequence()) {
            spec.grid.clear();
            for (const YAML::Node &v : node) {
                spec.grid.push_back(round_sig9(scalar<double>(v, "grid")));
            }
        } else {
            spec.grid = parse_grid(scalar<std::string>(node, "grid"));
        }
    }
    read(root, "c", spec.fixed.cooperativity);
    read(root, "kappa_ratio", spec.fixed.kappa_ratio);
    read(root, "gamma", spec.fixed.gamma);
    read(root, "detuning", spec.fixed.detuning);
    read(root, "eta_in", spec.fixed.eta_in);
    read(root, "detector_eff", spec.fixed.detector_efficiency);
    read(root, "dephasing", spec.fixed.dephasing);
    read(root, "bandwidth", spec.fixed.bandwidth);
    read(root, "max_recycles", spec.fixed.max_recycles);
    read(root, "trials", spec.trials);
    read(root, "seed", spec.seed);
    read(root, "threads", spec.threads);
    if (const YAML::Node node = root["outputs"]) {
        if (node.IsSequence()) {
            spec.outputs.clear();
            for (const YAML::Node &v : node) {
                Output o = parse_output(scalar<std::string>(v, "outputs"));
                if (std::find(spec.outputs.begin(), spec.outputs.end(), o) == spec.outputs.end()) {
                    spec.outputs.push_back(o);
                }
            }
        } else {
            spec.outputs = parse_outputs(scalar<std::string>(node, "outputs"));
        }
    }
    if (const YAML::Node node = root["format"]) {
        options.format = parse_format(scalar<std::string>(node, "format"));
    }
    read(root, "out", options.out);
}

void apply_config_file(const std::string &path, RunOptions &options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(text.str(), options);
}

}  // namespace qdgate
