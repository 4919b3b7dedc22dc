#pragma once
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "contagion/types.hpp"

namespace contagion {

using json = nlohmann::ordered_json;

struct SweepAxis {
    std::string path;  // dot path into the config, e.g. "network.population"
    std::vector<json> values;
};

struct SweepSpec {
    json base;  // preset-expanded config document
    std::vector<SweepAxis> axes;
    std::uint32_t replicates = 30;
    std::uint64_t master_seed = 0;

    std::size_t grid_size() const {
        std::size_t g = 1;
        for (const auto& a : axes) g *= a.values.size();
        return g;
    }
};

// Named scenario presets as config fragments.
const std::map<std::string, json>& presets();

// Preset expansion, unknown-key rejection (error names the offending path),
// type checks, and invariant validation.
SimulationConfig parse_simulation_config(const json& doc);
SimulationConfig parse_simulation_config_text(const std::string& text);

SweepSpec parse_sweep_spec(const json& doc);
SweepSpec parse_sweep_spec_text(const std::string& text);

json to_json(const SimulationConfig& cfg);

// Applies one grid point's axis values onto the base document and reparses.
SimulationConfig config_at_grid_point(const SweepSpec& spec, std::size_t grid_index);

}  // namespace contagion
