#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deltasolve/data.hpp"
#include "deltasolve/dispersive.hpp"
#include "deltasolve/propagator.hpp"
#include "deltasolve/types.hpp"

namespace deltasolve::cli {

enum class Format { csv, json };

struct RunConfig {
    InteractionConfig interaction;
    InitialData initial_data;
    std::vector<double> times;
    std::vector<Vec3> points;  // evolve only; empty means "use the sample grid"
    SampleGrid grid;
    EvolveOptions evolve;
    bool compare = false;  // evolve: closed form and spectral side by side
    std::optional<double> kappa_max;
    Format format = Format::csv;
    std::optional<std::string> out;
};

// Schema violations are reported as ConfigError with the JSON path of the
// offending field, e.g. "initial_data.gaussians[0].sigma: must be positive".
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace deltasolve::cli
