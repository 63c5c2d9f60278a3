#pragma once

#include <qslit/analysis.hpp>
#include <qslit/ensemble.hpp>
#include <qslit/integrate.hpp>
#include <qslit/model.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qslit {

struct OutputConfig {
    std::string dir = "out";
    bool svg = false;
    bool envelope = true;
    std::vector<double> snapshot_times;
};

struct RunConfig {
    PhysParams physics;
    IntegratorConfig integrator;
    EnsembleConfig ensemble;
    HistogramSpec histogram;
    OutputConfig output;
};

RunConfig default_config();

// Minimal TOML reader covering the configuration schema: [section] headers,
// scalar key = value pairs (float, integer, boolean, "string") and flat
// arrays of numbers. Unknown sections or keys are errors.
using TomlValue = std::variant<double, long long, bool, std::string, std::vector<double>>;
using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

TomlTable parse_toml(std::istream& is);          // throws config_error with line numbers
RunConfig config_from_table(const TomlTable& t); // defaults overlaid with table values
RunConfig load_config(const std::string& path);  // throws config_error

// Cross-validates every sub-config; throws domain_error / config_error.
void validate_config(const RunConfig& cfg);

}  // namespace qslit
