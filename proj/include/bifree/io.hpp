#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bifree/grid.hpp"

namespace bifree {

/// Bad keys, bad values, out-of-range settings.  CLI maps this to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable paths.  CLI maps this to exit 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything one run needs.  Populated from a flat key=value file, then
/// overridden by CLI flags.
struct RunConfig {
    ModelConfig model{1.0, 1.0, {0.0, 0.5}};
    int depth = 8;
    int n_gamma = 101;
    int n_delta = 101;
    std::string format = "csv";   // csv | json
    std::string output_path;      // empty means stdout

    /// depth in [2,16], grid dims in [3,4096], known format, valid model.
    bool valid(std::string* why = nullptr) const;
};

/// Accepted keys: norm1, norm2, alpha_re, alpha_im, depth, n_gamma, n_delta,
/// format.  '#' starts a comment; blank lines ignored.  Unknown keys or
/// unparsable values throw ConfigError.
void apply_key(RunConfig& rc, const std::string& key, const std::string& value);

/// Reads a flat config file.  Missing/unreadable file throws IoError.
RunConfig read_config_file(const std::string& path);

/// Header exactly "gamma,delta,g", then one row per lattice node, gamma
/// outer, 17 significant digits (round-trip exact for doubles).
void write_csv(const PrincipalGrid& g, std::ostream& os);

nlohmann::json grid_to_json(const PrincipalGrid& g);
PrincipalGrid grid_from_json(const nlohmann::json& j);

}  // namespace bifree
