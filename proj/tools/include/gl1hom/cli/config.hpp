#ifndef GL1HOM_CLI_CONFIG_HPP
#define GL1HOM_CLI_CONFIG_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "gl1hom/braid.hpp"
#include "gl1hom/complex.hpp"

namespace gl1hom::cli {

struct Config {
  int threads = 1;
  int strand_cap = kDefaultStrandCap;
  double time_box_seconds = 600.0;
  std::string cache_dir;  // empty disables the disk cache
  Calibration calibration = Calibration::fitted();
};

/// Default cache location: $XDG_CACHE_HOME/gl1hom, else $HOME/.cache/gl1hom.
std::string default_cache_dir();

/// Defaults, then the JSON file (if path is given), then the environment:
/// GL1HOM_THREADS, GL1HOM_STRAND_CAP, GL1HOM_TIME_BOX, GL1HOM_CACHE_DIR and
/// GL1HOM_CALIBRATION (a JSON object like the "calibration" key). Unknown
/// keys and malformed values throw Error{ConfigError}.
Config load_config(const std::optional<std::string>& path);

/// Applies the keys present in j on top of cfg.
void apply_json(Config& cfg, const nlohmann::json& j);

nlohmann::json calibration_to_json(const Calibration& c);
Calibration calibration_from_json(const nlohmann::json& j, Calibration base = Calibration::fitted());

}  // namespace gl1hom::cli

#endif  // GL1HOM_CLI_CONFIG_HPP
