#include "gl1hom/cli/config.hpp"

#include <cstdlib>
#include <fstream>

#include "gl1hom/error.hpp"

namespace gl1hom::cli {

namespace {

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return (v && *v) ? v : nullptr;
}

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::ConfigError, std::string(what) + ": not an integer: " + s);
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::ConfigError, std::string(what) + ": not a number: " + s);
}

std::array<int, 4> four(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 4) throw Error(Errc::ConfigError, std::string(what) + " must have 4 integers");
  std::array<int, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!j[i].is_number_integer()) throw Error(Errc::ConfigError, std::string(what) + " must have 4 integers");
    out[i] = j[i].get<int>();
  }
  return out;
}

void check_ranges(const Config& c) {
  if (c.threads < 1) throw Error(Errc::ConfigError, "threads must be positive");
  if (c.strand_cap < 1) throw Error(Errc::ConfigError, "strand_cap must be positive");
  if (!(c.time_box_seconds > 0)) throw Error(Errc::ConfigError, "time_box_seconds must be positive");
}

}  // namespace

std::string default_cache_dir() {
  if (const char* x = env("XDG_CACHE_HOME")) return std::string(x) + "/gl1hom";
  if (const char* h = env("HOME")) return std::string(h) + "/.cache/gl1hom";
  return {};
}

nlohmann::json calibration_to_json(const Calibration& c) {
  return {{"orientation", c.orientation}, {"alpha", c.alpha}, {"epsilon", c.epsilon}};
}

Calibration calibration_from_json(const nlohmann::json& j, Calibration base) {
  if (!j.is_object()) throw Error(Errc::ConfigError, "calibration must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "orientation") {
      if (!value.is_number_integer() || (value.get<int>() != 1 && value.get<int>() != -1))
        throw Error(Errc::ConfigError, "orientation must be 1 or -1");
      base.orientation = value.get<int>();
    } else if (key == "alpha") {
      base.alpha = four(value, "alpha");
    } else if (key == "epsilon") {
      base.epsilon = four(value, "epsilon");
    } else {
      throw Error(Errc::ConfigError, "unknown calibration key: " + key);
    }
  }
  return base;
}

void apply_json(Config& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::ConfigError, "configuration must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "threads") {
        cfg.threads = value.get<int>();
      } else if (key == "strand_cap") {
        cfg.strand_cap = value.get<int>();
      } else if (key == "time_box_seconds") {
        cfg.time_box_seconds = value.get<double>();
      } else if (key == "cache_dir") {
        cfg.cache_dir = value.get<std::string>();
      } else if (key == "calibration") {
        cfg.calibration = calibration_from_json(value, cfg.calibration);
      } else {
        throw Error(Errc::ConfigError, "unknown key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, e.what());
  }
  check_ranges(cfg);
}

Config load_config(const std::optional<std::string>& path) {
  Config cfg;
  cfg.cache_dir = default_cache_dir();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw Error(Errc::ConfigError, "cannot open " + *path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ConfigError, *path + ": " + e.what());
    }
    apply_json(cfg, j);
  }
  if (const char* v = env("GL1HOM_THREADS")) cfg.threads = to_int(v, "GL1HOM_THREADS");
  if (const char* v = env("GL1HOM_STRAND_CAP")) cfg.strand_cap = to_int(v, "GL1HOM_STRAND_CAP");
  if (const char* v = env("GL1HOM_TIME_BOX")) cfg.time_box_seconds = to_double(v, "GL1HOM_TIME_BOX");
  // set but empty disables the cache
  if (const char* v = std::getenv("GL1HOM_CACHE_DIR")) cfg.cache_dir = v;
  if (const char* v = env("GL1HOM_CALIBRATION")) {
    try {
      cfg.calibration = calibration_from_json(nlohmann::json::parse(v), cfg.calibration);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ConfigError, std::string("GL1HOM_CALIBRATION: ") + e.what());
    }
  }
  check_ranges(cfg);
  return cfg;
}

}  // namespace gl1hom::cli
