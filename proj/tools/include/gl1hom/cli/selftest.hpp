#ifndef GL1HOM_CLI_SELFTEST_HPP
#define GL1HOM_CLI_SELFTEST_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gl1hom/cli/config.hpp"

namespace gl1hom::cli {

struct SelftestOptions {
  std::uint64_t seed = 20240531;
  int threads = 1;
  Calibration calibration = Calibration::fitted();
  // debug hooks
  bool flip_zip_sign = false;
  bool zero_calibration = false;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;  // first failure, if any
  double seconds = 0;
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts,
                                      const std::function<void(const SuiteResult&)>& progress = {});

}  // namespace gl1hom::cli

#endif  // GL1HOM_CLI_SELFTEST_HPP
