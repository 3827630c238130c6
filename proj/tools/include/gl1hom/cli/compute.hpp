#ifndef GL1HOM_CLI_COMPUTE_HPP
#define GL1HOM_CLI_COMPUTE_HPP

#include <cstdint>
#include <functional>
#include <stop_token>
#include <string_view>

#include "gl1hom/braid.hpp"
#include "gl1hom/cli/config.hpp"
#include "gl1hom/homology.hpp"

namespace gl1hom::cli {

struct ComputeResult {
  BraidWord braid;
  std::uint64_t characteristic = 0;
  PoincarePolynomial poly;
  std::size_t generators = 0;
  bool euler_ok = false;
  double seconds = 0;
};

/// Parses, builds the complex and takes homology. The Euler characteristic
/// check runs on every call; a failure is reported in the result.
ComputeResult compute(std::string_view braid_text, std::uint64_t characteristic, const Config& cfg,
                      std::stop_token stop = {});
ComputeResult compute(const BraidWord& braid, std::uint64_t characteristic, const Config& cfg,
                      std::stop_token stop = {});

/// Runs fn with a stop token that fires after `seconds`.
void run_with_deadline(double seconds, const std::function<void(std::stop_token)>& fn);

}  // namespace gl1hom::cli

#endif  // GL1HOM_CLI_COMPUTE_HPP
