#ifndef GL1HOM_CLI_COMMANDS_HPP
#define GL1HOM_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gl1hom/cli/batch.hpp"
#include "gl1hom/cli/config.hpp"
#include "gl1hom/cli/selftest.hpp"
#include "gl1hom/error.hpp"

namespace gl1hom::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitInput = 2, kExitInternal = 3 };

/// 2 for bad input, 3 for internal faults, 1 otherwise.
int exit_code_for(Errc code) noexcept;

struct ComputeArgs {
  std::string braid;
  std::uint64_t characteristic = 0;
  bool json = false;
  bool timings = false;
};
int cmd_compute(const ComputeArgs& args, const Config& cfg, std::ostream& out, std::ostream& err);

struct BatchArgs {
  std::string corpus;
  BatchOptions options;
  std::optional<std::string> report;  // .csv writes CSV, anything else JSON
  bool timings = false;
};
int cmd_batch(const BatchArgs& args, const Config& cfg, std::ostream& out, std::ostream& err);

int cmd_selftest(const SelftestOptions& opts, std::ostream& out);

/// Every gated pair of d.u.r. basis elements of one resolution: the oracle's
/// constant term next to evaluate1.
int cmd_oracle(const std::string& braid, const std::string& bits, const Config& cfg, std::ostream& out,
               std::ostream& err);

nlohmann::json compute_to_json(const struct ComputeResult& r, const Calibration& cal, bool timings);

}  // namespace gl1hom::cli

#endif  // GL1HOM_CLI_COMMANDS_HPP
