#ifndef GL1HOM_CLI_BATCH_HPP
#define GL1HOM_CLI_BATCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gl1hom/cli/config.hpp"
#include "gl1hom/homology.hpp"

namespace gl1hom::cli {

struct CorpusEntry {
  std::string name;
  std::string braid;
  std::optional<PoincarePolynomial> expected;
  std::optional<std::uint64_t> expected_total_rank;
};

/// CSV with header name,braid,expected,expected_total_rank. Quoted fields are
/// allowed. Braids are checked against strand_cap. Throws Error{CorpusError}
/// with the line number.
std::vector<CorpusEntry> read_corpus(const std::string& path, int strand_cap = kDefaultStrandCap);
std::vector<CorpusEntry> parse_corpus(const std::string& text, int strand_cap = kDefaultStrandCap);

enum class EntryStatus { Match, Mismatch, NoExpectation, Error };
std::string to_string(EntryStatus s);

struct EntryResult {
  std::string name;
  std::string braid;
  EntryStatus status = EntryStatus::Error;
  std::optional<PoincarePolynomial> computed;
  std::optional<PoincarePolynomial> expected;
  std::string error;  // "timeout" or the exception text
  bool euler_ok = true;
  double seconds = 0;
};

struct RunReport {
  std::uint64_t characteristic = 0;
  Calibration calibration;
  std::vector<EntryResult> entries;
  std::size_t count(EntryStatus s) const;
};

struct BatchOptions {
  std::uint64_t characteristic = 0;
  std::optional<std::size_t> max_length;
  std::optional<int> max_index;
  int jobs = 1;  // entries run concurrently
};

/// Entries outside the length/index filters are left out of the report.
/// Per-entry failures are recorded, never thrown.
RunReport run_batch(const std::vector<CorpusEntry>& corpus, const BatchOptions& opts, const Config& cfg);

/// Deterministic for fixed inputs unless timings are requested.
nlohmann::json report_to_json(const RunReport& r, bool timings = false);
std::string report_to_csv(const RunReport& r, bool timings = false);

}  // namespace gl1hom::cli

#endif  // GL1HOM_CLI_BATCH_HPP
