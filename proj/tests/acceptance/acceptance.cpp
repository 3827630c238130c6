// One line per acceptance criterion; exit status is nonzero if any gated
// criterion fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "gl1hom/cli/batch.hpp"
#include "gl1hom/cli/compute.hpp"
#include "gl1hom/cli/poly.hpp"
#include "gl1hom/cli/selftest.hpp"

using namespace gl1hom;
using namespace gl1hom::cli;

namespace {

// Pinned limits. Polynomial comparisons are exact (tolerance 0).
constexpr double kSmallKnotSeconds = 1.0;
constexpr double kLargeKnotSeconds = 60.0;
constexpr double kBatchEntrySeconds = 600.0;
constexpr std::size_t kBatchMaxLength = 10;
constexpr int kBatchMaxIndex = 4;
constexpr double kSelftestSeconds = 120.0;

int failures = 0;

void report(bool gated, bool ok, const std::string& name, const std::string& detail) {
  if (gated && !ok) ++failures;
  std::printf("%s %s%s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), gated ? "" : " (informational)", detail.c_str());
  std::fflush(stdout);
}

Config config() {
  Config c;
  c.cache_dir.clear();
  c.time_box_seconds = kBatchEntrySeconds;
  return c;
}

void table_rows() {
  struct Row {
    const char* name;
    const char* braid;
    const char* expected;
    double limit;
  };
  const Row rows[] = {
      {"3_1", "AAA", "1 + t^2q^-4 + tq^-4", kSmallKnotSeconds},
      {"4_1", "AbAb", "q^2 + q^2t^-1 + 1 + tq^-2 + q^-2", kSmallKnotSeconds},
      {"5_1", "AAAAA", "1 + t^2q^-4 + tq^-4 + t^4q^-8 + t^3q^-8", kLargeKnotSeconds},
      {"7_1", "AAAAAAA", "1 + t^2q^-4 + tq^-4 + t^4q^-8 + t^3q^-8 + t^6q^-12 + t^5q^-12", kLargeKnotSeconds},
      {"8_19", "ABABABAB",
       "1 + t^2q^-4 + tq^-4 + t^2q^-6 + tq^-6 + t^4q^-8 + t^3q^-8 + t^3q^-10 + t^2q^-10 + t^6q^-12 + t^5q^-12",
       kLargeKnotSeconds},
  };
  bool ok = true;
  std::string detail;
  for (const Row& r : rows) {
    const ComputeResult res = compute(r.braid, 0, config());
    const std::string got = format_poly(res.poly);
    const bool row_ok = got == r.expected && res.seconds < r.limit;
    ok = ok && row_ok;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.3fs%s; ", r.name, res.seconds, row_ok ? "" : " MISMATCH");
    detail += buf;
    if (got != r.expected) detail += "got \"" + got + "\"; ";
  }
  report(true, ok, "table reproduction", detail);
}

void batch_gate() {
  const auto corpus = read_corpus(GL1HOM_CORPUS);
  BatchOptions o;
  o.max_length = kBatchMaxLength;
  o.max_index = kBatchMaxIndex;
  const RunReport r = run_batch(corpus, o, config());
  double worst = 0;
  std::string worst_name, bad;
  std::size_t with_rows = 0;
  for (const auto& e : r.entries) {
    if (e.seconds > worst) worst = e.seconds, worst_name = e.name;
    if (e.expected) ++with_rows;
    if (e.status == EntryStatus::Mismatch || e.status == EntryStatus::Error)
      bad += " " + e.name + "(" + to_string(e.status) + (e.error.empty() ? "" : ": " + e.error) + ")";
  }
  const bool ok = with_rows > 0 && r.count(EntryStatus::Match) == with_rows && bad.empty();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/%zu rows match (%zu entries without a row), slowest %s %.2fs", r.count(EntryStatus::Match),
                with_rows, r.count(EntryStatus::NoExpectation), worst_name.c_str(), worst);
  report(true, ok, "batch, length <= 10 and index <= 4", buf + bad);
}

void unknots() {
  bool ok = true;
  std::string detail;
  for (const char* w : {"", "A", "a", "AB", "Ab"}) {
    const BraidWord b = *w ? parse_braid(w) : BraidWord::from_letters({});
    const std::string got = format_poly(compute(b, 0, config()).poly);
    ok = ok && got == "1";
    detail += std::string("\"") + w + "\" -> " + got + "; ";
  }
  report(true, ok, "unknot invariance over Q", detail);
}

void char3() {
  std::vector<std::string> out;
  std::string detail;
  for (const char* w : {"A", "Ab", "AB"}) {
    out.push_back(format_poly(compute(w, 3, config()).poly));
    detail += std::string(w) + " -> " + out.back() + "; ";
  }
  const bool ok = out[0] != out[1] && out[0] != out[2] && out[1] != out[2];
  report(true, ok, "characteristic 3 outputs pairwise distinct", detail);
}

void properties() {
  SelftestOptions o;
  double total = 0;
  std::string failed;
  for (const auto& s : run_selftest(o)) {
    total += s.seconds;
    if (!s.passed) failed += " [" + s.name + ": " + s.detail + "]";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "all suites in %.1fs", total);
  report(true, failed.empty() && total < kSelftestSeconds, "property suites", buf + failed);
}

void total_ranks() {
  bool ok = true;
  std::string detail;
  const std::pair<const char*, std::uint64_t> rows[] = {{"AAA", 3}, {"AbAb", 5}, {"AAAAA", 5}};
  for (const auto& [w, want] : rows) {
    const auto got = total_rank(compute(w, 0, config()).poly);
    ok = ok && got == want;
    detail += std::string(w) + " " + std::to_string(got) + "/" + std::to_string(want) + "; ";
  }
  report(false, ok, "total ranks", detail);
}

}  // namespace

int main() {
  table_rows();
  unknots();
  char3();
  properties();
  total_ranks();
  batch_gate();
  return failures == 0 ? 0 : 1;
}
