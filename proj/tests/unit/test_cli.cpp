#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "gl1hom/cli/batch.hpp"
#include "gl1hom/cli/commands.hpp"
#include "gl1hom/cli/compute.hpp"
#include "gl1hom/cli/config.hpp"
#include "gl1hom/cli/disk_cache.hpp"
#include "gl1hom/cli/poly.hpp"
#include "gl1hom/transfer.hpp"

using namespace gl1hom;
using namespace gl1hom::cli;
namespace fs = std::filesystem;

namespace {

PoincarePolynomial poly(std::initializer_list<std::pair<const Bidegree, std::uint64_t>> t) { return {t}; }

Errc parse_error(const char* s) {
  try {
    parse_poly(s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed: " << s);
  return Errc::Timeout;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gl1hom-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Config quiet_config() {
  Config c;
  c.cache_dir.clear();
  return c;
}

}  // namespace

TEST_CASE("polynomial formatting") {
  CHECK(format_poly(poly({{{0, 0}, 1}, {{2, -4}, 1}, {{1, -4}, 1}})) == "1 + t^2q^-4 + tq^-4");
  CHECK(format_poly(poly({{{0, 0}, 1}})) == "1");
  CHECK(format_poly(poly({{{1, -2}, 2}})) == "2tq^-2");
  CHECK(format_poly(poly({{{0, 2}, 1}, {{-1, 2}, 1}, {{0, 0}, 1}, {{1, -2}, 1}, {{0, -2}, 1}})) ==
        "q^2 + q^2t^-1 + 1 + tq^-2 + q^-2");
  CHECK(format_poly(poly({{{1, 0}, 7}, {{-1, 0}, 3}, {{1, 2}, 6}})) == "6q^2t + 7t + 3t^-1");
  CHECK(format_poly(PoincarePolynomial{}) == "0");
}

TEST_CASE("polynomial parsing") {
  CHECK(parse_poly("2tq^-2") == poly({{{1, -2}, 2}}));
  CHECK(parse_poly("q^-2t") == poly({{{1, -2}, 1}}));
  CHECK(parse_poly("1") == poly({{{0, 0}, 1}}));
  CHECK(parse_poly("t + t") == poly({{{1, 0}, 2}}));
  CHECK(parse_poly("0") == PoincarePolynomial{});
  CHECK(parse_error("") == Errc::PolyParseError);
  CHECK(parse_error("t+q") == Errc::PolyParseError);
  CHECK(parse_error("t^") == Errc::PolyParseError);
  CHECK(parse_error("t^{-2}") == Errc::PolyParseError);
  CHECK(parse_error("tt") == Errc::PolyParseError);
  CHECK(parse_error("0t") == Errc::PolyParseError);
  CHECK(parse_error("1t") == Errc::PolyParseError);
  CHECK(parse_error("x") == Errc::PolyParseError);
  try {
    parse_poly("1 + t^2q^-6m");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("offset 11") != std::string::npos);
  }
}

TEST_CASE("format and parse are inverse on the reference corpus") {
  const auto corpus = read_corpus(GL1HOM_CORPUS);
  CHECK(corpus.size() > 200);
  for (const auto& e : corpus) {
    if (!e.expected) continue;
    CHECK(parse_poly(format_poly(*e.expected)) == *e.expected);
    if (e.expected_total_rank) CHECK(total_rank(*e.expected) == *e.expected_total_rank);
  }
}

TEST_CASE("corpus parsing") {
  const auto c = parse_corpus("name,braid,expected,expected_total_rank\n3_1,AAA,1 + t^2q^-4 + tq^-4,3\nx,\"Ab\",,\n");
  REQUIRE(c.size() == 2);
  CHECK(c[0].expected_total_rank == 3u);
  CHECK(c[1].braid == "Ab");
  CHECK_FALSE(c[1].expected);
  CHECK_THROWS_AS(parse_corpus("name,knot\n"), Error);
  CHECK_THROWS_AS(parse_corpus("name,braid\nk,A0\n"), Error);
  CHECK_THROWS_AS(parse_corpus("name,braid,expected\nk,A,t^\n"), Error);
  CHECK_THROWS_AS(read_corpus("/nonexistent/corpus.csv"), Error);
}

TEST_CASE("configuration") {
  Config c;
  apply_json(c, nlohmann::json::parse(R"({"threads": 3, "calibration": {"alpha": [1, 2, 3, 4]}})"));
  CHECK(c.threads == 3);
  CHECK(c.calibration.alpha == std::array<int, 4>{1, 2, 3, 4});
  CHECK(c.calibration.epsilon == Calibration::fitted().epsilon);
  CHECK_THROWS_AS(apply_json(c, nlohmann::json::parse(R"({"thread": 3})")), Error);
  CHECK_THROWS_AS(apply_json(c, nlohmann::json::parse(R"({"threads": 0})")), Error);
  CHECK_THROWS_AS(apply_json(c, nlohmann::json::parse(R"({"calibration": {"orientation": 2}})")), Error);

  const fs::path dir = scratch_dir("config");
  std::ofstream(dir / "c.json") << R"({"strand_cap": 5, "time_box_seconds": 2.5})";
  ::setenv("GL1HOM_THREADS", "2", 1);
  ::setenv("GL1HOM_CACHE_DIR", "/tmp/somewhere", 1);
  ::setenv("GL1HOM_CALIBRATION", R"({"orientation": 1})", 1);
  const Config loaded = load_config((dir / "c.json").string());
  ::unsetenv("GL1HOM_THREADS");
  ::unsetenv("GL1HOM_CACHE_DIR");
  ::unsetenv("GL1HOM_CALIBRATION");
  CHECK(loaded.strand_cap == 5);
  CHECK(loaded.time_box_seconds == 2.5);
  CHECK(loaded.threads == 2);
  CHECK(loaded.cache_dir == "/tmp/somewhere");
  CHECK(loaded.calibration.orientation == 1);
  CHECK(loaded.calibration.alpha == Calibration::fitted().alpha);
  ::setenv("GL1HOM_STRAND_CAP", "many", 1);
  CHECK_THROWS_AS(load_config(std::nullopt), Error);
  ::unsetenv("GL1HOM_STRAND_CAP");
  fs::remove_all(dir);
}

TEST_CASE("compute command") {
  const Config cfg = quiet_config();
  std::ostringstream out, err;
  CHECK(cmd_compute({"AAA", 0, false, false}, cfg, out, err) == kExitOk);
  CHECK(out.str() == "1 + t^2q^-4 + tq^-4\n");

  out.str("");
  CHECK(cmd_compute({"Ab", 3, true, false}, cfg, out, err) == kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["braid"] == "Ab");
  CHECK(j["characteristic"] == 3);
  CHECK(j["total_rank"] == 3);
  CHECK(j["poincare"].size() == 3);
  CHECK(j["calibration"]["orientation"] == -1);
  CHECK_FALSE(j.contains("seconds"));

  CHECK(cmd_compute({"", 0, false, false}, cfg, out, err) == kExitInput);
  CHECK(cmd_compute({"A0B", 0, false, false}, cfg, out, err) == kExitInput);
  CHECK(cmd_compute({"A", 4, false, false}, cfg, out, err) == kExitInput);
  CHECK(exit_code_for(Errc::NonIntegral) == kExitInternal);
  CHECK(exit_code_for(Errc::DSquareNonzero) == kExitInternal);
  CHECK(exit_code_for(Errc::NonIntegerEvaluation) == kExitInternal);
  CHECK(exit_code_for(Errc::Timeout) == kExitFailure);
}

TEST_CASE("batch runs and reports") {
  const Config cfg = quiet_config();
  const auto good = parse_corpus(
      "name,braid,expected,expected_total_rank\n"
      "3_1,AAA,1 + t^2q^-4 + tq^-4,3\n"
      "4_1,AbAb,q^2 + q^2t^-1 + 1 + tq^-2 + q^-2,5\n"
      "5_1,AAAAA,1 + t^2q^-4 + tq^-4 + t^4q^-8 + t^3q^-8,5\n");
  const RunReport r = run_batch(good, {}, cfg);
  CHECK(r.count(EntryStatus::Match) == 3);

  const auto bad = parse_corpus("name,braid,expected\n3_1,AAA,1 + tq^-4\nu,AB,\n");
  const RunReport rb = run_batch(bad, {}, cfg);
  CHECK(rb.entries[0].status == EntryStatus::Mismatch);
  CHECK(rb.entries[1].status == EntryStatus::NoExpectation);
  const auto j = report_to_json(rb);
  CHECK(j["summary"]["mismatch"] == 1);
  CHECK(j["summary"]["no_expectation"] == 1);
  CHECK(j["summary"]["total"] == 2);

  BatchOptions small;
  small.max_length = 4;
  CHECK(run_batch(good, small, cfg).entries.size() == 2);
}

TEST_CASE("batch command exit codes") {
  const fs::path dir = scratch_dir("batch");
  std::ofstream(dir / "ok.csv") << "name,braid,expected\n3_1,AAA,1 + t^2q^-4 + tq^-4\n";
  std::ofstream(dir / "wrong.csv") << "name,braid,expected\n3_1,AAA,1 + tq^-4\n";
  std::ofstream(dir / "broken.csv") << "name,braid,expected\n3_1,AAA,1 +\n";
  const Config cfg = quiet_config();
  std::ostringstream out, err;
  BatchArgs a;
  a.corpus = (dir / "ok.csv").string();
  a.report = (dir / "r.json").string();
  CHECK(cmd_batch(a, cfg, out, err) == kExitOk);
  CHECK(nlohmann::json::parse(std::ifstream(dir / "r.json"))["summary"]["match"] == 1);
  a.report = (dir / "r.csv").string();
  CHECK(cmd_batch(a, cfg, out, err) == kExitOk);
  std::stringstream csv;
  csv << std::ifstream(dir / "r.csv").rdbuf();
  CHECK(csv.str().starts_with("name,braid,status"));
  a.corpus = (dir / "wrong.csv").string();
  CHECK(cmd_batch(a, cfg, out, err) == kExitFailure);
  a.corpus = (dir / "broken.csv").string();
  CHECK(cmd_batch(a, cfg, out, err) == kExitInput);
  a.corpus = (dir / "missing.csv").string();
  CHECK(cmd_batch(a, cfg, out, err) == kExitInput);
  fs::remove_all(dir);
}

TEST_CASE("time box") {
  Config cfg = quiet_config();
  cfg.time_box_seconds = 0.05;
  const auto corpus = parse_corpus("name,braid\nbig,AbAbCbCbAc\nsmall,A\n");
  const RunReport r = run_batch(corpus, {}, cfg);
  CHECK(r.entries[0].status == EntryStatus::Error);
  CHECK(r.entries[0].error == "timeout");
  CHECK(r.entries[1].status == EntryStatus::NoExpectation);
}

TEST_CASE("reports are deterministic") {
  const Config cfg = quiet_config();
  const auto corpus = parse_corpus("name,braid\na,AbAb\nb,AAABaB\nc,Ab\n");
  BatchOptions o;
  o.characteristic = 3;
  const std::string first = report_to_json(run_batch(corpus, o, cfg)).dump();
  GramCache::shared().clear();
  o.jobs = 2;
  CHECK(report_to_json(run_batch(corpus, o, cfg)).dump() == first);
}

TEST_CASE("disk cache round trip and transparency") {
  const fs::path dir = scratch_dir("cache");
  const Config cfg = quiet_config();
  GramCache::shared().clear();
  const PoincarePolynomial reference = compute("AbAbC", 0, cfg).poly;

  auto cold = std::make_shared<DiskGramCache>(dir);
  DiskGramCache::install(cold);
  GramCache::shared().clear();
  CHECK(compute("AbAbC", 0, cfg).poly == reference);
  const std::size_t stored = cold->size();
  CHECK(stored > 0);
  DiskGramCache::uninstall();

  auto warm = std::make_shared<DiskGramCache>(dir);
  CHECK(warm->size() == stored);
  CHECK(warm->skipped_records() == 0);
  DiskGramCache::install(warm);
  GramCache::shared().clear();
  CHECK(compute("AbAbC", 0, cfg).poly == reference);
  DiskGramCache::uninstall();
  GramCache::shared().clear();

  // a corrupt line is skipped, a stale header discards the file
  std::ofstream(warm->file(), std::ios::app) << "{\"k\": 3, \"positions\": [1], \"entries\": [[0, 5, \"1\"]]}\n";
  CHECK(DiskGramCache(dir).skipped_records() == 1);
  {
    std::ofstream f(warm->file(), std::ios::trunc);
    f << R"({"format":"gl1hom-gram","version":0})" << '\n';
  }
  CHECK(DiskGramCache(dir).size() == 0);
  CHECK(fs::exists(fs::path(warm->file()).concat(".stale")));
  fs::remove_all(dir);
}

TEST_CASE("selftest hooks") {
  SelftestOptions o;
  o.flip_zip_sign = true;
  bool transpose_failed = false;
  for (const auto& r : run_selftest(o))
    if (r.name.find("transpose") != std::string::npos) transpose_failed = !r.passed;
  CHECK(transpose_failed);
}

TEST_CASE("oracle command") {
  const Config cfg = quiet_config();
  std::ostringstream out, err;
  CHECK(cmd_oracle("AAb", "101", cfg, out, err) == kExitOk);
  CHECK(out.str().find("MISMATCH") == std::string::npos);
  CHECK(cmd_oracle("AAb", "10", cfg, out, err) == kExitInput);
  CHECK(cmd_oracle("ABCD", "1111", cfg, out, err) == kExitInput);
}
