#include "gl1hom/cli/batch.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "gl1hom/cli/compute.hpp"
#include "gl1hom/cli/poly.hpp"
#include "gl1hom/error.hpp"

namespace gl1hom::cli {

namespace {

[[noreturn]] void corpus_fail(std::size_t line, const std::string& msg) {
  throw Error(Errc::CorpusError, "line " + std::to_string(line) + ": " + msg);
}

// One CSV record; fields may be double-quoted with "" escapes.
std::vector<std::string> split_csv(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      if (!out.back().empty()) corpus_fail(lineno, "stray quote");
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted) corpus_fail(lineno, "unterminated quote");
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + '"';
}

nlohmann::json poly_json(const PoincarePolynomial& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [b, d] : p.terms) a.push_back({{"t", b.i}, {"q", b.q}, {"dim", d}});
  return a;
}

EntryResult run_entry(const CorpusEntry& e, const BatchOptions& opts, const Config& cfg) {
  EntryResult r;
  r.name = e.name;
  r.braid = e.braid;
  r.expected = e.expected;
  try {
    ComputeResult res;
    run_with_deadline(cfg.time_box_seconds,
                      [&](std::stop_token st) { res = compute(e.braid, opts.characteristic, cfg, st); });
    r.computed = res.poly;
    r.euler_ok = res.euler_ok;
    r.seconds = res.seconds;
    if (!res.euler_ok) {
      r.status = EntryStatus::Error;
      r.error = "Euler characteristic check failed";
    } else if (opts.characteristic != 0 || (!e.expected && !e.expected_total_rank)) {
      r.status = EntryStatus::NoExpectation;
    } else {
      bool ok = true;
      if (e.expected) ok = ok && *e.expected == res.poly;
      if (e.expected_total_rank) ok = ok && *e.expected_total_rank == total_rank(res.poly);
      r.status = ok ? EntryStatus::Match : EntryStatus::Mismatch;
    }
  } catch (const Error& ex) {
    r.status = EntryStatus::Error;
    r.error = ex.code() == Errc::Timeout ? std::string("timeout") : std::string(ex.what());
  } catch (const std::exception& ex) {
    r.status = EntryStatus::Error;
    r.error = ex.what();
  }
  return r;
}

}  // namespace

std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Match: return "match";
    case EntryStatus::Mismatch: return "mismatch";
    case EntryStatus::NoExpectation: return "no-expectation";
    case EntryStatus::Error: return "error";
  }
  return "error";
}

std::size_t RunReport::count(EntryStatus s) const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.status == s;
  return n;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text, int strand_cap) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<CorpusEntry> out;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_csv(line, lineno);
    if (!header) {
      if (f.size() < 2 || f[0] != "name" || f[1] != "braid" || f.size() > 4 ||
          (f.size() > 2 && f[2] != "expected") || (f.size() > 3 && f[3] != "expected_total_rank")) {
        corpus_fail(lineno, "bad header");
      }
      header = true;
      continue;
    }
    if (f.size() < 2 || f.size() > 4) corpus_fail(lineno, "expected 2 to 4 fields");
    f.resize(4);
    CorpusEntry e{f[0], f[1], std::nullopt, std::nullopt};
    if (e.name.empty()) corpus_fail(lineno, "empty name");
    try {
      parse_braid(e.braid, strand_cap);
      if (!f[2].empty()) e.expected = parse_poly(f[2]);
    } catch (const Error& ex) {
      corpus_fail(lineno, ex.what());
    }
    if (!f[3].empty()) {
      try {
        std::size_t used = 0;
        e.expected_total_rank = std::stoull(f[3], &used);
        if (used != f[3].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        corpus_fail(lineno, "bad expected_total_rank");
      }
    }
    out.push_back(std::move(e));
  }
  if (!header) corpus_fail(lineno, "missing header");
  return out;
}

std::vector<CorpusEntry> read_corpus(const std::string& path, int strand_cap) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::CorpusError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str(), strand_cap);
}

RunReport run_batch(const std::vector<CorpusEntry>& corpus, const BatchOptions& opts, const Config& cfg) {
  std::vector<const CorpusEntry*> selected;
  for (const auto& e : corpus) {
    const BraidWord w = parse_braid(e.braid, cfg.strand_cap);
    if (opts.max_length && w.length() > *opts.max_length) continue;
    if (opts.max_index && w.index > *opts.max_index) continue;
    selected.push_back(&e);
  }
  RunReport report;
  report.characteristic = opts.characteristic;
  report.calibration = cfg.calibration;
  report.entries.resize(selected.size());
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(selected.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) report.entries[i] = run_entry(*selected[i], opts, cfg);
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
  }
  return report;
}

nlohmann::json report_to_json(const RunReport& r, bool timings) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json j{{"name", e.name}, {"braid", e.braid}, {"status", to_string(e.status)}};
    if (e.computed) {
      j["computed"] = format_poly(*e.computed);
      j["total_rank"] = total_rank(*e.computed);
      j["poincare"] = poly_json(*e.computed);
    }
    if (e.expected) j["expected"] = format_poly(*e.expected);
    if (!e.error.empty()) j["error"] = e.error;
    if (timings) j["seconds"] = e.seconds;
    entries.push_back(std::move(j));
  }
  return {{"characteristic", r.characteristic},
          {"calibration", calibration_to_json(r.calibration)},
          {"entries", std::move(entries)},
          {"summary",
           {{"total", r.entries.size()},
            {"match", r.count(EntryStatus::Match)},
            {"mismatch", r.count(EntryStatus::Mismatch)},
            {"no_expectation", r.count(EntryStatus::NoExpectation)},
            {"error", r.count(EntryStatus::Error)}}}};
}

std::string report_to_csv(const RunReport& r, bool timings) {
  std::string out = "name,braid,status,computed,expected,error";
  out += timings ? ",seconds\n" : "\n";
  for (const auto& e : r.entries) {
    out += csv_field(e.name) + ',' + csv_field(e.braid) + ',' + to_string(e.status) + ',' +
           (e.computed ? csv_field(format_poly(*e.computed)) : "") + ',' +
           (e.expected ? csv_field(format_poly(*e.expected)) : "") + ',' + csv_field(e.error);
    if (timings) out += ',' + std::to_string(e.seconds);
    out += '\n';
  }
  return out;
}

}  // namespace gl1hom::cli
