#include "gl1hom/cli/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "gl1hom/cli/compute.hpp"
#include "gl1hom/cli/poly.hpp"
#include "gl1hom/eval.hpp"
#include "gl1hom/oracle.hpp"

namespace gl1hom::cli {

int exit_code_for(Errc code) noexcept {
  if (is_internal_fault(code)) return kExitInternal;
  switch (code) {
    case Errc::EmptyWord:
    case Errc::InvalidCharacter:
    case Errc::ZeroGenerator:
    case Errc::IndexTooLarge:
    case Errc::LengthMismatch:
    case Errc::NotPrime:
    case Errc::PolyParseError:
    case Errc::CorpusError:
    case Errc::ConfigError:
    case Errc::CacheError:
    case Errc::OracleScale:
      return kExitInput;
    default:
      return kExitFailure;
  }
}

nlohmann::json compute_to_json(const ComputeResult& r, const Calibration& cal, bool timings) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [b, d] : r.poly.terms) terms.push_back({{"t", b.i}, {"q", b.q}, {"dim", d}});
  nlohmann::json j{{"braid", r.braid.letters.empty() ? std::string() : render_letters(r.braid)},
                   {"characteristic", r.characteristic},
                   {"poincare", std::move(terms)},
                   {"total_rank", total_rank(r.poly)},
                   {"calibration", calibration_to_json(cal)}};
  if (timings) j["seconds"] = r.seconds;
  return j;
}

int cmd_compute(const ComputeArgs& args, const Config& cfg, std::ostream& out, std::ostream& err) {
  try {
    ComputeResult r;
    run_with_deadline(cfg.time_box_seconds,
                      [&](std::stop_token st) { r = compute(args.braid, args.characteristic, cfg, st); });
    if (!r.euler_ok) {
      err << "error: Euler characteristic check failed\n";
      return kExitInternal;
    }
    if (args.json) {
      out << compute_to_json(r, cfg.calibration, args.timings).dump(2) << '\n';
    } else {
      out << format_poly(r.poly) << '\n';
      if (args.timings) err << std::fixed << std::setprecision(3) << r.seconds << " s, " << r.generators << " generators\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

int cmd_batch(const BatchArgs& args, const Config& cfg, std::ostream& out, std::ostream& err) {
  std::vector<CorpusEntry> corpus;
  try {
    corpus = read_corpus(args.corpus, cfg.strand_cap);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const RunReport report = run_batch(corpus, args.options, cfg);
  for (const auto& e : report.entries) {
    if (e.status == EntryStatus::Mismatch) {
      out << e.name << ": mismatch\n  computed " << format_poly(*e.computed) << "\n  expected "
          << format_poly(*e.expected) << '\n';
    } else if (e.status == EntryStatus::Error) {
      out << e.name << ": error: " << e.error << '\n';
    }
  }
  out << report.entries.size() << " entries: " << report.count(EntryStatus::Match) << " match, "
      << report.count(EntryStatus::Mismatch) << " mismatch, " << report.count(EntryStatus::NoExpectation)
      << " no expectation, " << report.count(EntryStatus::Error) << " error\n";
  if (args.report) {
    std::ofstream f(*args.report);
    if (!f) {
      err << "error: cannot write " << *args.report << '\n';
      return kExitInput;
    }
    if (args.report->ends_with(".csv")) {
      f << report_to_csv(report, args.timings);
    } else {
      f << report_to_json(report, args.timings).dump(2) << '\n';
    }
  }
  const bool bad = report.count(EntryStatus::Mismatch) + report.count(EntryStatus::Error) > 0;
  return bad ? kExitFailure : kExitOk;
}

int cmd_selftest(const SelftestOptions& opts, std::ostream& out) {
  bool ok = true;
  double total = 0;
  run_selftest(opts, [&](const SuiteResult& r) {
    ok = ok && r.passed;
    total += r.seconds;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, " << std::fixed
        << std::setprecision(2) << r.seconds << " s)\n";
    if (!r.passed) out << "     " << r.detail << '\n';
    out.flush();
  });
  out << (ok ? "selftest passed" : "selftest FAILED") << " in " << std::fixed << std::setprecision(2) << total
      << " s\n";
  return ok ? kExitOk : kExitFailure;
}

int cmd_oracle(const std::string& braid, const std::string& bits, const Config& cfg, std::ostream& out,
               std::ostream& err) {
  try {
    const BraidWord w = braid.empty() ? BraidWord::from_letters({}) : parse_braid(braid, cfg.strand_cap);
    BitVector v;
    for (char c : bits) {
      if (c != '0' && c != '1') throw Error(Errc::InvalidCharacter, "resolution bits must be 0 or 1");
      v.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    auto res = std::make_shared<const Resolution>(w, v);
    const auto basis = dur_basis(res);
    const int t = res->dumbbell_count();
    auto label = [&](const DurElement& u) {
      std::string s;
      for (auto b : u.bits) s += b ? '1' : '0';
      return s.empty() ? std::string("-") : s;
    };
    out << "t = " << t << ", " << basis.size() << " basis elements\n";
    std::size_t bad = 0;
    for (const auto& a : basis) {
      for (const auto& b : basis) {
        if (a.dot_degree() + b.dot_degree() != t) continue;
        const Decoration d = merge_decorations(to_decoration(a), to_decoration(b));
        const Polynomial p = evaluate_inf_oracle(d);
        const BigInt fast = evaluate1(d);
        const bool same = p.constant_term() == Rational(fast);
        bad += !same;
        out << label(a) << ' ' << label(b) << "  oracle " << p.to_string() << "  fast " << fast
            << (same ? "" : "  MISMATCH") << '\n';
      }
    }
    return bad == 0 ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace gl1hom::cli
