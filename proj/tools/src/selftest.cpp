#include "gl1hom/cli/selftest.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "gl1hom/cli/compute.hpp"
#include "gl1hom/cli/poly.hpp"
#include "gl1hom/complex.hpp"
#include "gl1hom/error.hpp"
#include "gl1hom/eval.hpp"
#include "gl1hom/homology.hpp"
#include "gl1hom/linalg.hpp"
#include "gl1hom/oracle.hpp"

namespace gl1hom::cli {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

BraidWord random_braid(Rng& rng, int max_index, int max_length, int min_length = 1) {
  const int k = uniform(rng, 2, max_index);
  const int n = uniform(rng, min_length, max_length);
  std::vector<int> letters;
  for (int i = 0; i < n; ++i) letters.push_back(uniform(rng, 1, k - 1) * (uniform(rng, 0, 1) ? 1 : -1));
  return BraidWord::from_letters(letters, k);
}

BitVector random_bits(Rng& rng, std::size_t n) {
  BitVector v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(uniform(rng, 0, 1));
  return v;
}

std::string describe(const BraidWord& w) { return w.letters.empty() ? std::string("<empty>") : render_letters(w); }

std::string bits_string(const BitVector& v) {
  std::string s;
  for (auto b : v) s += b ? '1' : '0';
  return s;
}

BigInt binomial(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// A suite body returns the number of cases; the first failure is recorded
// through fail() and stops the suite.
struct Suite {
  SuiteResult result;
  void fail(const std::string& why) {
    if (result.detail.empty()) result.detail = why;
    result.passed = false;
  }
};

template <typename Body>
SuiteResult run_suite(const std::string& name, Body body) {
  Suite s;
  s.result.name = name;
  s.result.passed = true;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(s);
  } catch (const std::exception& e) {
    s.fail(e.what());
  }
  s.result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s.result;
}

// Random decoration of total degree near t, on a resolution with few slices.
Decoration random_decoration(Rng& rng) {
  const BraidWord w = random_braid(rng, 3, 6);
  auto res = std::make_shared<const Resolution>(w, random_bits(rng, w.length()));
  Decoration d(res);
  const int t = res->dumbbell_count();
  static constexpr int kOffsets[] = {0, 0, 0, 1, 2, -1};
  const int total = std::max(0, t + kOffsets[uniform(rng, 0, 5)]);
  for (int i = 0; i < total; ++i) d.add_dot(uniform(rng, 0, res->gap_count() - 1), uniform(rng, 1, res->index()));
  return d;
}

std::string decoration_string(const Decoration& d) {
  std::ostringstream os;
  os << describe(d.graph().braid()) << " v=" << bits_string(d.graph().v()) << " dots=";
  for (const auto& [p, e] : d.dots()) os << '(' << p.gap << ',' << p.strand << ")^" << e << ' ';
  return os.str();
}

// Enumerates every position sequence of length <= max_t over 1..k-1.
std::vector<Signature> all_signatures(int k, int max_t) {
  std::vector<Signature> out{{k, {}}};
  for (std::size_t start = 0; start < out.size(); ++start) {
    if (static_cast<int>(out[start].positions.size()) == max_t) continue;
    for (int p = 1; p < k; ++p) {
      Signature s = out[start];
      s.positions.push_back(p);
      out.push_back(std::move(s));
    }
  }
  return out;
}

// Braid whose all-ones resolution has the given dumbbell positions.
BraidWord braid_for(const Signature& sig) {
  return BraidWord::from_letters(sig.positions.empty() ? std::vector<int>{} : sig.positions, sig.k);
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts,
                                      const std::function<void(const SuiteResult&)>& progress) {
  std::vector<SuiteResult> results;
  auto record = [&](SuiteResult r) {
    if (progress) progress(r);
    results.push_back(std::move(r));
  };
  Conventions conv;
  if (opts.flip_zip_sign) conv.zip_sign = -1;
  const Calibration cal = opts.zero_calibration ? Calibration{} : opts.calibration;

  Config cfg;
  cfg.threads = opts.threads;
  cfg.calibration = cal;
  std::vector<std::pair<std::string, bool>> euler;  // (braid, check passed) for every computed knot

  record(run_suite("d^2 = 0 on 50 random braids", [&](Suite& s) {
    Rng rng(opts.seed);
    for (int i = 0; i < 50 && s.result.passed; ++i) {
      const BraidWord w = random_braid(rng, 4, 8);
      BuildOptions bo;
      bo.threads = opts.threads;
      bo.conventions = conv;
      const GradedComplex c = build_complex(w, cal, bo);
      ++s.result.cases;
      if (!check_d_squared(c)) s.fail("d^2 != 0 for " + describe(w));
      euler.emplace_back(describe(w), euler_characteristic_matches(c, poincare(c)));
    }
  }));

  record(run_suite("oracle agrees with evaluate1 on 200 decorations", [&](Suite& s) {
    Rng rng(opts.seed + 1);
    for (int i = 0; i < 200 && s.result.passed; ++i) {
      const Decoration d = random_decoration(rng);
      ++s.result.cases;
      const Polynomial p = evaluate_inf_oracle(d);
      const int deg = d.degree() - d.graph().dumbbell_count();
      if (p.constant_term() != Rational(evaluate1(d))) s.fail("constant term differs: " + decoration_string(d));
      if (!p.is_symmetric()) s.fail("not symmetric: " + decoration_string(d));
      if (!p.is_zero() && !p.is_homogeneous(deg)) s.fail("not homogeneous: " + decoration_string(d));
    }
  }));

  record(run_suite("generic point independence on 200 decorations", [&](Suite& s) {
    Rng rng(opts.seed + 1);
    for (int i = 0; i < 200 && s.result.passed; ++i) {
      const Decoration d = random_decoration(rng);
      const int k = d.graph().index();
      ++s.result.cases;
      const BigInt a = evaluate1_at(d, GenericPoint::standard(k));
      const BigInt b = evaluate1_at(d, GenericPoint::primes(k));
      if (a != b || a != evaluate1(d)) s.fail("value depends on the point: " + decoration_string(d));
    }
  }));

  record(run_suite("Gram matrices: symmetric, degree-gated, nonsingular", [&](Suite& s) {
    {
      auto theta = std::make_shared<const Resolution>(BraidWord::from_letters({1}), BitVector{1});
      const SparseIntMatrix g = gram(*theta).matrix;
      const SparseIntMatrix want = SparseIntMatrix::from_dense({{0, -1}, {-1, 0}});
      ++s.result.cases;
      if (!(g == want)) s.fail("Theta_1 Gram matrix is not [[0,-1],[-1,0]]");
    }
    for (int k = 2; k <= 4 && s.result.passed; ++k) {
      for (const Signature& sig : all_signatures(k, 6)) {
        const BraidWord w = braid_for(sig);
        auto res = std::make_shared<const Resolution>(w, BitVector(w.length(), 1));
        const auto basis = dur_basis(res);
        const SparseIntMatrix g = gram(*res).matrix;
        ++s.result.cases;
        const std::string tag = "k=" + std::to_string(k) + " positions=" + render_ints(w);
        if (!(g.transpose() == g)) s.fail("not symmetric: " + tag);
        for (std::size_t r = 0; r < g.rows(); ++r)
          for (const auto& e : g.row(r))
            if (basis[r].dot_degree() + basis[e.col].dot_degree() != sig.dumbbell_count())
              s.fail("entry outside the degree gate: " + tag);
        if (rank_rational(g) != g.rows()) s.fail("singular: " + tag);
        if (sig.dumbbell_count() <= 3 && !(gram_direct(res) == g)) s.fail("cached Gram differs from direct: " + tag);
        if (!s.result.passed) break;
      }
    }
  }));

  record(run_suite("zip/unzip transpose property on 50 edges", [&](Suite& s) {
    Rng rng(opts.seed + 2);
    for (int i = 0; i < 50 && s.result.passed; ++i) {
      const BraidWord w = random_braid(rng, 4, 6);
      const BitVector v = random_bits(rng, w.length());
      const int crossing = uniform(rng, 0, static_cast<int>(w.length()) - 1);
      ++s.result.cases;
      if (!check_zip_unzip_adjoint(w.letters, v, crossing, conv))
        s.fail("unzip is not -zip^T at crossing " + std::to_string(crossing) + " of " + describe(w) +
               " v=" + bits_string(v));
    }
  }));

  record(run_suite("d.u.r. degree census matches (q+q^-1)^t", [&](Suite& s) {
    Rng rng(opts.seed + 3);
    for (int i = 0; i < 100 && s.result.passed; ++i) {
      const BraidWord w = random_braid(rng, 4, 10);
      auto res = std::make_shared<const Resolution>(w, random_bits(rng, w.length()));
      const int t = res->dumbbell_count();
      std::map<int, BigInt> census;
      for (const auto& u : dur_basis(res)) census[u.graph_degree()] += 1;
      ++s.result.cases;
      for (int m = 0; m <= t; ++m)
        if (census[2 * m - t] != binomial(t, m)) s.fail("census differs for " + describe(w));
    }
  }));

  record(run_suite("unknot representatives give 1", [&](Suite& s) {
    const PoincarePolynomial one{{{{0, 0}, 1}}};
    for (const char* b : {"A", "a", "AB", "Ab", "aB", "ab"}) {
      const ComputeResult r = compute(parse_braid(b), 0, cfg);
      ++s.result.cases;
      euler.emplace_back(describe(r.braid), r.euler_ok);
      if (!(r.poly == one)) s.fail(std::string(b) + " gives " + format_poly(r.poly));
    }
    const ComputeResult r = compute(BraidWord::from_letters({}), 0, cfg);
    ++s.result.cases;
    euler.emplace_back(describe(r.braid), r.euler_ok);
    if (!(r.poly == one)) s.fail("empty braid gives " + format_poly(r.poly));
  }));

  record(run_suite("reference rows for the trefoil and figure-eight", [&](Suite& s) {
    const std::pair<const char*, const char*> rows[] = {
        {"AAA", "1 + t^2q^-4 + tq^-4"},
        {"AbAb", "q^2 + q^2t^-1 + 1 + tq^-2 + q^-2"},
    };
    for (const auto& [b, want] : rows) {
      const ComputeResult r = compute(parse_braid(b), 0, cfg);
      ++s.result.cases;
      euler.emplace_back(describe(r.braid), r.euler_ok);
      if (!(r.poly == parse_poly(want))) s.fail(std::string(b) + " gives " + format_poly(r.poly));
    }
  }));

  record(run_suite("Euler characteristic per q-block", [&](Suite& s) {
    for (const auto& [w, ok] : euler) {
      ++s.result.cases;
      if (!ok) s.fail("mismatch for " + w);
    }
  }));

  return results;
}

}  // namespace gl1hom::cli
