#include "gl1hom/transfer.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gl1hom/durbasis.hpp"
#include "gl1hom/error.hpp"

namespace gl1hom {

namespace {

constexpr int kMaxColoringStrands = 8;

std::size_t lehmer_rank(const std::uint8_t* perm, int k) {
  std::size_t rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
    rank = rank * static_cast<std::size_t>(k - i) + static_cast<std::size_t>(smaller);
  }
  return rank;
}

std::int64_t lcm_upto(int n) {
  std::int64_t l = 1;
  for (int i = 2; i <= n; ++i) l = std::lcm(l, static_cast<std::int64_t>(i));
  return l;
}

BigInt to_big(Int128 v) { return from_int128(v); }

}  // namespace

ColoringSpace::ColoringSpace(int k) : k_(k) {
  std::vector<std::uint8_t> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  count_ = 1;
  for (int i = 2; i <= k; ++i) count_ *= static_cast<std::size_t>(i);
  perms_.reserve(count_ * static_cast<std::size_t>(k));
  do {
    perms_.insert(perms_.end(), perm.begin(), perm.end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  swaps_.resize(static_cast<std::size_t>(std::max(k - 1, 0)) * count_);
  std::vector<std::uint8_t> tmp(static_cast<std::size_t>(k));
  for (int p = 1; p < k; ++p) {
    for (std::size_t c = 0; c < count_; ++c) {
      std::copy_n(perms_.begin() + static_cast<std::ptrdiff_t>(c * k), k, tmp.begin());
      std::swap(tmp[p - 1], tmp[p]);
      swaps_[(p - 1) * count_ + c] = static_cast<std::uint32_t>(lehmer_rank(tmp.data(), k));
    }
  }
}

const ColoringSpace& ColoringSpace::get(int k) {
  if (k < 1 || k > kMaxColoringStrands) throw std::out_of_range("coloring space supports 1..8 strands");
  static std::array<std::once_flag, kMaxColoringStrands + 1> flags;
  static std::array<std::unique_ptr<ColoringSpace>, kMaxColoringStrands + 1> spaces;
  std::call_once(flags[static_cast<std::size_t>(k)], [k] { spaces[static_cast<std::size_t>(k)].reset(new ColoringSpace(k)); });
  return *spaces[static_cast<std::size_t>(k)];
}

BigInt scale_denominator(int k) { return BigInt(static_cast<long>(lcm_upto(k - 1))); }

std::size_t mask_code(std::uint32_t mask) noexcept {
  std::size_t code = 0;
  std::size_t p = 1;
  while (mask) {
    if (mask & 1u) code += p;
    mask >>= 1;
    p *= 3;
  }
  return code;
}

// ---------------------------------------------------------------------------

template <class S>
struct HalfProducts {
  int lo = 0, hi = 0;
  std::vector<S> data;  // one N*N block per leaf; right halves are stored transposed
  std::vector<char> present;
  std::vector<std::vector<std::uint32_t>> by_sum;
};

struct TransferEngine::Impl {
  int k = 1;
  int t = 0;
  int h = 0;
  std::size_t n = 1;  // number of coloring states
  const ColoringSpace* cs = nullptr;
  std::vector<std::vector<std::int64_t>> weight;  // [j][state]: L / (x_left - x_right) at the exit
  std::vector<std::vector<std::int64_t>> xdur;    // [j][state]: x of the pigment on the upper-right edge
  std::vector<int> position;
  bool small = true;
  BigInt scale_t;

  std::unique_ptr<HalfProducts<Int128>> left128, right128;
  std::unique_ptr<HalfProducts<BigInt>> leftbig, rightbig;

  template <class S>
  void build_half(HalfProducts<S>& out, int lo, int hi, bool transpose, int total, std::optional<ExtraDot> extra) const {
    out.lo = lo;
    out.hi = hi;
    const std::size_t leaves = DotTable::pow3(hi - lo);
    const std::size_t nn = n * n;
    out.data.assign(leaves * nn, S(0));
    out.present.assign(leaves, 0);
    out.by_sum.assign(static_cast<std::size_t>(2 * (hi - lo) + 1), {});
    std::vector<std::vector<S>> stack(static_cast<std::size_t>(hi - lo + 1), std::vector<S>(nn, S(0)));
    for (std::size_t a = 0; a < n; ++a) stack[0][a * n + a] = S(1);

    // extra dot factor per state at the block it falls in, else 1
    std::vector<std::int64_t> extra_factor;
    int extra_block = -1;
    if (extra && t > 0) {
      extra_block = (extra->cgap - 1 + t) % t;
      extra_factor.resize(n);
      for (std::size_t c = 0; c < n; ++c) extra_factor[c] = cs->pigment(c, extra->strand - 1) + 1;
    }

    std::vector<std::int64_t> f(n);
    auto dfs = [&](auto&& self, int depth, std::size_t code, std::size_t pow, int sum) -> void {
      const int j = lo + depth;
      if (j == hi) {
        const std::size_t leaf = code;
        out.present[leaf] = 1;
        out.by_sum[static_cast<std::size_t>(sum)].push_back(static_cast<std::uint32_t>(leaf));
        S* dst = out.data.data() + leaf * nn;
        const auto& src = stack[static_cast<std::size_t>(depth)];
        if (!transpose) {
          std::copy(src.begin(), src.end(), dst);
        } else {
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) dst[b * n + a] = src[a * n + b];
        }
        return;
      }
      const auto& prev = stack[static_cast<std::size_t>(depth)];
      auto& next = stack[static_cast<std::size_t>(depth + 1)];
      const auto& w = weight[static_cast<std::size_t>(j)];
      const auto& xd = xdur[static_cast<std::size_t>(j)];
      const int p = position[static_cast<std::size_t>(j)];
      for (int e = 0; e <= 2 && sum + e <= total; ++e) {
        for (std::size_t c = 0; c < n; ++c) {
          std::int64_t v = w[c];
          for (int r = 0; r < e; ++r) v *= xd[c];
          if (j == extra_block) v *= extra_factor[c];
          f[c] = v;
        }
        for (std::size_t a = 0; a < n; ++a) {
          const S* row = prev.data() + a * n;
          S* orow = next.data() + a * n;
          for (std::size_t c = 0; c < n; ++c) {
            orow[c] = (row[c] + row[cs->swapped(c, p)]) * f[c];
          }
        }
        self(self, depth + 1, code + static_cast<std::size_t>(e) * pow, pow * 3, sum + e);
      }
    };
    dfs(dfs, 0, 0, 1, 0);
  }

  template <class S>
  DotTable combine(const HalfProducts<S>& left, const HalfProducts<S>& right, int total, bool extra) const {
    DotTable table(t, extra);
    const std::size_t nn = n * n;
    const std::size_t shift = DotTable::pow3(h);
    S scale(0);
    if constexpr (std::is_same_v<S, Int128>) {
      scale = 1;
      for (int i = 0; i < t; ++i) scale *= static_cast<Int128>(lcm_upto(k - 1));
    } else {
      scale = scale_t;
    }
    for (std::size_t sl = 0; sl < left.by_sum.size(); ++sl) {
      const int sr = total - static_cast<int>(sl);
      if (sr < 0 || static_cast<std::size_t>(sr) >= right.by_sum.size()) continue;
      for (std::uint32_t lc : left.by_sum[sl]) {
        const S* l = left.data.data() + lc * nn;
        for (std::uint32_t rc : right.by_sum[static_cast<std::size_t>(sr)]) {
          const S* r = right.data.data() + rc * nn;
          S acc(0);
          for (std::size_t i = 0; i < nn; ++i) acc += l[i] * r[i];
          if (acc == 0) continue;
          const std::size_t code = lc + shift * rc;
          if constexpr (std::is_same_v<S, Int128>) {
            if (acc % scale != 0) throw Error(Errc::NonIntegerEvaluation, "trace is not divisible by the scale");
            table.at(code) = to_big(static_cast<Int128>(acc / scale));
          } else {
            if (!mpz_divisible_p(acc.get_mpz_t(), scale.get_mpz_t())) {
              throw Error(Errc::NonIntegerEvaluation, "trace is not divisible by the scale");
            }
            BigInt q;
            mpz_divexact(q.get_mpz_t(), acc.get_mpz_t(), scale.get_mpz_t());
            table.at(code) = q;
          }
        }
      }
    }
    return table;
  }

  template <class S>
  DotTable compute(std::unique_ptr<HalfProducts<S>>& lcache, std::unique_ptr<HalfProducts<S>>& rcache,
                   std::optional<ExtraDot> extra) {
    const int total = t - (extra ? 1 : 0);
    if (!lcache) {
      lcache = std::make_unique<HalfProducts<S>>();
      build_half(*lcache, 0, h, false, t, std::nullopt);
    }
    if (!rcache) {
      rcache = std::make_unique<HalfProducts<S>>();
      build_half(*rcache, h, t, true, t, std::nullopt);
    }
    if (!extra) return combine(*lcache, *rcache, total, false);
    const int block = (extra->cgap - 1 + t) % t;
    HalfProducts<S> replaced;
    if (block < h) {
      build_half(replaced, 0, h, false, total, extra);
      return combine(replaced, *rcache, total, true);
    }
    build_half(replaced, h, t, true, total, extra);
    return combine(*lcache, replaced, total, true);
  }
};

TransferEngine::TransferEngine(Signature sig) : sig_(std::move(sig)), impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.k = sig_.k;
  m.t = sig_.dumbbell_count();
  if (m.t > kMaxDumbbells) throw std::out_of_range("too many dumbbells");
  m.h = m.t / 2;
  m.cs = &ColoringSpace::get(m.k);
  m.n = m.cs->size();
  m.position = sig_.positions;
  const std::int64_t L = lcm_upto(m.k - 1);
  m.scale_t = 1;
  for (int i = 0; i < m.t; ++i) m.scale_t *= L;
  for (int j = 0; j < m.t; ++j) {
    const int p = sig_.positions[static_cast<std::size_t>(j)];
    if (p < 1 || p >= m.k) throw std::out_of_range("dumbbell position outside the strands");
    std::vector<std::int64_t> w(m.n), xd(m.n);
    for (std::size_t c = 0; c < m.n; ++c) {
      const std::int64_t xl = m.cs->pigment(c, p - 1) + 1;
      const std::int64_t xr = m.cs->pigment(c, p) + 1;
      w[c] = L / (xl - xr);
      xd[c] = xr;
    }
    m.weight.push_back(std::move(w));
    m.xdur.push_back(std::move(xd));
  }
  // Row-sum bound of every product that occurs, times the n^2 trace terms.
  const double bits = std::log2(static_cast<double>(m.n)) * 2 + m.t * std::log2(2.0 * static_cast<double>(L)) +
                      (m.t + 1) * std::log2(static_cast<double>(m.k)) + 2;
  m.small = bits < 125;
}

TransferEngine::~TransferEngine() = default;

DotTable TransferEngine::table(std::optional<ExtraDot> extra) {
  Impl& m = *impl_;
  if (m.t == 0) {
    DotTable table(0, extra.has_value());
    if (!extra) table.at(0) = static_cast<unsigned long>(m.n);
    return table;
  }
  if (extra && (extra->cgap < 0 || extra->cgap >= m.t || extra->strand < 1 || extra->strand > m.k)) {
    throw std::out_of_range("extra dot outside the graph");
  }
  return m.small ? m.compute(m.left128, m.right128, extra) : m.compute(m.leftbig, m.rightbig, extra);
}

// ---------------------------------------------------------------------------

SignatureData::SignatureData(Signature sig, DotTable table)
    : sig_(std::move(sig)), table_(std::move(table)), solvers_(static_cast<std::size_t>(sig_.dumbbell_count()) + 1) {}

SparseIntMatrix SignatureData::gram_matrix() const {
  const auto& order = MaskOrder::get(t());
  const auto all = order.all();
  std::vector<SparseIntMatrix::Triplet> trip;
  for (std::uint32_t i = 0; i < all.size(); ++i) {
    for (std::uint32_t j = 0; j < all.size(); ++j) {
      if (std::popcount(all[i]) + std::popcount(all[j]) != t()) continue;
      const BigInt& v = entry(all[i], all[j]);
      if (v != 0) trip.push_back({i, j, v});
    }
  }
  return SparseIntMatrix::from_triplets(all.size(), all.size(), std::move(trip));
}

SparseIntMatrix SignatureData::block(int m) const {
  const auto& order = MaskOrder::get(t());
  const auto rows = order.of_weight(t() - m);
  const auto cols = order.of_weight(m);
  std::vector<SparseIntMatrix::Triplet> trip;
  for (std::uint32_t i = 0; i < rows.size(); ++i) {
    for (std::uint32_t j = 0; j < cols.size(); ++j) {
      const BigInt& v = entry(rows[i], cols[j]);
      if (v != 0) trip.push_back({i, j, v});
    }
  }
  return SparseIntMatrix::from_triplets(rows.size(), cols.size(), std::move(trip));
}

const IntegralSolver& SignatureData::solver(int m) const {
  if (m < 0 || m > t()) throw std::out_of_range("no Gram block of that degree");
  std::lock_guard lock(mutex_);
  auto& slot = solvers_[static_cast<std::size_t>(m)];
  if (!slot) slot = std::make_unique<IntegralSolver>(block(m));
  return *slot;
}

GramCache& GramCache::shared() {
  static GramCache cache;
  return cache;
}

std::shared_ptr<const SignatureData> GramCache::get(const Signature& sig, TransferEngine* engine) {
  Loader loader;
  {
    std::lock_guard lock(mutex_);
    auto it = map_.find(sig);
    if (it != map_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    loader = loader_;
  }
  std::optional<DotTable> table;
  bool loaded = false;
  if (loader) {
    if (auto g = loader(sig)) {
      table = table_from_gram(sig, *g);
      loaded = true;
    }
  }
  if (!table) {
    if (engine) {
      table = engine->table();
    } else {
      TransferEngine tmp(sig);
      table = tmp.table();
    }
  }
  auto data = std::make_shared<const SignatureData>(sig, std::move(*table));
  Saver saver;
  {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = map_.emplace(sig, data);
    if (!inserted) return it->second;
    saver = saver_;
  }
  if (saver && !loaded) saver(sig, data->gram_matrix());
  return data;
}

void GramCache::set_persistence(Loader loader, Saver saver) {
  std::lock_guard lock(mutex_);
  loader_ = std::move(loader);
  saver_ = std::move(saver);
}

void GramCache::clear() {
  std::lock_guard lock(mutex_);
  map_.clear();
  hits_ = misses_ = 0;
}

std::size_t GramCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::size_t GramCache::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

DotTable table_from_gram(const Signature& sig, const SparseIntMatrix& gram) {
  const int t = sig.dumbbell_count();
  const auto all = MaskOrder::get(t).all();
  if (gram.rows() != all.size() || gram.cols() != all.size()) {
    throw Error(Errc::CacheError, "cached Gram matrix has the wrong size");
  }
  DotTable table(t, false);
  std::vector<char> seen(table.size(), 0);
  for (std::uint32_t i = 0; i < all.size(); ++i) {
    for (std::uint32_t j = 0; j < all.size(); ++j) {
      BigInt v = gram.at(i, j);
      const bool gated = std::popcount(all[i]) + std::popcount(all[j]) == t;
      if (!gated) {
        if (v != 0) throw Error(Errc::CacheError, "cached Gram matrix violates the degree gate");
        continue;
      }
      const std::size_t code = mask_code(all[i]) + mask_code(all[j]);
      if (seen[code] && table.at(code) != v) throw Error(Errc::CacheError, "cached Gram matrix is inconsistent");
      seen[code] = 1;
      table.at(code) = std::move(v);
    }
  }
  return table;
}

}  // namespace gl1hom
