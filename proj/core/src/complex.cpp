#include "gl1hom/complex.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>

#include "gl1hom/error.hpp"
#include "gl1hom/eval.hpp"
#include "gl1hom/linalg.hpp"
#include "gl1hom/transfer.hpp"

namespace gl1hom {

namespace {

std::array<int, 4> shift_basis(const BraidWord& b) { return {b.n_plus, b.n_minus, b.index - 1, 1}; }

int dot4(const std::array<int, 4>& a, const std::array<int, 4>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

std::uint32_t insert_zero(std::uint32_t u, int j) {
  const std::uint32_t low = (std::uint32_t{1} << j) - 1;
  return (u & low) | ((u & ~low) << 1);
}

std::uint32_t remove_bit(std::uint32_t u, int j) {
  const std::uint32_t low = (std::uint32_t{1} << j) - 1;
  return (u & low) | ((u >> (j + 1)) << j);
}

Decoration carry_dots(const DurElement& u, const ResolutionPtr& target) {
  Decoration out(target);
  const Decoration src = to_decoration(u);
  for (const auto& [pos, e] : src.dots()) out.add_dot(pos.gap, pos.strand, e);
  return out;
}

}  // namespace

Calibration Calibration::fitted() {
  Calibration c;
  c.orientation = -1;
  c.alpha = {-2, 1, 0, 0};
  c.epsilon = {1, 0, 0, 0};
  return c;
}

int Calibration::q_shift(const BraidWord& b) const noexcept { return dot4(alpha, shift_basis(b)); }
int Calibration::hom_shift(const BraidWord& b) const noexcept { return dot4(epsilon, shift_basis(b)); }

HypercubeEdge make_edge(const BraidWord& braid, const BitVector& source, int crossing) {
  if (source.size() != braid.length()) throw Error(Errc::LengthMismatch, "edge source has the wrong length");
  if (crossing < 0 || crossing >= static_cast<int>(source.size()) || source[static_cast<std::size_t>(crossing)] != 0) {
    throw Error(Errc::WrongEdge, "crossing " + std::to_string(crossing) + " cannot be raised");
  }
  HypercubeEdge e;
  e.source = source;
  e.target = source;
  e.target[static_cast<std::size_t>(crossing)] = 1;
  e.crossing = crossing;
  e.kind = braid.letters[static_cast<std::size_t>(crossing)] > 0 ? EdgeKind::Zip : EdgeKind::Unzip;
  int below = 0;
  for (int j = 0; j < crossing; ++j) below += source[static_cast<std::size_t>(j)];
  e.sign = (below % 2 == 0) ? 1 : -1;
  return e;
}

EdgeImage unzip_image(const DurElement& u, int crossing) {
  const Resolution& src = *u.resolution;
  const auto ci = static_cast<std::size_t>(crossing);
  if (crossing < 0 || ci >= src.braid().length() || src.braid().letters[ci] >= 0 || src.v()[ci] != 0) {
    throw Error(Errc::WrongEdge, "unzip needs an unraised negative crossing");
  }
  BitVector v = src.v();
  v[ci] = 1;
  auto target = std::make_shared<const Resolution>(src.braid(), v);
  EdgeImage img{target, {}};
  img.terms.push_back({1, carry_dots(u, target)});
  return img;
}

EdgeImage zip_image(const DurElement& u, int crossing, const Conventions& conv) {
  const Resolution& src = *u.resolution;
  const auto ci = static_cast<std::size_t>(crossing);
  if (crossing < 0 || ci >= src.braid().length() || src.braid().letters[ci] <= 0 || src.v()[ci] != 0) {
    throw Error(Errc::WrongEdge, "zip needs an unraised positive crossing");
  }
  BitVector v = src.v();
  v[ci] = 1;
  auto target = std::make_shared<const Resolution>(src.braid(), v);
  const int p = src.braid().letters[ci];
  Decoration upper_right = carry_dots(u, target);
  upper_right.add_dot(target->gap_above(crossing), p + 1, 1);
  Decoration lower_left = carry_dots(u, target);
  lower_left.add_dot(target->gap_below(crossing), p, 1);
  EdgeImage img{target, {}};
  img.terms.push_back({conv.zip_sign, std::move(upper_right)});
  img.terms.push_back({-conv.zip_sign, std::move(lower_left)});
  return img;
}

std::vector<BigInt> coordinates(const ResolutionPtr& target, const std::vector<SignedDecoration>& image) {
  const auto basis = dur_basis(target);
  std::vector<BigInt> y(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Decoration bj = to_decoration(basis[j]);
    for (const auto& term : image) y[j] += term.sign * pairing(term.dec, bj);
  }
  const GramMatrix g = gram(*target);
  return solve_integral(g.matrix, y);
}

std::size_t GradedComplex::generator_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [b, d] : dims) n += d;
  return n;
}

SparseIntMatrix GradedComplex::d(Bidegree b) const {
  auto it = differential.find(b);
  if (it != differential.end()) return it->second;
  auto dim = [this](Bidegree x) {
    auto f = dims.find(x);
    return f == dims.end() ? std::size_t{0} : f->second;
  };
  return SparseIntMatrix(dim({b.i + 1, b.q}), dim(b));
}

// ---------------------------------------------------------------------------

namespace {

struct CubeIndex {
  int n = 0;
  std::vector<int> letters;
  std::uint32_t positive = 0;  // crossings with a positive letter
  std::uint32_t negative = 0;
  int orientation = 1;
  int hom_shift = 0;
  int q_shift = 0;

  std::uint32_t dumbbells(std::uint32_t v) const {
    const std::uint32_t full = n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);
    return ((v & positive) | (~v & negative)) & full;
  }
  int t(std::uint32_t v) const { return std::popcount(dumbbells(v)); }
  int hom(std::uint32_t v) const { return orientation * std::popcount(v) + hom_shift; }
  int q(std::uint32_t v, int m) const { return orientation * (2 * m - t(v) - std::popcount(v)) + q_shift; }
  Signature signature(std::uint32_t v, int k) const {
    Signature sig{k, {}};
    const std::uint32_t d = dumbbells(v);
    for (int s = 0; s < n; ++s) {
      if (d & (std::uint32_t{1} << s)) sig.positions.push_back(std::abs(letters[static_cast<std::size_t>(s)]));
    }
    return sig;
  }
};

using TripletMap = std::map<Bidegree, std::vector<SparseIntMatrix::Triplet>>;

struct GroupWorker {
  const CubeIndex& cube;
  const std::vector<std::vector<std::uint32_t>>& offset;
  const Conventions& conv;
  TripletMap& out;

  struct SolutionKey {
    int cgap;
    int strand;
    std::uint32_t mask;
    auto operator<=>(const SolutionKey&) const = default;
  };

  void run(const Signature& sig, const std::vector<std::uint32_t>& targets, const std::stop_token& stop) {
    TransferEngine engine(sig);
    auto data = GramCache::shared().get(sig, &engine);
    const int tT = sig.dumbbell_count();
    std::map<std::pair<int, int>, DotTable> extra_tables;
    std::map<SolutionKey, std::vector<std::pair<std::uint32_t, BigInt>>> solutions;

    // Coordinates of (d.u.r. dots of w) + extra dot in the weight-m block.
    auto solve = [&](int cgap, int strand, std::uint32_t w, int m) -> const std::vector<std::pair<std::uint32_t, BigInt>>& {
      const SolutionKey key{cgap, strand, w};
      auto found = solutions.find(key);
      if (found != solutions.end()) return found->second;
      auto tit = extra_tables.find({cgap, strand});
      if (tit == extra_tables.end()) tit = extra_tables.emplace(std::make_pair(cgap, strand), engine.table(ExtraDot{cgap, strand})).first;
      const DotTable& table = tit->second;
      const auto rows = MaskOrder::get(tT).of_weight(tT - m);
      std::vector<BigInt> y(rows.size());
      const std::size_t wc = mask_code(w);
      bool any = false;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        y[r] = table.at(wc + mask_code(rows[r]));
        any = any || y[r] != 0;
      }
      std::vector<std::pair<std::uint32_t, BigInt>> sol;
      if (any) {
        auto x = data->solver(m).solve(y);
        for (std::uint32_t a = 0; a < x.size(); ++a)
          if (x[a] != 0) sol.emplace_back(a, std::move(x[a]));
      }
      return solutions.emplace(key, std::move(sol)).first->second;
    };

    for (std::uint32_t vt : targets) {
      if (stop.stop_requested()) throw Error(Errc::Timeout, "computation cancelled");
      const std::uint32_t dT = cube.dumbbells(vt);
      const auto& orderT = MaskOrder::get(tT);
      for (int i = 0; i < cube.n; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        if (!(vt & bit)) continue;
        const std::uint32_t vs = vt ^ bit;
        const int sign = (std::popcount(vs & (bit - 1)) % 2 == 0) ? 1 : -1;
        const int letter = cube.letters[static_cast<std::size_t>(i)];
        const int p = std::abs(letter);
        const int j = std::popcount(dT & (bit - 1));
        const int tS = cube.t(vs);
        const auto& orderS = MaskOrder::get(tS);
        const int hom_s = cube.hom(vs);

        auto emit = [&](std::uint32_t u, int mu, int m_target, std::uint32_t idx_in_weight, const BigInt& value) {
          const Bidegree src{hom_s, cube.q(vs, mu)};
          const int qt = cube.q(vt, m_target);
          if (qt != src.q || cube.hom(vt) != src.i + cube.orientation) {
            throw Error(Errc::GradingViolation, "differential entry changes the q-degree");
          }
          const std::uint32_t row = offset[vt][static_cast<std::size_t>(m_target)] + idx_in_weight;
          const std::uint32_t col = offset[vs][static_cast<std::size_t>(mu)] + orderS.rank_in_weight(u);
          if (cube.orientation > 0) {
            out[src].push_back({row, col, value});
          } else {
            out[{src.i - 1, qt}].push_back({col, row, value});  // transposed
          }
        };

        for (std::uint32_t u : orderS.all()) {
          const int mu = std::popcount(u);
          if (letter > 0) {
            // zip: the new dumbbell has index j in the target
            const std::uint32_t u0 = insert_zero(u, j);
            const std::uint32_t up = u0 | (std::uint32_t{1} << j);
            emit(u, mu, mu + 1, orderT.rank_in_weight(up), BigInt(sign * conv.zip_sign));
            for (const auto& [a, x] : solve(j, p, u0, mu + 1)) emit(u, mu, mu + 1, a, BigInt(-sign * conv.zip_sign * x));
          } else {
            // unzip: the removed dumbbell had index j in the source
            const std::uint32_t r = remove_bit(u, j);
            if (!(u & (std::uint32_t{1} << j))) {
              emit(u, mu, mu, orderT.rank_in_weight(r), BigInt(sign));
            } else if (tT > 0 && mu <= tT) {
              for (const auto& [a, x] : solve(j % tT, p + 1, r, mu)) emit(u, mu, mu, a, BigInt(sign * x));
            }
          }
        }
      }
    }
  }
};

}  // namespace

GradedComplex build_complex(const BraidWord& braid, const Calibration& cal, const BuildOptions& opts) {
  GradedComplex c;
  c.braid = braid;
  c.calibration = cal;
  CubeIndex cube;
  cube.n = static_cast<int>(braid.length());
  if (cube.n > 24) throw std::out_of_range("braid too long for the hypercube");
  cube.letters = braid.letters;
  for (int s = 0; s < cube.n; ++s) {
    (braid.letters[static_cast<std::size_t>(s)] > 0 ? cube.positive : cube.negative) |= std::uint32_t{1} << s;
  }
  cube.orientation = cal.orientation < 0 ? -1 : 1;
  cube.hom_shift = cal.hom_shift(braid);
  cube.q_shift = cal.q_shift(braid);

  const std::uint32_t count = std::uint32_t{1} << cube.n;
  std::vector<std::vector<std::uint32_t>> offset(count);
  for (std::uint32_t key = 0; key < count; ++key) {
    // key read most-significant-first is the bit tuple (v_0, v_1, ...)
    std::uint32_t v = 0;
    for (int s = 0; s < cube.n; ++s)
      if (key & (std::uint32_t{1} << (cube.n - 1 - s))) v |= std::uint32_t{1} << s;
    const int t = cube.t(v);
    const auto& order = MaskOrder::get(t);
    offset[v].resize(static_cast<std::size_t>(t) + 1);
    for (int m = 0; m <= t; ++m) {
      auto& dim = c.dims[{cube.hom(v), cube.q(v, m)}];
      offset[v][static_cast<std::size_t>(m)] = static_cast<std::uint32_t>(dim);
      dim += order.of_weight(m).size();
    }
  }

  std::map<Signature, std::vector<std::uint32_t>> groups;
  for (std::uint32_t v = 1; v < count; ++v) groups[cube.signature(v, braid.index)].push_back(v);
  std::vector<const std::pair<const Signature, std::vector<std::uint32_t>>*> work;
  for (const auto& g : groups) work.push_back(&g);

  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(work.size())));
  std::vector<TripletMap> partial(static_cast<std::size_t>(threads));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&](int w) {
    GroupWorker gw{cube, offset, opts.conventions, partial[static_cast<std::size_t>(w)]};
    try {
      for (std::size_t idx = next++; idx < work.size(); idx = next++) {
        gw.run(work[idx]->first, work[idx]->second, opts.stop);
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = work.size();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }
  if (failure) std::rethrow_exception(failure);

  TripletMap merged = std::move(partial[0]);
  for (std::size_t w = 1; w < partial.size(); ++w) {
    for (auto& [b, trip] : partial[w]) {
      auto& dst = merged[b];
      dst.insert(dst.end(), std::make_move_iterator(trip.begin()), std::make_move_iterator(trip.end()));
    }
  }
  for (auto& [b, trip] : merged) {
    const std::size_t rows = c.dims.at({b.i + 1, b.q});
    const std::size_t cols = c.dims.at(b);
    SparseIntMatrix m = SparseIntMatrix::from_triplets(rows, cols, std::move(trip));
    if (!m.is_zero()) c.differential.emplace(b, std::move(m));
  }
  if (opts.verify_d_squared && !check_d_squared(c)) throw Error(Errc::DSquareNonzero, "d o d is not zero");
  return c;
}

bool check_d_squared(const GradedComplex& c) {
  for (const auto& [b, d0] : c.differential) {
    auto it = c.differential.find({b.i + 1, b.q});
    if (it == c.differential.end()) continue;
    if (!(it->second * d0).is_zero()) return false;
  }
  return true;
}

bool check_zip_unzip_adjoint(const std::vector<int>& letters, const BitVector& v, int crossing, const Conventions& conv) {
  const auto ci = static_cast<std::size_t>(crossing);
  std::vector<int> pos = letters, neg = letters;
  pos[ci] = std::abs(letters[ci]);
  neg[ci] = -std::abs(letters[ci]);
  const BraidWord bp = BraidWord::from_letters(pos);
  const BraidWord bn = BraidWord::from_letters(neg, bp.index);
  BitVector v0 = v;
  v0[ci] = 0;
  auto flat = std::make_shared<const Resolution>(bp, v0);     // zip source
  auto dumbbell = std::make_shared<const Resolution>(bn, v0);  // unzip source

  const auto flat_basis = dur_basis(flat);
  const auto db_basis = dur_basis(dumbbell);
  for (const auto& a : flat_basis) {
    const EdgeImage zipped = zip_image(a, crossing, conv);
    for (const auto& b : db_basis) {
      BigInt pz = 0;
      const Decoration bd = carry_dots(b, zipped.target);
      for (const auto& term : zipped.terms) pz += term.sign * evaluate1(merge_decorations(term.dec, bd));
      const EdgeImage unzipped = unzip_image(b, crossing);
      const Decoration ad = carry_dots(a, unzipped.target);
      BigInt pu = 0;
      for (const auto& term : unzipped.terms) pu += term.sign * evaluate1(merge_decorations(term.dec, ad));
      if (pu != -pz) return false;
    }
  }
  return true;
}

}  // namespace gl1hom
