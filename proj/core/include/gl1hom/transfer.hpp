#ifndef GL1HOM_TRANSFER_HPP
#define GL1HOM_TRANSFER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gl1hom/arith.hpp"
#include "gl1hom/linalg.hpp"
#include "gl1hom/resolution.hpp"
#include "gl1hom/sparse_matrix.hpp"

namespace gl1hom {

/// The k! coloring states of one horizontal level: state c puts pigment
/// perm(c)[s] at strand s (both 0-based).
class ColoringSpace {
 public:
  static const ColoringSpace& get(int k);

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return count_; }
  int pigment(std::size_t state, int strand0) const noexcept { return perms_[state * k_ + strand0]; }
  /// State with the pigments at strands p-1 and p exchanged (p is 1-based).
  std::uint32_t swapped(std::size_t state, int p) const noexcept { return swaps_[(p - 1) * count_ + state]; }

 private:
  explicit ColoringSpace(int k);
  int k_;
  std::size_t count_;
  std::vector<std::uint8_t> perms_;
  std::vector<std::uint32_t> swaps_;
};

/// Integer form of the evaluation point x_i = i: every split weight
/// 1/(x_l - x_r) is scaled by L = lcm(1..k-1), so a graph with t dumbbells is
/// evaluated as an integer over L^t.
BigInt scale_denominator(int k);

/// A dot added to a signature's d.u.r. dots, in compressed coordinates.
struct ExtraDot {
  int cgap = 0;
  int strand = 1;  // 1-based

  bool operator==(const ExtraDot&) const = default;
};

/// Evaluations of d.u.r.-position dot vectors e in {0,1,2}^t, indexed by
/// sum_j e_j 3^j. Only vectors whose degree passes the gate are stored.
class DotTable {
 public:
  DotTable() = default;
  DotTable(int t, bool extra) : t_(t), extra_(extra), values_(pow3(t)) {}

  static std::size_t pow3(int t) noexcept {
    std::size_t r = 1;
    while (t-- > 0) r *= 3;
    return r;
  }

  int t() const noexcept { return t_; }
  bool has_extra() const noexcept { return extra_; }
  std::size_t size() const noexcept { return values_.size(); }
  const BigInt& at(std::size_t code) const { return values_.at(code); }
  BigInt& at(std::size_t code) { return values_.at(code); }

 private:
  int t_ = 0;
  bool extra_ = false;
  std::vector<BigInt> values_;
};

/// Code of a 0/1 mask as a dot vector.
std::size_t mask_code(std::uint32_t mask) noexcept;

/// Computes DotTables for one signature by splitting the closed stack of
/// dumbbells into two halves and pairing all half products through the trace.
/// Half products without the extra dot are kept for reuse.
class TransferEngine {
 public:
  explicit TransferEngine(Signature sig);
  ~TransferEngine();
  TransferEngine(const TransferEngine&) = delete;
  TransferEngine& operator=(const TransferEngine&) = delete;

  const Signature& signature() const noexcept { return sig_; }
  DotTable table(std::optional<ExtraDot> extra = std::nullopt);

 private:
  struct Impl;
  Signature sig_;
  std::unique_ptr<Impl> impl_;
};

/// Cached per-signature data: the Gram values and block solvers.
class SignatureData {
 public:
  SignatureData(Signature sig, DotTable table);

  const Signature& signature() const noexcept { return sig_; }
  int t() const noexcept { return sig_.dumbbell_count(); }
  const DotTable& table() const noexcept { return table_; }
  /// Gram entry for two masks.
  const BigInt& entry(std::uint32_t a, std::uint32_t b) const { return table_.at(mask_code(a) + mask_code(b)); }
  /// Full Gram matrix in d.u.r. order.
  SparseIntMatrix gram_matrix() const;
  /// Block pairing weight-(t-m) rows with weight-m columns, both in mask order.
  SparseIntMatrix block(int m) const;
  /// Solver for block(m), built on first use.
  const IntegralSolver& solver(int m) const;

 private:
  Signature sig_;
  DotTable table_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<IntegralSolver>> solvers_;
};

/// Process-wide memo of SignatureData with optional persistence hooks.
class GramCache {
 public:
  using Loader = std::function<std::optional<SparseIntMatrix>(const Signature&)>;
  using Saver = std::function<void(const Signature&, const SparseIntMatrix&)>;

  static GramCache& shared();

  /// Returns cached data; on a miss computes it with engine (if given) or a
  /// temporary engine. The first inserted value wins.
  std::shared_ptr<const SignatureData> get(const Signature& sig, TransferEngine* engine = nullptr);
  void set_persistence(Loader loader, Saver saver);
  void clear();
  std::size_t hits() const;
  std::size_t misses() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<Signature, std::shared_ptr<const SignatureData>, SignatureHash> map_;
  Loader loader_;
  Saver saver_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// Rebuilds the table from a full Gram matrix (every gated code is a sum of
/// two masks). Throws Error{CacheError} on shape mismatch.
DotTable table_from_gram(const Signature& sig, const SparseIntMatrix& gram);

}  // namespace gl1hom

#endif  // GL1HOM_TRANSFER_HPP
