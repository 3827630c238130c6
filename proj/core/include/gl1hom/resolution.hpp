#ifndef GL1HOM_RESOLUTION_HPP
#define GL1HOM_RESOLUTION_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "gl1hom/braid.hpp"

namespace gl1hom {

using BitVector = std::vector<std::uint8_t>;

struct Slice {
  bool dumbbell = false;
  int position = 0;  // |letter|: the slice acts on strands position, position+1

  bool operator==(const Slice&) const = default;
};

/// Cache key for everything that only depends on the graph: the strand count
/// and the positions of the dumbbells from bottom to top.
struct Signature {
  int k = 1;
  std::vector<int> positions;

  auto operator<=>(const Signature&) const = default;
  int dumbbell_count() const noexcept { return static_cast<int>(positions.size()); }
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const noexcept;
};

/// A point on a 1-labeled edge. Gaps are the horizontal levels between
/// slices: gap g lies below slice g, and gap 0 is also the level above the
/// last slice (through the closure). Strands are 1-based.
struct GapStrand {
  int gap = 0;
  int strand = 1;

  auto operator<=>(const GapStrand&) const = default;
};

struct DotPlacement {
  int gap = 0;
  int strand = 1;
  int exponent = 1;

  bool operator==(const DotPlacement&) const = default;
};

/// Slice s of the closure is a dumbbell iff (letter > 0 and v = 1) or
/// (letter < 0 and v = 0).
bool is_dumbbell(int letter, std::uint8_t bit) noexcept;

class Resolution {
 public:
  /// Throws Error{LengthMismatch} if v and the braid differ in length.
  Resolution(BraidWord braid, BitVector v);

  const BraidWord& braid() const noexcept { return braid_; }
  const BitVector& v() const noexcept { return v_; }
  const std::vector<Slice>& slices() const noexcept { return slices_; }
  int index() const noexcept { return braid_.index; }
  int slice_count() const noexcept { return static_cast<int>(slices_.size()); }
  /// Number of distinct gaps; an empty braid still has one.
  int gap_count() const noexcept { return slices_.empty() ? 1 : slice_count(); }
  int dumbbell_count() const noexcept { return t_; }
  int gap_above(int slice) const noexcept { return (slice + 1) % gap_count(); }
  int gap_below(int slice) const noexcept { return slice; }
  /// Slice indices of the dumbbells, bottom to top.
  std::vector<int> dumbbell_slices() const;
  Signature signature() const;
  /// Identity slices do not change edges, so a gap can be replaced by the
  /// number of dumbbells below it (mod t) without changing any evaluation.
  int compressed_gap(int gap) const;

  bool operator==(const Resolution& o) const { return index() == o.index() && slices_ == o.slices_; }

 private:
  BraidWord braid_;
  BitVector v_;
  std::vector<Slice> slices_;
  int t_ = 0;
};

Resolution resolve(const BraidWord& braid, const BitVector& v);

/// Upper-right edge point of every dumbbell, bottom to top.
std::vector<GapStrand> dur_positions(const Resolution& res);

}  // namespace gl1hom

#endif  // GL1HOM_RESOLUTION_HPP
