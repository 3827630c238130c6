#ifndef GL1HOM_DURBASIS_HPP
#define GL1HOM_DURBASIS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "gl1hom/resolution.hpp"

namespace gl1hom {

using ResolutionPtr = std::shared_ptr<const Resolution>;

/// One d.u.r. basis element: bit j set means one dot on the upper-right edge
/// of dumbbell j.
struct DurElement {
  ResolutionPtr resolution;
  std::vector<std::uint8_t> bits;

  int dot_degree() const noexcept;
  int graph_degree() const noexcept;
};

/// A monomial decoration: dots with exponents at (gap, strand) points.
class Decoration {
 public:
  explicit Decoration(ResolutionPtr res) : res_(std::move(res)) {}

  const ResolutionPtr& resolution() const noexcept { return res_; }
  const Resolution& graph() const noexcept { return *res_; }
  /// Exponents at the same point add up.
  void add_dot(int gap, int strand, int exponent = 1);
  const std::map<GapStrand, int>& dots() const noexcept { return dots_; }
  std::vector<DotPlacement> placements() const;
  int degree() const noexcept;

 private:
  ResolutionPtr res_;
  std::map<GapStrand, int> dots_;
};

/// 2^t elements in lexicographic bit order.
std::vector<DurElement> dur_basis(const ResolutionPtr& res);

Decoration to_decoration(const DurElement& u);

/// Throws Error{ResolutionMismatch} unless both live on the same graph.
Decoration merge_decorations(const Decoration& a, const Decoration& b);

/// Bit vectors of length t stored as masks (bit j = entry j), ordered
/// lexicographically as tuples and grouped by weight.
class MaskOrder {
 public:
  static const MaskOrder& get(int t);

  int length() const noexcept { return t_; }
  std::span<const std::uint32_t> all() const noexcept { return all_; }
  std::span<const std::uint32_t> of_weight(int m) const { return by_weight_.at(static_cast<std::size_t>(m)); }
  /// Position of mask within its weight class.
  std::uint32_t rank_in_weight(std::uint32_t mask) const { return rank_[mask]; }

 private:
  explicit MaskOrder(int t);
  int t_;
  std::vector<std::uint32_t> all_;
  std::vector<std::vector<std::uint32_t>> by_weight_;
  std::vector<std::uint32_t> rank_;
};

inline constexpr int kMaxDumbbells = 24;

std::uint32_t bits_to_mask(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> mask_to_bits(std::uint32_t mask, int t);

}  // namespace gl1hom

#endif  // GL1HOM_DURBASIS_HPP
