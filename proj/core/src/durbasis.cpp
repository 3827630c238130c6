#include "gl1hom/durbasis.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <stdexcept>

#include "gl1hom/error.hpp"

namespace gl1hom {

int DurElement::dot_degree() const noexcept {
  int d = 0;
  for (auto b : bits) d += b;
  return d;
}

int DurElement::graph_degree() const noexcept { return 2 * dot_degree() - static_cast<int>(bits.size()); }

void Decoration::add_dot(int gap, int strand, int exponent) {
  if (gap < 0 || gap >= res_->gap_count() || strand < 1 || strand > res_->index() || exponent < 0) {
    throw std::out_of_range("dot outside the graph");
  }
  if (exponent == 0) return;
  dots_[{gap, strand}] += exponent;
}

std::vector<DotPlacement> Decoration::placements() const {
  std::vector<DotPlacement> out;
  for (const auto& [pos, e] : dots_) out.push_back({pos.gap, pos.strand, e});
  return out;
}

int Decoration::degree() const noexcept {
  int d = 0;
  for (const auto& [pos, e] : dots_) d += e;
  return d;
}

std::vector<DurElement> dur_basis(const ResolutionPtr& res) {
  const int t = res->dumbbell_count();
  std::vector<DurElement> out;
  for (std::uint32_t mask : MaskOrder::get(t).all()) out.push_back({res, mask_to_bits(mask, t)});
  return out;
}

Decoration to_decoration(const DurElement& u) {
  Decoration d(u.resolution);
  const auto pos = dur_positions(*u.resolution);
  for (std::size_t j = 0; j < u.bits.size(); ++j) {
    if (u.bits[j]) d.add_dot(pos[j].gap, pos[j].strand, 1);
  }
  return d;
}

Decoration merge_decorations(const Decoration& a, const Decoration& b) {
  if (!(a.graph() == b.graph())) throw Error(Errc::ResolutionMismatch, "decorations live on different resolutions");
  Decoration out = a;
  for (const auto& [pos, e] : b.dots()) out.add_dot(pos.gap, pos.strand, e);
  return out;
}

MaskOrder::MaskOrder(int t) : t_(t), by_weight_(static_cast<std::size_t>(t) + 1), rank_(std::size_t{1} << t) {
  const std::uint32_t n = std::uint32_t{1} << t;
  for (std::uint32_t key = 0; key < n; ++key) {
    // key read most-significant-first is the tuple (b_0, b_1, ...)
    std::uint32_t mask = 0;
    for (int j = 0; j < t; ++j) {
      if (key & (std::uint32_t{1} << (t - 1 - j))) mask |= std::uint32_t{1} << j;
    }
    all_.push_back(mask);
    auto& bucket = by_weight_[static_cast<std::size_t>(std::popcount(mask))];
    rank_[mask] = static_cast<std::uint32_t>(bucket.size());
    bucket.push_back(mask);
  }
}

const MaskOrder& MaskOrder::get(int t) {
  if (t < 0 || t > kMaxDumbbells) throw std::out_of_range("too many dumbbells for a mask");
  static std::array<std::once_flag, kMaxDumbbells + 1> flags;
  static std::array<std::unique_ptr<MaskOrder>, kMaxDumbbells + 1> orders;
  std::call_once(flags[static_cast<std::size_t>(t)], [t] { orders[static_cast<std::size_t>(t)].reset(new MaskOrder(t)); });
  return *orders[static_cast<std::size_t>(t)];
}

std::uint32_t bits_to_mask(std::span<const std::uint8_t> bits) {
  std::uint32_t m = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) m |= std::uint32_t{1} << j;
  }
  return m;
}

std::vector<std::uint8_t> mask_to_bits(std::uint32_t mask, int t) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(t));
  for (int j = 0; j < t; ++j) bits[static_cast<std::size_t>(j)] = (mask >> j) & 1u;
  return bits;
}

}  // namespace gl1hom
