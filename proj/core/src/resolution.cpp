#include "gl1hom/resolution.hpp"

#include "gl1hom/error.hpp"

namespace gl1hom {

std::size_t SignatureHash::operator()(const Signature& s) const noexcept {
  std::size_t h = std::hash<int>{}(s.k);
  for (int p : s.positions) h = h * 1000003u ^ std::hash<int>{}(p);
  return h;
}

bool is_dumbbell(int letter, std::uint8_t bit) noexcept { return (letter > 0 && bit == 1) || (letter < 0 && bit == 0); }

Resolution::Resolution(BraidWord braid, BitVector v) : braid_(std::move(braid)), v_(std::move(v)) {
  if (v_.size() != braid_.letters.size()) {
    throw Error(Errc::LengthMismatch, "resolution has " + std::to_string(v_.size()) + " bits for " +
                                          std::to_string(braid_.letters.size()) + " crossings");
  }
  slices_.reserve(v_.size());
  for (std::size_t s = 0; s < v_.size(); ++s) {
    const int letter = braid_.letters[s];
    const bool d = is_dumbbell(letter, v_[s]);
    slices_.push_back({d, std::abs(letter)});
    t_ += d ? 1 : 0;
  }
}

std::vector<int> Resolution::dumbbell_slices() const {
  std::vector<int> out;
  for (int s = 0; s < slice_count(); ++s) {
    if (slices_[s].dumbbell) out.push_back(s);
  }
  return out;
}

Signature Resolution::signature() const {
  Signature sig{index(), {}};
  for (const auto& sl : slices_) {
    if (sl.dumbbell) sig.positions.push_back(sl.position);
  }
  return sig;
}

int Resolution::compressed_gap(int gap) const {
  if (t_ == 0) return 0;
  int below = 0;
  for (int s = 0; s < gap; ++s) below += slices_[s].dumbbell ? 1 : 0;
  return below % t_;
}

Resolution resolve(const BraidWord& braid, const BitVector& v) { return Resolution(braid, v); }

std::vector<GapStrand> dur_positions(const Resolution& res) {
  std::vector<GapStrand> out;
  for (int s : res.dumbbell_slices()) out.push_back({res.gap_above(s), res.slices()[s].position + 1});
  return out;
}

}  // namespace gl1hom
