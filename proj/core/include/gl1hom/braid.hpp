#ifndef GL1HOM_BRAID_HPP
#define GL1HOM_BRAID_HPP

#include <string>
#include <string_view>
#include <vector>

namespace gl1hom {

inline constexpr int kDefaultStrandCap = 8;

/// A braid word: +i is sigma_i, -i its inverse.
struct BraidWord {
  std::vector<int> letters;
  int index = 1;  // number of strands
  int n_plus = 0;
  int n_minus = 0;

  /// Validates the letters and fills in the crossing census. The index is
  /// 1 + max |letter| unless a larger explicit index is given.
  static BraidWord from_letters(std::vector<int> letters, int index = 0);

  std::size_t length() const noexcept { return letters.size(); }
  bool operator==(const BraidWord&) const = default;
};

/// Letter form (A..Y positive, a..y negative) or whitespace-separated signed
/// integers. Throws Error with EmptyWord, InvalidCharacter, ZeroGenerator or
/// IndexTooLarge.
BraidWord parse_braid(std::string_view text, int strand_cap = kDefaultStrandCap);

/// Letter form; only valid for |letter| <= 25.
std::string render_letters(const BraidWord& w);
std::string render_ints(const BraidWord& w);

/// Flips every crossing.
BraidWord mirror(const BraidWord& w);

}  // namespace gl1hom

#endif  // GL1HOM_BRAID_HPP
