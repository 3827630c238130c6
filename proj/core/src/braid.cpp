#include "gl1hom/braid.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "gl1hom/error.hpp"

namespace gl1hom {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

BraidWord BraidWord::from_letters(std::vector<int> letters, int index) {
  BraidWord w;
  int max_abs = 0;
  for (int l : letters) {
    if (l == 0) throw Error(Errc::ZeroGenerator, "generator 0 in braid word");
    max_abs = std::max(max_abs, std::abs(l));
    (l > 0 ? w.n_plus : w.n_minus) += 1;
  }
  if (index != 0 && index < max_abs + 1) {
    throw Error(Errc::IndexTooLarge, "generator " + std::to_string(max_abs) + " needs at least " +
                                         std::to_string(max_abs + 1) + " strands");
  }
  w.index = index != 0 ? index : max_abs + 1;
  w.letters = std::move(letters);
  return w;
}

BraidWord parse_braid(std::string_view text, int strand_cap) {
  std::size_t first = 0;
  while (first < text.size() && is_space(text[first])) ++first;
  if (first == text.size()) throw Error(Errc::EmptyWord, "empty braid word");

  std::vector<int> letters;
  const char lead = text[first];
  const bool int_mode = lead == '-' || lead == '+' || std::isdigit(static_cast<unsigned char>(lead));
  if (!int_mode) {
    std::size_t end = text.size();
    while (end > first && is_space(text[end - 1])) --end;
    for (std::size_t i = first; i < end; ++i) {
      const char c = text[i];
      if (c >= 'A' && c <= 'Y') {
        letters.push_back(c - 'A' + 1);
      } else if (c >= 'a' && c <= 'y') {
        letters.push_back(-(c - 'a' + 1));
      } else if (c == '0') {
        throw Error(Errc::ZeroGenerator, "generator 0 at position " + std::to_string(i));
      } else {
        throw Error(Errc::InvalidCharacter, std::string("unexpected '") + c + "' at position " + std::to_string(i));
      }
    }
  } else {
    std::size_t i = first;
    while (i < text.size()) {
      if (is_space(text[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j])) ++j;
      std::string_view tok = text.substr(i, j - i);
      std::string_view digits = tok;
      const bool plus = !digits.empty() && digits.front() == '+';
      if (plus) digits.remove_prefix(1);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty() ||
          (plus && (digits.front() == '+' || digits.front() == '-'))) {
        throw Error(Errc::InvalidCharacter, "invalid integer '" + std::string(tok) + "' at position " + std::to_string(i));
      }
      if (value == 0) throw Error(Errc::ZeroGenerator, "generator 0 at position " + std::to_string(i));
      letters.push_back(value);
      i = j;
    }
  }

  BraidWord w = BraidWord::from_letters(std::move(letters));
  if (w.index > strand_cap) {
    throw Error(Errc::IndexTooLarge,
                "braid needs " + std::to_string(w.index) + " strands; the cap is " + std::to_string(strand_cap));
  }
  return w;
}

std::string render_letters(const BraidWord& w) {
  std::string s;
  for (int l : w.letters) {
    if (std::abs(l) > 25) throw std::invalid_argument("generator has no letter form");
    s.push_back(l > 0 ? static_cast<char>('A' + l - 1) : static_cast<char>('a' - l - 1));
  }
  return s;
}

std::string render_ints(const BraidWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(w.letters[i]);
  }
  return s;
}

BraidWord mirror(const BraidWord& w) {
  std::vector<int> flipped(w.letters);
  for (int& l : flipped) l = -l;
  return BraidWord::from_letters(std::move(flipped), w.index);
}

}  // namespace gl1hom
