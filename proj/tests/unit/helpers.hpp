#ifndef GL1HOM_TEST_HELPERS_HPP
#define GL1HOM_TEST_HELPERS_HPP

#include <memory>
#include <vector>

#include "gl1hom/arith.hpp"
#include "gl1hom/durbasis.hpp"
#include "gl1hom/resolution.hpp"

namespace testutil {

inline gl1hom::ResolutionPtr res(std::vector<int> letters, gl1hom::BitVector v, int index = 0) {
  return std::make_shared<const gl1hom::Resolution>(gl1hom::BraidWord::from_letters(std::move(letters), index),
                                                    std::move(v));
}

// Dense Gaussian elimination over Q with plain rational pivots; deliberately
// nothing in common with the library's fraction-free sparse code.
inline std::size_t naive_rank(std::vector<std::vector<gl1hom::Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const gl1hom::Rational f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace testutil

#endif
