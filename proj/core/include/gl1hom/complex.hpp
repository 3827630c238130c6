#ifndef GL1HOM_COMPLEX_HPP
#define GL1HOM_COMPLEX_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stop_token>
#include <vector>

#include "gl1hom/braid.hpp"
#include "gl1hom/durbasis.hpp"
#include "gl1hom/resolution.hpp"
#include "gl1hom/sparse_matrix.hpp"

namespace gl1hom {

/// Grading of the hypercube generators. With S = (n_plus, n_minus, k-1, 1)
/// and o = orientation:
///   hom(v)   = o |v| + epsilon . S
///   q(v, u)  = o (2|u| - t(v) - |v|) + alpha . S
/// With o = -1 the complex is the dual of the hypercube complex: gradings are
/// negated and the differential is the transpose of the edge maps, so it still
/// raises hom by one.
struct Calibration {
  int orientation = 1;
  std::array<int, 4> alpha{};
  std::array<int, 4> epsilon{};

  /// Constants fitted against the reference knot table.
  static Calibration fitted();

  int q_shift(const BraidWord& b) const noexcept;
  int hom_shift(const BraidWord& b) const noexcept;
  bool operator==(const Calibration&) const = default;
};

/// Knobs that exist for testing the test suite itself.
struct Conventions {
  int zip_sign = 1;  // -1 negates every zip image
};

enum class EdgeKind { Zip, Unzip };

struct HypercubeEdge {
  BitVector source;
  BitVector target;
  int crossing = 0;
  EdgeKind kind = EdgeKind::Zip;
  int sign = 1;
};

/// Edge raising bit `crossing` of source. Throws Error{WrongEdge} if that bit
/// is already set.
HypercubeEdge make_edge(const BraidWord& braid, const BitVector& source, int crossing);

struct SignedDecoration {
  int sign = 1;
  Decoration dec;
};

struct EdgeImage {
  ResolutionPtr target;
  std::vector<SignedDecoration> terms;
};

/// The decoration-preserving map flattening the dumbbell at `crossing`.
/// Throws Error{WrongEdge} unless the crossing is negative and unresolved.
EdgeImage unzip_image(const DurElement& u, int crossing);

/// Dot on the new upper-right edge minus dot on the new lower-left edge.
/// Throws Error{WrongEdge} unless the crossing is positive and unresolved.
EdgeImage zip_image(const DurElement& u, int crossing, const Conventions& conv = {});

/// Coordinates of a signed sum of decorations in the d.u.r. basis of target,
/// via its Gram matrix.
std::vector<BigInt> coordinates(const ResolutionPtr& target, const std::vector<SignedDecoration>& image);

struct Bidegree {
  int i = 0;
  int q = 0;
  auto operator<=>(const Bidegree&) const = default;
};

/// Generators bucketed by (homological, quantum) degree. Within a bucket they
/// are ordered by resolution (crossing bits compared lexicographically) and
/// then by d.u.r. bits (lexicographically). differential[(i, q)] maps the
/// (i, q) bucket to the (i+1, q) bucket.
struct GradedComplex {
  BraidWord braid;
  Calibration calibration;
  std::map<Bidegree, std::size_t> dims;
  std::map<Bidegree, SparseIntMatrix> differential;

  std::size_t generator_count() const noexcept;
  /// Differential out of bucket b; a zero matrix of the right shape if absent.
  SparseIntMatrix d(Bidegree b) const;
};

struct BuildOptions {
  bool verify_d_squared = false;
  int threads = 1;
  Conventions conventions{};
  std::stop_token stop{};
};

/// Throws Error{GradingViolation} if an entry links different q-degrees,
/// Error{DSquareNonzero} when verification is on and fails, Error{Timeout} when
/// the stop token fires.
GradedComplex build_complex(const BraidWord& braid, const Calibration& cal, const BuildOptions& opts = {});

bool check_d_squared(const GradedComplex& c);

/// Pairing matrices of the zip and unzip maps between the resolutions with
/// crossing `crossing` flattened and resolved as a dumbbell at the given
/// position; all other slices follow (letters, v). Returns true if the unzip
/// matrix is the negated transpose of the zip matrix.
bool check_zip_unzip_adjoint(const std::vector<int>& letters, const BitVector& v, int crossing,
                             const Conventions& conv = {});

}  // namespace gl1hom

#endif  // GL1HOM_COMPLEX_HPP
