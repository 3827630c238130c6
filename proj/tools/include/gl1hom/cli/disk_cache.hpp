#ifndef GL1HOM_CLI_DISK_CACHE_HPP
#define GL1HOM_CLI_DISK_CACHE_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "gl1hom/resolution.hpp"
#include "gl1hom/sparse_matrix.hpp"

namespace gl1hom::cli {

/// Bumped whenever a convention change alters Gram matrices.
inline constexpr int kGramCacheVersion = 1;
/// Signatures with more dumbbells are computed but not written out.
inline constexpr int kMaxPersistedDumbbells = 10;

/// Gram matrices stored one JSON record per line under dir/gram.jsonl, after
/// a header line carrying the format version. A file with a different header
/// is moved aside and replaced. Records that fail validation are skipped.
class DiskGramCache {
 public:
  explicit DiskGramCache(std::filesystem::path dir);

  std::optional<SparseIntMatrix> load(const Signature& sig) const;
  void save(const Signature& sig, const SparseIntMatrix& gram);

  std::size_t size() const;
  std::size_t skipped_records() const noexcept { return skipped_; }
  const std::filesystem::path& file() const noexcept { return file_; }

  /// Routes GramCache::shared() through this cache.
  static void install(const std::shared_ptr<DiskGramCache>& cache);
  /// Detaches any installed disk cache.
  static void uninstall();

 private:
  void open_for_append();

  std::filesystem::path file_;
  mutable std::mutex mutex_;
  std::map<Signature, SparseIntMatrix> records_;
  std::ofstream out_;
  std::size_t skipped_ = 0;
};

}  // namespace gl1hom::cli

#endif  // GL1HOM_CLI_DISK_CACHE_HPP
