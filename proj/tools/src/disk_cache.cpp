#include "gl1hom/cli/disk_cache.hpp"

#include <string>
#include <vector>

#include "json.hpp"

#include "gl1hom/error.hpp"
#include "gl1hom/transfer.hpp"

namespace gl1hom::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json header() { return {{"format", "gl1hom-gram"}, {"version", kGramCacheVersion}}; }

std::optional<std::pair<Signature, SparseIntMatrix>> parse_record(const std::string& line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  try {
    Signature sig{j.at("k").get<int>(), j.at("positions").get<std::vector<int>>()};
    if (sig.k < 1 || sig.dumbbell_count() > kMaxPersistedDumbbells) return std::nullopt;
    for (int p : sig.positions)
      if (p < 1 || p >= sig.k) return std::nullopt;
    const std::size_t n = std::size_t{1} << sig.dumbbell_count();
    std::vector<SparseIntMatrix::Triplet> trip;
    for (const auto& e : j.at("entries")) {
      const auto r = e.at(0).get<std::uint32_t>();
      const auto c = e.at(1).get<std::uint32_t>();
      if (r >= n || c >= n) return std::nullopt;
      BigInt v;
      if (v.set_str(e.at(2).get<std::string>(), 10) != 0) return std::nullopt;
      trip.push_back({r, c, std::move(v)});
    }
    SparseIntMatrix g = SparseIntMatrix::from_triplets(n, n, std::move(trip));
    if (!(g.transpose() == g)) return std::nullopt;
    return std::make_pair(std::move(sig), std::move(g));
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::string render_record(const Signature& sig, const SparseIntMatrix& g) {
  json entries = json::array();
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (const auto& e : g.row(r)) entries.push_back({r, e.col, e.value.get_str()});
  return json{{"k", sig.k}, {"positions", sig.positions}, {"entries", std::move(entries)}}.dump();
}

}  // namespace

DiskGramCache::DiskGramCache(fs::path dir) : file_(std::move(dir) / "gram.jsonl") {
  std::error_code ec;
  fs::create_directories(file_.parent_path(), ec);
  if (ec) throw Error(Errc::CacheError, "cannot create " + file_.parent_path().string() + ": " + ec.message());
  bool fresh = true;
  if (std::ifstream in(file_); in) {
    std::string line;
    if (std::getline(in, line)) {
      const json h = json::parse(line, nullptr, false);
      if (!h.is_discarded() && h == header()) {
        fresh = false;
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          if (auto rec = parse_record(line)) {
            records_.insert_or_assign(std::move(rec->first), std::move(rec->second));
          } else {
            ++skipped_;
          }
        }
      }
    }
  }
  if (fresh && fs::exists(file_)) {
    fs::rename(file_, fs::path(file_).concat(".stale"), ec);
    if (ec) fs::remove(file_, ec);
  }
  if (fresh) {
    std::ofstream init(file_, std::ios::trunc);
    if (!init) throw Error(Errc::CacheError, "cannot write " + file_.string());
    init << header().dump() << '\n';
  }
  open_for_append();
}

void DiskGramCache::open_for_append() {
  out_.open(file_, std::ios::app);
  if (!out_) throw Error(Errc::CacheError, "cannot append to " + file_.string());
}

std::optional<SparseIntMatrix> DiskGramCache::load(const Signature& sig) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find(sig);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void DiskGramCache::save(const Signature& sig, const SparseIntMatrix& gram) {
  if (sig.dumbbell_count() > kMaxPersistedDumbbells) return;
  std::lock_guard lock(mutex_);
  if (records_.contains(sig)) return;
  out_ << render_record(sig, gram) << '\n';
  out_.flush();
  records_.emplace(sig, gram);
}

std::size_t DiskGramCache::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

void DiskGramCache::install(const std::shared_ptr<DiskGramCache>& cache) {
  GramCache::shared().set_persistence(
      [cache](const Signature& s) { return cache->load(s); },
      [cache](const Signature& s, const SparseIntMatrix& g) { cache->save(s, g); });
}

void DiskGramCache::uninstall() { GramCache::shared().set_persistence({}, {}); }

}  // namespace gl1hom::cli
