#include "gl1hom/cli/compute.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace gl1hom::cli {

ComputeResult compute(const BraidWord& braid, std::uint64_t characteristic, const Config& cfg, std::stop_token stop) {
  const auto t0 = std::chrono::steady_clock::now();
  BuildOptions opts;
  opts.threads = cfg.threads;
  opts.stop = stop;
  const GradedComplex c = build_complex(braid, cfg.calibration, opts);
  ComputeResult r;
  r.braid = braid;
  r.characteristic = characteristic;
  r.poly = poincare(c, characteristic, stop);
  r.generators = c.generator_count();
  r.euler_ok = euler_characteristic_matches(c, r.poly);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ComputeResult compute(std::string_view braid_text, std::uint64_t characteristic, const Config& cfg,
                      std::stop_token stop) {
  return compute(parse_braid(braid_text, cfg.strand_cap), characteristic, cfg, stop);
}

void run_with_deadline(double seconds, const std::function<void(std::stop_token)>& fn) {
  std::stop_source source;
  std::mutex m;
  std::condition_variable_any cv;
  std::jthread watchdog([&](std::stop_token done) {
    std::unique_lock lock(m);
    const auto limit = std::chrono::duration<double>(seconds);
    if (!cv.wait_for(lock, done, std::chrono::duration_cast<std::chrono::steady_clock::duration>(limit),
                     [] { return false; })) {
      if (!done.stop_requested()) source.request_stop();
    }
  });
  fn(source.get_token());
}

}  // namespace gl1hom::cli
