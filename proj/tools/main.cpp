#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "gl1hom/cli/commands.hpp"
#include "gl1hom/cli/disk_cache.hpp"

using namespace gl1hom;
using namespace gl1hom::cli;

int main(int argc, char** argv) {
  CLI::App app{"Symmetric gl1 homology of braid closures"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<int> threads;
  bool no_cache = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-cache", no_cache, "skip the on-disk Gram cache");

  ComputeArgs compute_args;
  std::string format = "text";
  auto* compute = app.add_subcommand("compute", "Poincare polynomial of one braid closure");
  compute->add_option("braid", compute_args.braid, "braid word, e.g. AbAb or \"1 -2 1 -2\"")->required();
  compute->add_option("-p,--char", compute_args.characteristic, "0 or a prime");
  compute->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  compute->add_flag("--timings", compute_args.timings, "report wall time");

  BatchArgs batch_args;
  std::optional<std::size_t> max_length;
  std::optional<int> max_index;
  auto* batch = app.add_subcommand("batch", "run a corpus CSV against its expected rows");
  batch->add_option("corpus", batch_args.corpus)->required();
  batch->add_option("-p,--char", batch_args.options.characteristic, "0 or a prime");
  batch->add_option("--report", batch_args.report, "write a JSON (or .csv) report");
  batch->add_option("--max-length", max_length, "skip longer braids");
  batch->add_option("--max-index", max_index, "skip braids on more strands");
  batch->add_option("--jobs", batch_args.options.jobs, "entries run concurrently")->check(CLI::PositiveNumber);
  batch->add_flag("--timings", batch_args.timings, "include wall times in the report");

  SelftestOptions st;
  auto* selftest = app.add_subcommand("selftest", "run the invariant suites");
  selftest->add_option("--seed", st.seed);
  selftest->add_flag("--debug-flip-zip-sign", st.flip_zip_sign);
  selftest->add_flag("--debug-zero-calibration", st.zero_calibration);

  std::string oracle_braid, oracle_bits;
  auto* oracle = app.add_subcommand("oracle", "symbolic evaluation vs fast evaluation on one resolution");
  oracle->add_option("braid", oracle_braid)->required();
  oracle->add_option("--v", oracle_bits, "resolution bits, one per crossing")->required();

  CLI11_PARSE(app, argc, argv);

  Config cfg;
  try {
    cfg = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (threads) cfg.threads = *threads;
  if (!no_cache && !cfg.cache_dir.empty()) {
    try {
      DiskGramCache::install(std::make_shared<DiskGramCache>(cfg.cache_dir));
    } catch (const Error& e) {
      std::cerr << "warning: Gram cache disabled: " << e.what() << '\n';
    }
  }

  if (*compute) {
    compute_args.json = format == "json";
    return cmd_compute(compute_args, cfg, std::cout, std::cerr);
  }
  if (*batch) {
    batch_args.options.max_length = max_length;
    batch_args.options.max_index = max_index;
    return cmd_batch(batch_args, cfg, std::cout, std::cerr);
  }
  if (*selftest) {
    st.threads = cfg.threads;
    st.calibration = cfg.calibration;
    return cmd_selftest(st, std::cout);
  }
  return cmd_oracle(oracle_braid, oracle_bits, cfg, std::cout, std::cerr);
}
