// intermithash command-line tool: hash, bench, quality, simulate.
#include <CLI11.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "intermithash/bench.hpp"
#include "intermithash/energy.hpp"
#include "intermithash/quality.hpp"
#include "intermithash/registry.hpp"
#include "intermithash/report.hpp"
#include "intermithash/rng.hpp"

namespace fs = std::filesystem;
using namespace intermithash;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Shared {
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
  unsigned threads = default_threads();

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    const char* env = std::getenv("INTERMITHASH_SEED");
    if (!env || !*env) return 0;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 0);
    if (errno != 0 || *end != '\0' || env[0] == '-') throw UsageError(std::string("bad INTERMITHASH_SEED: ") + env);
    return v;
  }
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--seed", s.seed, "RNG seed (default: $INTERMITHASH_SEED or 0)");
  cmd->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", s.out, "Output path (directory for quality)");
  cmd->add_option("--threads", s.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text << std::flush;
  } else {
    write_file(out, text);
  }
}

int cmd_hash(const std::string& name, const std::string& file) {
  std::shared_ptr<const HashAlgorithm> h;
  try {
    h = find_hash(name);
  } catch (const UnknownHashError& e) {
    throw UsageError(e.what());
  }
  auto st = h->stream();
  std::FILE* in = stdin;
  if (!file.empty() && file != "-") {
    in = std::fopen(file.c_str(), "rb");
    if (!in) throw std::runtime_error("cannot open " + file + ": " + std::strerror(errno));
  }
  std::vector<std::uint8_t> buf(1 << 16);
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), in)) > 0) st->update(ByteView(buf.data(), n));
  const bool failed = std::ferror(in) != 0;
  if (in != stdin) std::fclose(in);
  if (failed) throw std::runtime_error("read error on " + (file.empty() ? std::string("stdin") : file));
  std::cout << st->finish().hex() << "\n";
  return kExitOk;
}

int cmd_bench(const Shared& s, const std::string& cls, unsigned reps, unsigned warmup,
              std::vector<std::string> hashes) {
  if (hashes.empty()) hashes = default_bench_hashes();
  std::vector<MsgClass> classes;
  if (cls == "short" || cls == "both") classes.push_back(MsgClass::Short);
  if (cls == "long" || cls == "both") classes.push_back(MsgClass::Long);
  BenchOptions opt;
  opt.repetitions = reps;
  opt.warmup = warmup;
  opt.seed = s.resolved_seed();
  std::vector<BenchResult> results;
  for (const auto& h : hashes)
    for (auto c : classes) results.push_back(bench_hash(h, c, opt));
  const std::string text = render_bench(results, parse_format(s.format));
  emit(s.out, text);
  return kExitOk;
}

int cmd_quality(const Shared& s, std::vector<std::string> hashes, std::vector<std::string> tests) {
  if (hashes.empty()) hashes = default_quality_hashes();
  QualityPlan plan = QualityPlan::defaults(s.resolved_seed());
  if (!tests.empty()) plan.tests = tests;
  for (const auto& t : plan.tests)
    if (std::find(quality_test_names().begin(), quality_test_names().end(), t) == quality_test_names().end())
      throw UsageError("unknown quality test: " + t);
  std::vector<std::shared_ptr<const HashAlgorithm>> algs;
  for (const auto& h : hashes) {
    try {
      algs.push_back(find_hash(h));
    } catch (const UnknownHashError& e) {
      throw UsageError(e.what());
    }
  }
  QualityConfig cfg;
  cfg.threads = s.threads;
  std::vector<QualityReport> reports;
  for (std::size_t i = 0; i < algs.size(); ++i) {
    std::cerr << "quality: " << hashes[i] << "\n";
    reports.push_back(run_quality(*algs[i], plan, cfg));
    reports.back().hash_name = hashes[i];
  }
  if (s.out.empty()) {
    std::cout << (s.format == "csv" ? quality_summary_csv(reports) : quality_json(reports, plan)) << std::flush;
    return kExitOk;
  }
  fs::create_directories(s.out);
  for (const auto& r : reports)
    for (const auto& d : quality_documents(r, plan)) write_file(fs::path(s.out) / (d.hash + "." + d.test + ".json"), d.json);
  write_file(fs::path(s.out) / "summary.csv", quality_summary_csv(reports));
  return kExitOk;
}

struct SimArgs {
  std::string params_file;
  std::string policy = "both";
  std::optional<std::uint64_t> task_cycles;
  std::uint64_t trials = 200;
  std::optional<double> p_ref, sigma, timeout, v_guard, v_wake;
  std::vector<double> distances;
  std::string trace_file, histogram_file;
};

int cmd_simulate(const Shared& s, const SimArgs& a) {
  const EnergyParams params = a.params_file.empty() ? EnergyParams{} : load_params(a.params_file);
  SweepConfig cfg;
  if (a.task_cycles) {
    cfg.task.total_cycles = *a.task_cycles;
    cfg.task.checkpoint_granularity_cycles = std::min(cfg.task.checkpoint_granularity_cycles, *a.task_cycles);
  }
  if (a.p_ref) cfg.p_ref_w = *a.p_ref;
  if (a.sigma) cfg.sigma = *a.sigma;
  if (a.timeout) cfg.timeout_s = *a.timeout;
  if (a.v_guard) cfg.iem.v_guard = *a.v_guard;
  if (a.v_wake) cfg.iem.v_wake = *a.v_wake;
  if (!a.distances.empty()) cfg.distances_m = a.distances;
  if (a.trials == 0) throw UsageError("--trials must be >= 1");
  if (!a.histogram_file.empty() && a.trials < 100) throw UsageError("--histogram needs --trials >= 100");

  std::vector<ExecutionPolicy> policies;
  if (a.policy == "continuous" || a.policy == "both") policies.emplace_back(ContinuousPolicy{});
  if (a.policy == "iem" || a.policy == "both") policies.emplace_back(cfg.iem);

  const std::uint64_t seed = s.resolved_seed();
  const auto points = run_sweep(params, cfg, policies, a.trials, seed, {}, s.threads);
  emit(s.out, render_sweep(points, params, cfg, seed, parse_format(s.format)));

  if (!a.trace_file.empty()) {
    const double p = distance_to_power(cfg.mid_range_m, cfg.p_ref_w, cfg.d_ref_m);
    const HarvestProfile profile(NoisyHarvest{p, cfg.sigma, Rng::split(seed, 0)(), cfg.segment_s});
    SimOptions opt;
    opt.trace_interval_s = 1e-4;
    const auto o = run_task(params, profile, cfg.task, policies.back(), cfg.timeout_s, opt);
    std::ofstream f(a.trace_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + a.trace_file);
    write_trace_csv(f, o.trace);
  }
  if (!a.histogram_file.empty()) {
    const double p = distance_to_power(cfg.distances_m.back(), cfg.p_ref_w, cfg.d_ref_m);
    const HarvestProfile profile(NoisyHarvest{p, cfg.sigma, 0, cfg.segment_s});
    const auto h = cycle_histogram(params, profile, a.trials, seed, cfg.timeout_s);
    std::ofstream f(a.histogram_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + a.histogram_file);
    write_histogram_csv(f, h);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lightweight block-cipher hashes: hashing, quality battery, benchmarks, energy simulation"};
  app.require_subcommand(1);

  std::string hash_name, hash_file;
  auto* hash = app.add_subcommand("hash", "Print the hex digest of FILE (or stdin)");
  hash->add_option("name", hash_name, "Hash name")->required();
  hash->add_option("file", hash_file, "Input file; '-' or omitted reads stdin");

  Shared bench_s, quality_s, sim_s;
  std::string bench_class = "both";
  unsigned reps = 30, warmup = 5;
  std::vector<std::string> bench_hashes;
  auto* bench = app.add_subcommand("bench", "Time hashes on short (10 B) and long (1280 B) messages");
  bench->add_option("--class", bench_class, "Message class")->check(CLI::IsMember({"short", "long", "both"}));
  bench->add_option("--reps", reps, "Timed repetitions (median reported)")->check(CLI::Range(1u, 1000000u));
  bench->add_option("--warmup", warmup, "Untimed warmup repetitions");
  bench->add_option("--hash", bench_hashes, "Hashes to time (default: md5 blake2s and the speck128 constructions)");
  add_shared(bench, bench_s);

  std::vector<std::string> q_hashes, q_tests;
  auto* quality = app.add_subcommand("quality", "Run the hash quality battery");
  quality->add_option("--hash", q_hashes, "Hashes (default: md5 dm-speck128 mmo-speck128 mp-speck128)");
  quality->add_option("--test", q_tests,
                      "Tests: avalanche cyclic twobytes differential sparse permutation window zeros");
  add_shared(quality, quality_s);

  SimArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Success-rate sweep of Continuous vs IEM execution");
  simulate->add_option("--params", sim.params_file, "Energy parameter file (default: built-in calibration)");
  simulate->add_option("--policy", sim.policy, "Execution policy")->check(CLI::IsMember({"continuous", "iem", "both"}));
  simulate->add_option("--task-cycles", sim.task_cycles, "Task length in CPU cycles");
  simulate->add_option("--trials", sim.trials, "Noisy trials per sweep point");
  simulate->add_option("--p-ref", sim.p_ref, "Harvested power (W) at the reference distance");
  simulate->add_option("--sigma", sim.sigma, "Relative harvest noise");
  simulate->add_option("--timeout", sim.timeout, "Per-trial deadline (s)");
  simulate->add_option("--v-guard", sim.v_guard, "IEM checkpoint threshold (V)");
  simulate->add_option("--v-wake", sim.v_wake, "IEM wake threshold (V)");
  simulate->add_option("--distances", sim.distances, "Sweep distances (m)")->delimiter(',');
  simulate->add_option("--trace", sim.trace_file, "Write a t_s,v_cap,state,cycles_done trace at mid range");
  simulate->add_option("--histogram", sim.histogram_file, "Write a per-IPC cycle histogram CSV");
  add_shared(simulate, sim_s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*hash) return cmd_hash(hash_name, hash_file);
    if (*bench) return cmd_bench(bench_s, bench_class, reps, warmup, bench_hashes);
    if (*quality) return cmd_quality(quality_s, q_hashes, q_tests);
    if (*simulate) return cmd_simulate(sim_s, sim);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
