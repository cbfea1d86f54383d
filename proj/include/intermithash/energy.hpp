#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace intermithash {

struct EnergyParams {
  double capacitance_f = 47e-6;
  double v_on = 2.4;
  double v_off = 1.8;
  double v_max = 3.6;
  double p_load_w = 1.76e-3;
  double p_sleep_w = 0.55e-6;
  double p_leak_w = 1e-6;
  double f_cpu_hz = 8e6;

  /// Throws std::invalid_argument on non-finite or inconsistent values.
  void validate() const;

  /// Stored energy at voltage v. Quadratic in the margin above v_off so that
  /// the energy released between v_on and v_off is exactly energy_per_ipc().
  double energy_at(double v) const;
  double voltage_at(double energy_j) const;
};

/// Flat "key = value" text; '#' starts a comment. Unknown or missing keys are errors.
EnergyParams parse_params(const std::string& text);
EnergyParams load_params(const std::string& path);
std::string format_params(const EnergyParams& p);

/// 1/2 C (V_on - V_off)^2.
double energy_per_ipc(const EnergyParams& p);
/// floor(energy_per_ipc / P_load * f_CPU).
std::uint64_t cycles_per_ipc(const EnergyParams& p);

double distance_to_power(double d_m, double p_ref_w, double d_ref_m);

struct ConstantHarvest {
  double power_w = 0;
};
/// Piecewise-constant power mean * max(0, 1 + sigma * z_k) on segments of
/// segment_s, z_k standard normal drawn from (seed, k).
struct NoisyHarvest {
  double mean_w = 0;
  double sigma = 0;
  std::uint64_t seed = 0;
  double segment_s = 5e-3;
};
struct DistanceHarvest {
  double p_ref_w = 0;
  double d_ref_m = 1;
  double d_m = 1;
};

class HarvestProfile {
 public:
  using Kind = std::variant<ConstantHarvest, NoisyHarvest, DistanceHarvest>;
  HarvestProfile(Kind kind = ConstantHarvest{});  // NOLINT: implicit by design

  double power_at(double t_s) const;
  /// Same profile with a new noise seed; no-op for noiseless kinds.
  HarvestProfile reseeded(std::uint64_t seed) const;
  const Kind& kind() const { return kind_; }

 private:
  Kind kind_;
};

enum class DeviceState { Off, Active, Sleep };
std::string to_string(DeviceState s);

struct TaskSpec {
  std::uint64_t total_cycles = 0;
  std::uint64_t checkpoint_granularity_cycles = 0;
  std::uint64_t checkpoint_cost_cycles = 0;
  std::uint64_t restore_cost_cycles = 0;
};

struct ContinuousPolicy {};
struct IemPolicy {
  double v_guard = 2.0;
  double v_wake = 2.4;
};
using ExecutionPolicy = std::variant<ContinuousPolicy, IemPolicy>;
std::string policy_name(const ExecutionPolicy& p);

struct IpcRecord {
  double start_s = 0;
  double end_s = 0;
  std::uint64_t cycles = 0;
  /// Still running when the simulation stopped.
  bool truncated = false;
};

struct TraceSample {
  double t_s = 0;
  double v_cap = 0;
  DeviceState state = DeviceState::Off;
  std::uint64_t cycles_done = 0;
};

struct SimOptions {
  double dt_s = 2e-6;
  /// Trace sampling period; 0 disables the trace.
  double trace_interval_s = 0;
  double v_initial = 0;
};

struct TraceResult {
  std::vector<IpcRecord> ipcs;
  std::vector<TraceSample> samples;
  double harvested_j = 0;
  double final_energy_j = 0;
  double initial_energy_j = 0;
};

/// Runs the device with a load that never finishes: power on at V_on,
/// brown out below V_off.
TraceResult simulate_trace(const EnergyParams& params, const HarvestProfile& profile,
                           double duration_s, const SimOptions& opt = {});

struct SimOutcome {
  bool completed = false;
  double wall_time_s = 0;
  std::uint64_t active_cycles_executed = 0;
  std::uint64_t restarts = 0;
  std::uint64_t checkpoints = 0;
  std::vector<IpcRecord> ipc_list;
  /// Task progress (cycles toward completion) sampled per trace interval.
  std::vector<TraceSample> trace;
};

SimOutcome run_task(const EnergyParams& params, const HarvestProfile& profile, const TaskSpec& task,
                    const ExecutionPolicy& policy, double timeout_s, const SimOptions& opt = {});

/// Trial t uses profile.reseeded(Rng::split(seed, t)()).
double success_rate(const EnergyParams& params, const HarvestProfile& profile, const TaskSpec& task,
                    const ExecutionPolicy& policy, double timeout_s, std::uint64_t trials,
                    std::uint64_t seed, const SimOptions& opt = {}, unsigned threads = 1);

struct HistogramBucket {
  double low = 0;
  double high = 0;
  std::uint64_t count = 0;
};

struct CycleHistogram {
  std::vector<HistogramBucket> buckets;
  std::vector<std::uint64_t> samples;
  double mean() const;
};

/// Per-IPC cycle counts (truncated IPCs excluded) from `trials` reseeded
/// traces of duration_s each, bucketed into `buckets` equal bins over [min, max]. Requires trials >= 100.
CycleHistogram cycle_histogram(const EnergyParams& params, const HarvestProfile& profile,
                               std::uint64_t trials, std::uint64_t seed, double duration_s = 0.5,
                               std::size_t buckets = 20, const SimOptions& opt = {});

/// Calibration of the distance sweep used by `simulate`.
struct SweepConfig {
  double p_ref_w = 1.5e-3;
  double d_ref_m = 0.4;
  std::vector<double> distances_m = {0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65};
  double mid_range_m = 0.4;
  double sigma = 0.3;
  double segment_s = 5e-3;
  double timeout_s = 0.4;
  IemPolicy iem{};
  TaskSpec task{620800, 3104, 500, 500};
};

struct SweepPoint {
  double distance_m = 0;
  double power_w = 0;
  std::string policy;
  std::uint64_t trials = 0;
  double success_rate = 0;
};

std::vector<SweepPoint> run_sweep(const EnergyParams& params, const SweepConfig& cfg,
                                  const std::vector<ExecutionPolicy>& policies, std::uint64_t trials,
                                  std::uint64_t seed, const SimOptions& opt = {}, unsigned threads = 1);

void write_trace_csv(std::ostream& os, const std::vector<TraceSample>& samples);
void write_histogram_csv(std::ostream& os, const CycleHistogram& h);

}  // namespace intermithash
