#include "intermithash/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "intermithash/parallel.hpp"
#include "intermithash/rng.hpp"

namespace intermithash {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

void EnergyParams::validate() const {
  require(finite_all({capacitance_f, v_on, v_off, v_max, p_load_w, p_sleep_w, p_leak_w, f_cpu_hz}),
          "energy params: non-finite value");
  require(capacitance_f > 0, "energy params: capacitance must be > 0");
  require(v_off > 0 && v_on >= v_off, "energy params: need v_on >= v_off > 0");
  require(v_max >= v_on, "energy params: need v_max >= v_on");
  require(p_load_w > p_sleep_w && p_sleep_w >= 0, "energy params: need p_load > p_sleep >= 0");
  require(p_leak_w >= 0, "energy params: p_leak must be >= 0");
  require(f_cpu_hz > 0, "energy params: f_cpu must be > 0");
}

double EnergyParams::energy_at(double v) const {
  const double half_c = 0.5 * capacitance_f;
  if (v <= v_off) return half_c * v * v;
  return half_c * (v_off * v_off + (v - v_off) * (v - v_off));
}

double EnergyParams::voltage_at(double e) const {
  const double half_c = 0.5 * capacitance_f;
  const double e_off = half_c * v_off * v_off;
  if (e <= e_off) return std::sqrt(std::max(0.0, e) / half_c);
  return v_off + std::sqrt((e - e_off) / half_c);
}

EnergyParams parse_params(const std::string& text) {
  static const char* const kKeys[] = {"capacitance_f", "v_on",      "v_off",     "v_max",
                                      "p_load_w",      "p_sleep_w", "p_leak_w",  "f_cpu_hz"};
  std::map<std::string, double> values;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("params line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
      throw std::invalid_argument("params line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size())
      throw std::invalid_argument("params line " + std::to_string(lineno) + ": bad number '" + val + "'");
    if (!values.emplace(key, v).second)
      throw std::invalid_argument("params: duplicate key '" + key + "'");
  }
  for (const char* k : kKeys)
    if (!values.count(k)) throw std::invalid_argument(std::string("params: missing key '") + k + "'");
  EnergyParams p;
  p.capacitance_f = values["capacitance_f"];
  p.v_on = values["v_on"];
  p.v_off = values["v_off"];
  p.v_max = values["v_max"];
  p.p_load_w = values["p_load_w"];
  p.p_sleep_w = values["p_sleep_w"];
  p.p_leak_w = values["p_leak_w"];
  p.f_cpu_hz = values["f_cpu_hz"];
  p.validate();
  return p;
}

EnergyParams load_params(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open params file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_params(ss.str());
}

std::string format_params(const EnergyParams& p) {
  std::string out;
  char buf[96];
  auto put = [&](const char* k, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", k, v);
    out += buf;
  };
  put("capacitance_f", p.capacitance_f);
  put("v_on", p.v_on);
  put("v_off", p.v_off);
  put("v_max", p.v_max);
  put("p_load_w", p.p_load_w);
  put("p_sleep_w", p.p_sleep_w);
  put("p_leak_w", p.p_leak_w);
  put("f_cpu_hz", p.f_cpu_hz);
  return out;
}

double energy_per_ipc(const EnergyParams& p) {
  const double dv = p.v_on - p.v_off;
  return 0.5 * p.capacitance_f * dv * dv;
}

std::uint64_t cycles_per_ipc(const EnergyParams& p) {
  require(p.p_load_w > 0, "cycles_per_ipc: p_load must be > 0");
  return static_cast<std::uint64_t>(std::floor(energy_per_ipc(p) / p.p_load_w * p.f_cpu_hz));
}

double distance_to_power(double d_m, double p_ref_w, double d_ref_m) {
  require(d_m > 0 && std::isfinite(d_m), "distance_to_power: distance must be > 0");
  require(d_ref_m > 0 && p_ref_w >= 0, "distance_to_power: need d_ref > 0 and p_ref >= 0");
  const double r = d_ref_m / d_m;
  return p_ref_w * r * r;
}

HarvestProfile::HarvestProfile(Kind kind) : kind_(std::move(kind)) {
  struct Check {
    void operator()(const ConstantHarvest& k) const {
      require(std::isfinite(k.power_w) && k.power_w >= 0, "harvest: power must be finite and >= 0");
    }
    void operator()(const NoisyHarvest& k) const {
      require(finite_all({k.mean_w, k.sigma, k.segment_s}) && k.mean_w >= 0 && k.sigma >= 0,
              "harvest: noisy mean/sigma must be finite and >= 0");
      require(k.segment_s > 0, "harvest: segment must be > 0");
    }
    void operator()(const DistanceHarvest& k) const {
      distance_to_power(k.d_m, k.p_ref_w, k.d_ref_m);
    }
  };
  std::visit(Check{}, kind_);
}

double HarvestProfile::power_at(double t_s) const {
  struct At {
    double t;
    double operator()(const ConstantHarvest& k) const { return k.power_w; }
    double operator()(const NoisyHarvest& k) const {
      const auto seg = static_cast<std::uint64_t>(std::max(0.0, std::floor(t / k.segment_s)));
      Rng rng = Rng::split(k.seed, seg);
      return k.mean_w * std::max(0.0, 1.0 + k.sigma * rng.normal());
    }
    double operator()(const DistanceHarvest& k) const {
      return distance_to_power(k.d_m, k.p_ref_w, k.d_ref_m);
    }
  };
  return std::visit(At{t_s}, kind_);
}

HarvestProfile HarvestProfile::reseeded(std::uint64_t seed) const {
  if (const auto* n = std::get_if<NoisyHarvest>(&kind_)) {
    NoisyHarvest copy = *n;
    copy.seed = seed;
    return HarvestProfile(copy);
  }
  return *this;
}

std::string to_string(DeviceState s) {
  switch (s) {
    case DeviceState::Off: return "off";
    case DeviceState::Active: return "active";
    case DeviceState::Sleep: return "sleep";
  }
  return "?";
}

std::string policy_name(const ExecutionPolicy& p) {
  return std::holds_alternative<IemPolicy>(p) ? "iem" : "continuous";
}

namespace {

// Fixed-step integrator over stored energy. One instance runs one simulation.
class Engine {
 public:
  Engine(const EnergyParams& params, const HarvestProfile& profile, const SimOptions& opt)
      : p_(params), profile_(profile), opt_(opt) {
    p_.validate();
    require(std::isfinite(opt.dt_s) && opt.dt_s > 0, "simulation: dt must be > 0");
    require(std::isfinite(opt.trace_interval_s) && opt.trace_interval_s >= 0,
            "simulation: trace interval must be >= 0");
    require(std::isfinite(opt.v_initial) && opt.v_initial >= 0, "simulation: bad initial voltage");
    e_on_ = p_.energy_at(p_.v_on);
    e_off_ = p_.energy_at(p_.v_off);
    e_max_ = p_.energy_at(p_.v_max);
    energy_ = std::min(p_.energy_at(opt.v_initial), e_max_);
    initial_energy_ = energy_;
    cycles_per_step_ = p_.f_cpu_hz * opt.dt_s;
    if (opt.trace_interval_s > 0)
      trace_every_ = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(opt.trace_interval_s / opt.dt_s)));
  }

  void set_task(const TaskSpec& task, const ExecutionPolicy& policy) {
    task_ = task;
    total_ = static_cast<double>(task.total_cycles);
    if (const auto* iem = std::get_if<IemPolicy>(&policy)) {
      require(std::isfinite(iem->v_guard) && std::isfinite(iem->v_wake), "iem: non-finite thresholds");
      require(p_.v_off < iem->v_guard && iem->v_guard < iem->v_wake && iem->v_wake <= p_.v_on,
              "iem: need v_off < v_guard < v_wake <= v_on");
      require(task.checkpoint_granularity_cycles <= task.total_cycles,
              "iem: checkpoint granularity exceeds task length");
      iem_ = true;
      e_guard_ = p_.energy_at(iem->v_guard);
      e_wake_ = p_.energy_at(iem->v_wake);
    }
  }

  void set_endless() { total_ = std::numeric_limits<double>::infinity(); }

  // Runs until the task completes or `duration_s` elapses.
  void run(double duration_s) {
    require(std::isfinite(duration_s) && duration_s > 0, "simulation: duration must be > 0");
    const auto steps = static_cast<std::uint64_t>(std::ceil(duration_s / opt_.dt_s));
    sample();
    for (step_ = 1; step_ <= steps && !completed_; ++step_) {
      t_ = static_cast<double>(step_) * opt_.dt_s;
      tick();
      if (trace_every_ && step_ % trace_every_ == 0) sample();
    }
    if (trace_every_ && !trace_.empty() && trace_.back().t_s != t_) sample();
    if (state_ == DeviceState::Active) close_ipc(!completed_);
  }

  TraceResult trace_result() {
    TraceResult r;
    r.ipcs = std::move(ipcs_);
    r.samples = std::move(trace_);
    r.harvested_j = harvested_;
    r.final_energy_j = energy_;
    r.initial_energy_j = initial_energy_;
    return r;
  }

  SimOutcome outcome() {
    SimOutcome o;
    o.completed = completed_;
    o.wall_time_s = t_;
    o.active_cycles_executed = static_cast<std::uint64_t>(active_cycles_);
    o.restarts = restarts_;
    o.checkpoints = checkpoints_;
    o.ipc_list = std::move(ipcs_);
    o.trace = std::move(trace_);
    return o;
  }

 private:
  enum class Phase { Work, Checkpoint, Restore };

  double harvest_power() {
    // cache the current noise segment; power_at is pure so this is exact
    if (t_ >= seg_end_ || t_ < seg_start_) {
      seg_power_ = profile_.power_at(t_);
      if (const auto* n = std::get_if<NoisyHarvest>(&profile_.kind())) {
        const double idx = std::floor(t_ / n->segment_s);
        seg_start_ = idx * n->segment_s;
        seg_end_ = (idx + 1) * n->segment_s;
      } else {
        seg_start_ = -std::numeric_limits<double>::infinity();
        seg_end_ = std::numeric_limits<double>::infinity();
      }
    }
    return seg_power_;
  }

  void tick() {
    // power drawn over [t - dt, t] at the state held during that step
    const double p_in = harvest_power();
    const double p_out = state_ == DeviceState::Active ? p_.p_load_w
                         : state_ == DeviceState::Sleep ? p_.p_sleep_w
                                                        : p_.p_leak_w;
    harvested_ += p_in * opt_.dt_s;
    energy_ = std::clamp(energy_ + (p_in - p_out) * opt_.dt_s, 0.0, e_max_);

    switch (state_) {
      case DeviceState::Off:
        if (energy_ >= e_on_) power_on();
        break;
      case DeviceState::Active:
        if (energy_ < e_off_) {
          brownout();
        } else {
          ipc_cycles_ += cycles_per_step_;
          active_cycles_ += cycles_per_step_;
          advance(cycles_per_step_);
        }
        break;
      case DeviceState::Sleep:
        if (energy_ < e_off_) {
          state_ = DeviceState::Off;
        } else if (energy_ >= e_wake_) {
          start_ipc();
          begin_restore();
        }
        break;
    }
  }

  void start_ipc() {
    state_ = DeviceState::Active;
    ipc_start_ = t_;
    ipc_cycles_ = 0;
  }

  void close_ipc(bool truncated = false) {
    ipcs_.push_back({ipc_start_, t_, static_cast<std::uint64_t>(std::floor(ipc_cycles_ + 1e-9)), truncated});
  }

  void power_on() {
    start_ipc();
    if (iem_ && committed_ > 0) {
      begin_restore();
    } else {
      begin_work();
    }
  }

  void begin_restore() {
    phase_ = Phase::Restore;
    phase_left_ = static_cast<double>(task_.restore_cost_cycles);
    if (phase_left_ <= 0) begin_work();
  }

  void begin_work() {
    phase_ = Phase::Work;
    next_check_ = progress_ + static_cast<double>(task_.checkpoint_granularity_cycles);
  }

  void brownout() {
    close_ipc();
    state_ = DeviceState::Off;
    ++restarts_;
    progress_ = iem_ ? committed_ : 0.0;
  }

  void commit_and_sleep() {
    committed_ = progress_;
    ++checkpoints_;
    close_ipc();
    state_ = DeviceState::Sleep;
  }

  void advance(double c) {
    while (c > 0 && state_ == DeviceState::Active && !completed_) {
      if (phase_ != Phase::Work) {
        const double use = std::min(c, phase_left_);
        phase_left_ -= use;
        c -= use;
        if (phase_left_ > 1e-9) return;
        if (phase_ == Phase::Restore) {
          begin_work();
        } else {
          commit_and_sleep();
          return;
        }
        continue;
      }
      double room = total_ - progress_;
      if (iem_ && task_.checkpoint_granularity_cycles > 0) room = std::min(room, next_check_ - progress_);
      const double use = std::min(c, std::max(room, 0.0));
      progress_ += use;
      c -= use;
      if (progress_ >= total_ - 1e-9) {
        completed_ = true;
        return;
      }
      if (!iem_) return;
      const bool boundary = task_.checkpoint_granularity_cycles == 0 || progress_ >= next_check_ - 1e-9;
      if (!boundary) return;
      if (energy_ <= e_guard_) {
        phase_ = Phase::Checkpoint;
        phase_left_ = static_cast<double>(task_.checkpoint_cost_cycles);
        if (phase_left_ <= 0) {
          commit_and_sleep();
          return;
        }
      } else {
        next_check_ += static_cast<double>(task_.checkpoint_granularity_cycles);
      }
      if (task_.checkpoint_granularity_cycles == 0) return;
    }
  }

  void sample() {
    trace_.push_back({t_, p_.voltage_at(energy_), state_, static_cast<std::uint64_t>(std::floor(progress_ + 1e-9))});
  }

  EnergyParams p_;
  const HarvestProfile& profile_;
  SimOptions opt_;
  double e_on_ = 0, e_off_ = 0, e_max_ = 0, e_guard_ = 0, e_wake_ = 0;
  double energy_ = 0, initial_energy_ = 0, harvested_ = 0;
  double cycles_per_step_ = 0;
  std::uint64_t step_ = 0, trace_every_ = 0;
  double t_ = 0;
  double seg_start_ = 1, seg_end_ = 0, seg_power_ = 0;
  DeviceState state_ = DeviceState::Off;

  TaskSpec task_{};
  bool iem_ = false;
  double total_ = 0;
  double progress_ = 0, committed_ = 0, next_check_ = 0;
  Phase phase_ = Phase::Work;
  double phase_left_ = 0;
  bool completed_ = false;

  double ipc_start_ = 0, ipc_cycles_ = 0, active_cycles_ = 0;
  std::uint64_t restarts_ = 0, checkpoints_ = 0;
  std::vector<IpcRecord> ipcs_;
  std::vector<TraceSample> trace_;
};

}  // namespace

TraceResult simulate_trace(const EnergyParams& params, const HarvestProfile& profile,
                           double duration_s, const SimOptions& opt) {
  Engine e(params, profile, opt);
  e.set_endless();
  e.run(duration_s);
  return e.trace_result();
}

SimOutcome run_task(const EnergyParams& params, const HarvestProfile& profile, const TaskSpec& task,
                    const ExecutionPolicy& policy, double timeout_s, const SimOptions& opt) {
  Engine e(params, profile, opt);
  e.set_task(task, policy);
  if (task.total_cycles == 0) {
    SimOutcome o;
    o.completed = true;
    return o;
  }
  e.run(timeout_s);
  return e.outcome();
}

double success_rate(const EnergyParams& params, const HarvestProfile& profile, const TaskSpec& task,
                    const ExecutionPolicy& policy, double timeout_s, std::uint64_t trials,
                    std::uint64_t seed, const SimOptions& opt, unsigned threads) {
  require(trials >= 1, "success_rate: trials must be >= 1");
  std::vector<std::uint64_t> wins(std::max(1u, threads), 0);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t t = b; t < e; ++t) {
      const auto trial_profile = profile.reseeded(Rng::split(seed, t)());
      if (run_task(params, trial_profile, task, policy, timeout_s, opt).completed) ++wins[w];
    }
  });
  std::uint64_t total = 0;
  for (auto x : wins) total += x;
  return static_cast<double>(total) / static_cast<double>(trials);
}

double CycleHistogram::mean() const {
  if (samples.empty()) return 0.0;
  double s = 0;
  for (auto x : samples) s += static_cast<double>(x);
  return s / static_cast<double>(samples.size());
}

CycleHistogram cycle_histogram(const EnergyParams& params, const HarvestProfile& profile,
                               std::uint64_t trials, std::uint64_t seed, double duration_s,
                               std::size_t buckets, const SimOptions& opt) {
  require(trials >= 100, "cycle_histogram: trials must be >= 100");
  require(buckets >= 1, "cycle_histogram: need at least one bucket");
  CycleHistogram h;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto tr = simulate_trace(params, profile.reseeded(Rng::split(seed, t)()), duration_s, opt);
    for (const auto& ipc : tr.ipcs)
      if (!ipc.truncated) h.samples.push_back(ipc.cycles);
  }
  if (h.samples.empty()) return h;
  const auto [lo_it, hi_it] = std::minmax_element(h.samples.begin(), h.samples.end());
  const double lo = static_cast<double>(*lo_it), hi = static_cast<double>(*hi_it);
  if (lo == hi) {
    h.buckets.push_back({lo, hi, h.samples.size()});
    return h;
  }
  const double width = (hi - lo) / static_cast<double>(buckets);
  h.buckets.resize(buckets);
  for (std::size_t i = 0; i < buckets; ++i) {
    h.buckets[i].low = lo + width * static_cast<double>(i);
    h.buckets[i].high = i + 1 == buckets ? hi : lo + width * static_cast<double>(i + 1);
  }
  for (auto x : h.samples) {
    auto i = static_cast<std::size_t>((static_cast<double>(x) - lo) / width);
    ++h.buckets[std::min(i, buckets - 1)].count;
  }
  return h;
}

std::vector<SweepPoint> run_sweep(const EnergyParams& params, const SweepConfig& cfg,
                                  const std::vector<ExecutionPolicy>& policies, std::uint64_t trials,
                                  std::uint64_t seed, const SimOptions& opt, unsigned threads) {
  std::vector<SweepPoint> out;
  for (double d : cfg.distances_m) {
    const double power = distance_to_power(d, cfg.p_ref_w, cfg.d_ref_m);
    const HarvestProfile profile(NoisyHarvest{power, cfg.sigma, 0, cfg.segment_s});
    for (const auto& pol : policies) {
      SweepPoint pt;
      pt.distance_m = d;
      pt.power_w = power;
      pt.policy = policy_name(pol);
      pt.trials = trials;
      pt.success_rate = success_rate(params, profile, cfg.task, pol, cfg.timeout_s, trials, seed, opt, threads);
      out.push_back(pt);
    }
  }
  return out;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceSample>& samples) {
  os << "t_s,v_cap,state,cycles_done\n";
  char buf[128];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.9g,%.6f,%s,%llu\n", s.t_s, s.v_cap, to_string(s.state).c_str(),
                  static_cast<unsigned long long>(s.cycles_done));
    os << buf;
  }
}

void write_histogram_csv(std::ostream& os, const CycleHistogram& h) {
  os << "bucket_low,bucket_high,count\n";
  char buf[128];
  for (const auto& b : h.buckets) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f,%llu\n", b.low, b.high, static_cast<unsigned long long>(b.count));
    os << buf;
  }
}

}  // namespace intermithash
