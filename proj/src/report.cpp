#include "intermithash/report.hpp"

#include "json.hpp"

#include <cstdio>
#include <map>

namespace intermithash {
namespace {

using Json = nlohmann::ordered_json;

Json keyset_params(const KeysetSpec& spec) {
  struct P {
    Json operator()(const CyclicKeys& k) const {
      return {{"pattern_bytes", k.pattern_bytes}, {"repeats", k.repeats}, {"sample_count", k.sample_count}};
    }
    Json operator()(const TwoBytesKeys& k) const { return {{"max_len", k.max_len}}; }
    Json operator()(const SparseKeys& k) const {
      return {{"msg_bits", k.msg_bits}, {"max_set_bits", k.max_set_bits}};
    }
    Json operator()(const PermutationKeys& k) const {
      Json blocks = Json::array();
      for (const auto& b : k.blocks) blocks.push_back(to_hex(b));
      return {{"blocks", blocks}, {"max_blocks", k.max_blocks}};
    }
    Json operator()(const WindowKeys& k) const {
      return {{"key_bits", k.key_bits}, {"window_bits", k.window_bits}};
    }
    Json operator()(const ZerosKeys& k) const { return {{"max_len", k.max_len}}; }
  };
  return std::visit(P{}, spec.kind);
}

Json header(const std::string& hash, const std::string& test, std::uint64_t seed) {
  Json j;
  j["schema"] = 1;
  j["hash"] = hash;
  j["test"] = test;
  j["seed"] = seed;
  return j;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::vector<Json> documents(const QualityReport& r, const QualityPlan& plan) {
  std::map<std::string, Json> by_test;
  if (r.avalanche_bias_pct) {
    Json j = header(r.hash_name, "avalanche", plan.seed);
    j["params"] = {{"msg_len_bytes", plan.avalanche_msg_bytes}, {"samples", plan.avalanche_samples}};
    j["avalanche_bias_pct"] = *r.avalanche_bias_pct;
    by_test["avalanche"] = j;
  }
  if (r.differential) {
    Json j = header(r.hash_name, "differential", plan.seed);
    j["params"] = {{"key_bytes", plan.differential_key_bytes},
                   {"n_bits", r.differential->n_bits},
                   {"pairs_per_subset", plan.differential_pairs}};
    j["pairs"] = r.differential->pairs;
    j["collisions"] = r.differential->collisions;
    by_test["differential"] = j;
  }
  for (const auto& k : r.keysets) {
    Json j = header(r.hash_name, k.test, plan.seed);
    for (const auto& spec : plan.keysets)
      if (keyset_name(spec) == k.test) j["params"] = keyset_params(spec);
    j["sample_count"] = k.sample_count;
    j["collisions"] = k.collisions;
    j["distribution_bias_pct"] = k.distribution_bias_pct ? Json(*k.distribution_bias_pct) : Json(nullptr);
    by_test[k.test] = j;
  }
  std::vector<Json> out;
  for (const auto& t : quality_test_names())
    if (auto it = by_test.find(t); it != by_test.end()) out.push_back(it->second);
  return out;
}

}  // namespace

std::vector<QualityDocument> quality_documents(const QualityReport& report, const QualityPlan& plan) {
  std::vector<QualityDocument> out;
  for (const auto& j : documents(report, plan))
    out.push_back({report.hash_name, j["test"].get<std::string>(), j.dump(2) + "\n"});
  return out;
}

std::string quality_json(const std::vector<QualityReport>& reports, const QualityPlan& plan) {
  Json all = Json::array();
  for (const auto& r : reports)
    for (auto& j : documents(r, plan)) all.push_back(std::move(j));
  return all.dump(2) + "\n";
}

std::string quality_summary_csv(const std::vector<QualityReport>& reports) {
  std::string out = "hash,avalanche_pct";
  for (const auto& t : quality_test_names()) {
    if (t == "avalanche") continue;
    out += "," + t + "_col";
    if (t != "differential" && t != "window") out += "," + t + "_dist";
  }
  out += "\n";
  for (const auto& r : reports) {
    out += r.hash_name + ",";
    if (r.avalanche_bias_pct) out += fmt(*r.avalanche_bias_pct);
    for (const auto& t : quality_test_names()) {
      if (t == "avalanche") continue;
      const bool has_dist = t != "differential" && t != "window";
      std::string col, dist;
      if (t == "differential" && r.differential) col = std::to_string(r.differential->collisions);
      for (const auto& k : r.keysets) {
        if (k.test != t) continue;
        col = std::to_string(k.collisions);
        if (k.distribution_bias_pct) dist = fmt(*k.distribution_bias_pct);
      }
      out += "," + col;
      if (has_dist) out += "," + dist;
    }
    out += "\n";
  }
  return out;
}

std::string render_sweep(const std::vector<SweepPoint>& points, const EnergyParams& params,
                         const SweepConfig& cfg, std::uint64_t seed, ReportFormat format) {
  if (points.empty()) throw UsageError("no sweep points to report");
  if (format == ReportFormat::Csv) {
    std::string out = "distance_m,power_w,policy,trials,success_rate\n";
    char buf[160];
    for (const auto& p : points) {
      std::snprintf(buf, sizeof buf, "%.3f,%.6e,%s,%llu,%.4f\n", p.distance_m, p.power_w, p.policy.c_str(),
                    static_cast<unsigned long long>(p.trials), p.success_rate);
      out += buf;
    }
    return out;
  }
  Json doc;
  doc["schema"] = 1;
  doc["seed"] = seed;
  doc["params"] = {{"capacitance_f", params.capacitance_f}, {"v_on", params.v_on},
                   {"v_off", params.v_off},                 {"v_max", params.v_max},
                   {"p_load_w", params.p_load_w},           {"p_sleep_w", params.p_sleep_w},
                   {"p_leak_w", params.p_leak_w},           {"f_cpu_hz", params.f_cpu_hz}};
  doc["sweep"] = {{"p_ref_w", cfg.p_ref_w},
                  {"d_ref_m", cfg.d_ref_m},
                  {"sigma", cfg.sigma},
                  {"segment_s", cfg.segment_s},
                  {"timeout_s", cfg.timeout_s},
                  {"v_guard", cfg.iem.v_guard},
                  {"v_wake", cfg.iem.v_wake},
                  {"task",
                   {{"total_cycles", cfg.task.total_cycles},
                    {"checkpoint_granularity_cycles", cfg.task.checkpoint_granularity_cycles},
                    {"checkpoint_cost_cycles", cfg.task.checkpoint_cost_cycles},
                    {"restore_cost_cycles", cfg.task.restore_cost_cycles}}}};
  doc["points"] = Json::array();
  for (const auto& p : points)
    doc["points"].push_back({{"distance_m", p.distance_m},
                             {"power_w", p.power_w},
                             {"policy", p.policy},
                             {"trials", p.trials},
                             {"success_rate", p.success_rate}});
  return doc.dump(2) + "\n";
}

}  // namespace intermithash
