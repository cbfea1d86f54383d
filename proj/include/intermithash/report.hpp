#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "intermithash/bench.hpp"
#include "intermithash/energy.hpp"
#include "intermithash/quality.hpp"

namespace intermithash {

struct QualityDocument {
  std::string hash;
  std::string test;
  /// `{"schema":1,"hash":...,"test":...,"seed":...,"params":{...},...}` with a trailing newline.
  std::string json;
};

/// One document per test that ran, in quality_test_names() order.
std::vector<QualityDocument> quality_documents(const QualityReport& report, const QualityPlan& plan);

/// One row per hash; per-test collision (`_col`) and distribution (`_dist`)
/// columns. Cells for tests that did not run, or have no distribution, are empty.
std::string quality_summary_csv(const std::vector<QualityReport>& reports);

/// All documents as a single JSON array.
std::string quality_json(const std::vector<QualityReport>& reports, const QualityPlan& plan);

/// JSON `{"schema":1,"seed":..,"params":{..},"sweep":{..},"points":[..]}` or CSV
/// `distance_m,power_w,policy,trials,success_rate`.
std::string render_sweep(const std::vector<SweepPoint>& points, const EnergyParams& params,
                         const SweepConfig& cfg, std::uint64_t seed, ReportFormat format);

}  // namespace intermithash
