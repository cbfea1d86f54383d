#include "intermithash/bench.hpp"
#include "intermithash/report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "intermithash/registry.hpp"
#include "json.hpp"

using namespace intermithash;

namespace {

BenchOptions quick() {
  BenchOptions o;
  o.repetitions = 3;
  o.warmup = 1;
  o.bytes_per_rep = 4096;
  return o;
}

}  // namespace

TEST(Bench, CallCountsLong) {
  EXPECT_EQ(bench_hash("md5", MsgClass::Long, quick()).compressions, 21u);
  EXPECT_EQ(bench_hash("blake2s", MsgClass::Long, quick()).compressions, 20u);
  for (const char* h : {"dm-speck128", "mmo-speck128", "mp-speck128"}) {
    auto r = bench_hash(h, MsgClass::Long, quick());
    EXPECT_EQ(r.compressions, 80u) << h;
    EXPECT_EQ(r.cipher_calls, 80u) << h;
    EXPECT_GT(r.ns_per_byte, 0.0);
    EXPECT_EQ(r.state_bytes, 64u);
  }
  // 64-bit blocks: 1280 / 8
  EXPECT_EQ(bench_hash("mp-speck64", MsgClass::Long, quick()).compressions, 160u);
}

TEST(Bench, CallCountsShort) {
  EXPECT_EQ(bench_hash("md5", MsgClass::Short, quick()).compressions, 1u);
  EXPECT_EQ(bench_hash("dm-speck128", MsgClass::Short, quick()).compressions, 1u);
  // DM consumes key-sized (16-byte) fragments, MP block-sized (8-byte) ones
  EXPECT_EQ(bench_hash("dm-speck64", MsgClass::Short, quick()).compressions, 1u);
  EXPECT_EQ(bench_hash("mp-speck64", MsgClass::Short, quick()).compressions, 2u);
}

TEST(Bench, CountsAreDeterministicAndMessageFixed) {
  auto a = bench_hash("mmo-speck128", MsgClass::Short, quick());
  auto b = bench_hash("mmo-speck128", MsgClass::Short, quick());
  EXPECT_EQ(a.compressions, b.compressions);
  EXPECT_EQ(a.cipher_calls, b.cipher_calls);
  EXPECT_EQ(bench_message("md5", MsgClass::Long, 0), bench_message("md5", MsgClass::Long, 0));
  EXPECT_NE(bench_message("md5", MsgClass::Long, 0), bench_message("md5", MsgClass::Long, 1));
  EXPECT_NE(bench_message("md5", MsgClass::Long, 0), bench_message("dm-speck128", MsgClass::Long, 0));
  EXPECT_EQ(bench_message("md5", MsgClass::Short, 0).size(), 10u);
}

TEST(Bench, UsageErrors) {
  EXPECT_THROW(bench_hash("sha1", MsgClass::Long, quick()), UsageError);
  BenchOptions none = quick();
  none.repetitions = 0;
  EXPECT_THROW(bench_hash("md5", MsgClass::Long, none), UsageError);
  EXPECT_THROW(parse_msg_class("medium"), UsageError);
  EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(Report, CsvHeaderAndRow) {
  BenchResult r{"md5", MsgClass::Long, 1.5, 21, 0, 88};
  EXPECT_EQ(render_bench({r}, ReportFormat::Csv),
            "hash,class,ns_per_byte,compressions,cipher_calls,state_bytes\nmd5,long,1.500,21,0,88\n");
  EXPECT_THROW(render_bench({}, ReportFormat::Csv), UsageError);
  EXPECT_THROW(render_bench({}, ReportFormat::Json), UsageError);
}

TEST(Report, JsonRoundTrip) {
  std::vector<BenchResult> rs = {{"md5", MsgClass::Long, 1.8061234567, 21, 0, 88},
                                 {"dm-speck128", MsgClass::Short, 7.3, 1, 1, 64}};
  const std::string text = render_bench(rs, ReportFormat::Json);
  EXPECT_EQ(nlohmann::json::parse(text)["schema"], 1);
  auto back = parse_bench_json(text);
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(back[i].hash_name, rs[i].hash_name);
    EXPECT_EQ(back[i].msg_class, rs[i].msg_class);
    EXPECT_EQ(back[i].ns_per_byte, rs[i].ns_per_byte);
    EXPECT_EQ(back[i].compressions, rs[i].compressions);
    EXPECT_EQ(back[i].cipher_calls, rs[i].cipher_calls);
    EXPECT_EQ(back[i].state_bytes, rs[i].state_bytes);
  }
  EXPECT_EQ(render_bench(back, ReportFormat::Json), text);
}

TEST(Report, EmitWritesAndFailsOnBadPath) {
  const auto path = std::filesystem::temp_directory_path() / "intermithash_report_test.csv";
  report_emit({{"md5", MsgClass::Short, 2.0, 1, 0, 88}}, ReportFormat::Csv, path.string());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str().substr(0, 5), "hash,");
  std::filesystem::remove(path);
  EXPECT_THROW(report_emit({{"md5", MsgClass::Short, 2.0, 1, 0, 88}}, ReportFormat::Csv, "/nonexistent/dir/x.csv"),
               std::runtime_error);
}

TEST(QualityReport, DocumentsAndSummary) {
  QualityPlan plan = QualityPlan::defaults(3);
  plan.tests = {"zeros", "differential", "window"};
  plan.keysets = {KeysetSpec{WindowKeys{16, 4}, 3}, KeysetSpec{ZerosKeys{2000}, 3}};
  plan.differential_pairs = 10;
  auto md5 = run_quality(*find_hash("md5"), plan);
  auto dm = run_quality(*find_hash("dm-speck128"), plan);
  EXPECT_FALSE(md5.avalanche_bias_pct.has_value());
  ASSERT_EQ(md5.keysets.size(), 2u);

  auto docs = quality_documents(dm, plan);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].test, "differential");
  EXPECT_EQ(docs[1].test, "window");
  EXPECT_EQ(docs[2].test, "zeros");
  auto z = nlohmann::json::parse(docs[2].json);
  EXPECT_EQ(z["schema"], 1);
  EXPECT_EQ(z["seed"], 3);
  EXPECT_EQ(z["collisions"], 2000 - 125);
  EXPECT_EQ(z["params"]["max_len"], 2000);
  EXPECT_TRUE(nlohmann::json::parse(docs[1].json)["distribution_bias_pct"].is_null());

  const std::string csv = quality_summary_csv({md5, dm});
  std::istringstream lines(csv);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  EXPECT_EQ(header,
            "hash,avalanche_pct,cyclic_col,cyclic_dist,twobytes_col,twobytes_dist,differential_col,"
            "sparse_col,sparse_dist,permutation_col,permutation_dist,window_col,zeros_col,zeros_dist");
  EXPECT_EQ(row2.substr(0, 24), "dm-speck128,,,,,,0,,,,,0");
  EXPECT_NE(row2.find(",1875,"), std::string::npos);
  EXPECT_THROW(run_quality(*find_hash("md5"), QualityPlan{{"bogus"}}), std::invalid_argument);
}

TEST(QualityReport, ReproducibleForSameSeed) {
  QualityPlan plan = QualityPlan::defaults(11);
  plan.tests = {"cyclic", "avalanche"};
  plan.keysets = {KeysetSpec{CyclicKeys{4, 4, 5000}, 11}};
  plan.avalanche_samples = 10000;
  plan.avalanche_msg_bytes = 8;
  auto h = find_hash("mp-speck128");
  auto a = quality_json({run_quality(*h, plan)}, plan);
  auto b = quality_json({run_quality(*h, plan)}, plan);
  EXPECT_EQ(a, b);
}

TEST(SweepReport, CsvAndJson) {
  std::vector<SweepPoint> pts = {{0.4, 1.5e-3, "iem", 10, 0.9}};
  EXPECT_EQ(render_sweep(pts, EnergyParams{}, SweepConfig{}, 0, ReportFormat::Csv),
            "distance_m,power_w,policy,trials,success_rate\n0.400,1.500000e-03,iem,10,0.9000\n");
  auto j = nlohmann::json::parse(render_sweep(pts, EnergyParams{}, SweepConfig{}, 5, ReportFormat::Json));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["points"][0]["success_rate"], 0.9);
  EXPECT_EQ(j["params"]["f_cpu_hz"], 8e6);
  EXPECT_THROW(render_sweep({}, EnergyParams{}, SweepConfig{}, 0, ReportFormat::Csv), UsageError);
}
