#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& stdin_text = "") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto input = dir / "intermithash_cli_in.bin";
  {
    std::ofstream f(input, std::ios::binary);
    f << stdin_text;
  }
  const std::string cmd =
      std::string(INTERMITHASH_CLI) + " " + args + " < " + input.string() + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliHash, Md5EmptyInput) {
  auto r = run("hash md5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "d41d8cd98f00b204e9800998ecf8427e\n");
}

TEST(CliHash, Blake2sAbc) {
  auto r = run("hash blake2s", "abc");
  EXPECT_EQ(r.out, "508c5e8c327c14e2e1a72ba34eeb452f37458b209ed63a294d999b4c86675982\n");
}

TEST(CliHash, PaddingAliasing) {
  auto ten = run("hash dm-speck128", std::string(10, '\0'));
  auto sixteen = run("hash dm-speck128", std::string(16, '\0'));
  EXPECT_EQ(ten.code, 0);
  EXPECT_EQ(ten.out, sixteen.out);
  EXPECT_EQ(ten.out.size(), 33u);
}

TEST(CliHash, FileArgumentMatchesStdin) {
  const auto path = std::filesystem::temp_directory_path() / "intermithash_cli_file.bin";
  std::ofstream(path, std::ios::binary) << std::string(100000, 'x');
  EXPECT_EQ(run("hash mp-speck128 " + path.string()).out, run("hash mp-speck128", std::string(100000, 'x')).out);
  std::filesystem::remove(path);
}

TEST(CliExitCodes, UsageErrorsAreTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("hash sha1").code, 2);
  EXPECT_EQ(run("hash").code, 2);
  EXPECT_EQ(run("bench --class tiny").code, 2);
  EXPECT_EQ(run("bench --reps 0").code, 2);
  EXPECT_EQ(run("bench --hash nope --reps 1").code, 2);
  EXPECT_EQ(run("bench --format xml").code, 2);
  EXPECT_EQ(run("quality --test nope").code, 2);
  EXPECT_EQ(run("quality --hash nope --test zeros").code, 2);
  EXPECT_EQ(run("simulate --policy sometimes").code, 2);
  EXPECT_EQ(run("simulate --trials 0").code, 2);
  EXPECT_EQ(run("simulate --trials 5 --histogram /tmp/h.csv").code, 2);
  EXPECT_EQ(run("simulate --v-guard 1.0 --trials 1 --distances 0.4").code, 2);
}

TEST(CliExitCodes, RuntimeFailuresAreOne) {
  EXPECT_EQ(run("hash md5 /nonexistent/input").code, 1);
  EXPECT_EQ(run("bench --reps 1 --warmup 0 --hash md5 --out /nonexistent/dir/b.csv").code, 1);
  EXPECT_EQ(run("simulate --params /nonexistent.params").code, 1);
}

TEST(CliExitCodes, HelpIsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(CliSeed, EnvironmentOverridesDefault) {
  const std::string args = "simulate --trials 20 --distances 0.4 --policy continuous --format csv";
  auto base = run(args);
  auto same = run("--help");
  (void)same;
  ASSERT_EQ(setenv("INTERMITHASH_SEED", "12345", 1), 0);
  auto env = run(args);
  auto flag = run(args + " --seed 12345");
  ASSERT_EQ(setenv("INTERMITHASH_SEED", "junk", 1), 0);
  auto bad = run(args);
  unsetenv("INTERMITHASH_SEED");
  EXPECT_EQ(base.code, 0);
  EXPECT_EQ(env.out, flag.out);
  EXPECT_NE(env.out, base.out);
  EXPECT_EQ(bad.code, 2);
}

TEST(CliBench, CsvShape) {
  auto r = run("bench --class long --reps 3 --warmup 1 --format csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "hash,class,ns_per_byte,compressions,cipher_calls,state_bytes");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.rfind("md5,", 0) == 0) EXPECT_NE(line.find(",21,0,"), std::string::npos);
    if (line.rfind("dm-speck128,", 0) == 0) EXPECT_NE(line.find(",80,80,"), std::string::npos);
  }
  EXPECT_EQ(rows, 5);
}

TEST(CliQuality, OutDirectoryLayout) {
  const auto dir = std::filesystem::temp_directory_path() / "intermithash_cli_quality";
  std::filesystem::remove_all(dir);
  auto r = run("quality --hash md5 dm-speck128 --test zeros differential --out " + dir.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "md5.zeros.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "dm-speck128.differential.json"));
  const std::string summary = slurp(dir / "summary.csv");
  EXPECT_NE(summary.find("dm-speck128,"), std::string::npos);
  EXPECT_NE(slurp(dir / "dm-speck128.zeros.json").find("\"collisions\": 61440"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CliSimulate, TraceAndHistogramFiles) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto trace = dir / "intermithash_trace.csv", hist = dir / "intermithash_hist.csv";
  auto r = run("simulate --trials 100 --distances 0.4,0.6 --trace " + trace.string() + " --histogram " +
               hist.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(slurp(trace).substr(0, 27), "t_s,v_cap,state,cycles_done");
  EXPECT_EQ(slurp(hist).substr(0, 29), "bucket_low,bucket_high,count\n");
  std::filesystem::remove(trace);
  std::filesystem::remove(hist);
}
