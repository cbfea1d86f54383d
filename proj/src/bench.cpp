#include "intermithash/bench.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "intermithash/registry.hpp"
#include "intermithash/rng.hpp"

namespace intermithash {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::shared_ptr<const HashAlgorithm> lookup(const std::string& name) {
  try {
    return find_hash(name);
  } catch (const UnknownHashError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

std::size_t msg_class_bytes(MsgClass c) { return c == MsgClass::Short ? 10 : 1280; }

std::string to_string(MsgClass c) { return c == MsgClass::Short ? "short" : "long"; }

MsgClass parse_msg_class(const std::string& s) {
  if (s == "short") return MsgClass::Short;
  if (s == "long") return MsgClass::Long;
  throw UsageError("unknown message class: " + s);
}

std::vector<std::uint8_t> bench_message(const std::string& hash_name, MsgClass msg_class,
                                        std::uint64_t seed) {
  std::vector<std::uint8_t> msg(msg_class_bytes(msg_class));
  Rng rng = Rng::split(seed, fnv1a(hash_name + "/" + to_string(msg_class)));
  rng.fill(msg.data(), msg.size());
  return msg;
}

BenchResult bench_hash(const std::string& hash_name, MsgClass msg_class, const BenchOptions& opt) {
  if (opt.repetitions == 0) throw UsageError("bench: repetitions must be >= 1");
  const auto hash = lookup(hash_name);
  const auto msg = bench_message(hash_name, msg_class, opt.seed);

  BenchResult r;
  r.hash_name = hash_name;
  r.msg_class = msg_class;
  r.state_bytes = hash->state_bytes();
  auto s = hash->stream();
  s->update(msg);
  (void)s->finish();
  r.compressions = s->counters().compressions;
  r.cipher_calls = s->counters().cipher_calls;

  const std::size_t inner = std::max<std::size_t>(1, opt.bytes_per_rep / msg.size());
  std::vector<std::uint8_t> out(hash->digest_bytes());
  volatile std::uint8_t sink = 0;
  auto rep = [&] {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < inner; ++i) {
      hash->hash(msg, out);
      sink = sink ^ out[0];
    }
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::nano>(t1 - t0).count() /
           static_cast<double>(inner * msg.size());
  };
  for (unsigned i = 0; i < opt.warmup; ++i) rep();
  std::vector<double> samples(opt.repetitions);
  for (auto& x : samples) x = rep();
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  r.ns_per_byte = n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  // a clock that did not tick still reports a positive figure
  r.ns_per_byte = std::max(r.ns_per_byte, 1e-3);
  return r;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw UsageError("unknown format: " + s);
}

std::string render_bench(const std::vector<BenchResult>& results, ReportFormat format) {
  if (results.empty()) throw UsageError("no benchmark results to report");
  if (format == ReportFormat::Csv) {
    std::string out = "hash,class,ns_per_byte,compressions,cipher_calls,state_bytes\n";
    char buf[64];
    for (const auto& r : results) {
      std::snprintf(buf, sizeof buf, "%.3f", r.ns_per_byte);
      out += r.hash_name + "," + to_string(r.msg_class) + "," + buf + "," + std::to_string(r.compressions) +
             "," + std::to_string(r.cipher_calls) + "," + std::to_string(r.state_bytes) + "\n";
    }
    return out;
  }
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json j;
    j["hash"] = r.hash_name;
    j["class"] = to_string(r.msg_class);
    j["ns_per_byte"] = r.ns_per_byte;
    j["compressions"] = r.compressions;
    j["cipher_calls"] = r.cipher_calls;
    j["state_bytes"] = r.state_bytes;
    doc["results"].push_back(j);
  }
  return doc.dump(2) + "\n";
}

void report_emit(const std::vector<BenchResult>& results, ReportFormat format, const std::string& path) {
  const std::string text = render_bench(results, format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<BenchResult> parse_bench_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (doc.value("schema", 0) != 1) throw std::invalid_argument("bench report: unsupported schema");
  std::vector<BenchResult> out;
  for (const auto& j : doc.at("results")) {
    BenchResult r;
    r.hash_name = j.at("hash").get<std::string>();
    r.msg_class = parse_msg_class(j.at("class").get<std::string>());
    r.ns_per_byte = j.at("ns_per_byte").get<double>();
    r.compressions = j.at("compressions").get<std::uint64_t>();
    r.cipher_calls = j.at("cipher_calls").get<std::uint64_t>();
    r.state_bytes = j.at("state_bytes").get<std::size_t>();
    out.push_back(r);
  }
  return out;
}

}  // namespace intermithash
