#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace intermithash {

/// Bad invocation: unknown names, empty inputs, malformed flags. CLI exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MsgClass { Short, Long };

std::size_t msg_class_bytes(MsgClass c);  // 10 or 1280
std::string to_string(MsgClass c);        // "short" / "long"
MsgClass parse_msg_class(const std::string& s);

struct BenchResult {
  std::string hash_name;
  MsgClass msg_class = MsgClass::Short;
  double ns_per_byte = 0;
  std::uint64_t compressions = 0;
  std::uint64_t cipher_calls = 0;
  std::size_t state_bytes = 0;
};

struct BenchOptions {
  unsigned repetitions = 30;
  unsigned warmup = 5;
  std::uint64_t seed = 0;
  /// Each repetition hashes the message back to back until this many bytes.
  std::size_t bytes_per_rep = 64 * 1024;
};

/// Median ns/byte over the repetitions, plus call counts from hashing the
/// message once. Throws UsageError for unknown names or zero repetitions.
BenchResult bench_hash(const std::string& hash_name, MsgClass msg_class, const BenchOptions& opt = {});

/// The fixed pseudorandom message for (hash, class, seed).
std::vector<std::uint8_t> bench_message(const std::string& hash_name, MsgClass msg_class, std::uint64_t seed);

enum class ReportFormat { Json, Csv };
ReportFormat parse_format(const std::string& s);

/// CSV header `hash,class,ns_per_byte,compressions,cipher_calls,state_bytes`;
/// JSON `{"schema":1,"results":[...]}`. Empty results throw UsageError.
std::string render_bench(const std::vector<BenchResult>& results, ReportFormat format);
/// Writes render_bench() to path; throws std::runtime_error if it cannot be written.
void report_emit(const std::vector<BenchResult>& results, ReportFormat format, const std::string& path);
std::vector<BenchResult> parse_bench_json(const std::string& text);

}  // namespace intermithash
