#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "intermithash/hash.hpp"
#include "intermithash/keyset.hpp"
#include "intermithash/parallel.hpp"

namespace intermithash {

struct QualityConfig {
  /// Upper bound on the digest table held for one collision group.
  std::uint64_t memory_budget_bytes = std::uint64_t{3} << 30;
  unsigned threads = default_threads();
};

/// Outcome of hashing one keyset: duplicate count and output-bit balance.
struct KeysetResult {
  std::string test;
  std::uint64_t sample_count = 0;
  /// sample_count minus distinct digests (summed over groups); a c-way tie counts c-1.
  std::uint64_t collisions = 0;
  /// Absent for grouped keysets (Window) and keysets under 1000 messages.
  std::optional<double> distribution_bias_pct;
};

KeysetResult run_keyset(const HashAlgorithm& hash, const KeysetSpec& spec,
                        const QualityConfig& config = {});

/// Throws CapacityError if one collision group's digests exceed the budget.
std::uint64_t count_collisions(const HashAlgorithm& hash, const KeysetSpec& spec,
                               const QualityConfig& config = {});

/// Worst output-bit imbalance, max_j |2 p_j - 1| * 100, where p_j is the
/// fraction of digests with bit j set. Requires >= 1000 messages and an
/// ungrouped keyset; throws std::invalid_argument otherwise.
double distribution_bias(const HashAlgorithm& hash, const KeysetSpec& spec,
                         const QualityConfig& config = {});

/// The same metric from per-bit set counts over `samples` digests.
double bit_balance_bias(const std::vector<std::uint64_t>& ones, std::uint64_t samples);

/// Worst (input bit, output bit) deviation from a 50% flip rate, in percent,
/// over `samples` random messages of msg_len_bytes. Requires samples >= 10^4.
double avalanche_bias(const HashAlgorithm& hash, std::size_t msg_len_bytes, std::uint64_t samples,
                      std::uint64_t seed, const QualityConfig& config = {});

struct DifferentialResult {
  std::size_t n_bits = 0;
  std::uint64_t pairs = 0;
  std::uint64_t collisions = 0;
};

/// For every n_bits-subset of bit positions in a key_bytes message, hashes
/// pairs_per_subset random pairs differing in exactly those bits and counts
/// equal digests. n_bits must be 1 or 2.
DifferentialResult differential_test(const HashAlgorithm& hash, std::size_t key_bytes,
                                     std::size_t n_bits, std::uint64_t pairs_per_subset,
                                     std::uint64_t seed, const QualityConfig& config = {});

struct CollisionModel {
  double k = 0;  // hashed values
  double n = 1;  // output space size
};

/// Birthday approximation P = 1 - exp(-k(k-1) / 2N), clamped to [0, 1].
double collision_probability(const CollisionModel& model);

/// Test names in report column order.
const std::vector<std::string>& quality_test_names();

struct QualityPlan {
  std::vector<std::string> tests = quality_test_names();
  std::uint64_t seed = 0;
  std::size_t avalanche_msg_bytes = 32;
  std::uint64_t avalanche_samples = 100000;
  std::size_t differential_key_bytes = 8;
  std::size_t differential_n_bits = 1;
  std::uint64_t differential_pairs = 1000;
  /// Keyset tests to run, matched to `tests` by keyset_name().
  std::vector<KeysetSpec> keysets = default_keysets(0);

  /// Default plan with every keyset seeded from `seed`.
  static QualityPlan defaults(std::uint64_t seed);
};

struct QualityReport {
  std::string hash_name;
  /// In plan order; only keysets named in plan.tests.
  std::vector<KeysetResult> keysets;
  std::optional<double> avalanche_bias_pct;
  std::optional<DifferentialResult> differential;
};

/// Throws std::invalid_argument for unknown test names.
QualityReport run_quality(const HashAlgorithm& hash, const QualityPlan& plan,
                          const QualityConfig& config = {});

}  // namespace intermithash
