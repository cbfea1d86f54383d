#include "intermithash/quality.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "intermithash/rng.hpp"

namespace intermithash {
namespace {

constexpr std::size_t kMaxDigest = 32;
constexpr std::size_t kBatch = 16384;

template <std::size_t Words>
KeysetResult run_keyset_words(const HashAlgorithm& hash, const KeysetSpec& spec,
                              const QualityConfig& config) {
  using Key = std::array<std::uint64_t, Words>;
  const std::size_t digest = hash.digest_bytes();
  const std::uint64_t size = keyset_size(spec);
  const std::uint64_t groups = keyset_groups(spec);
  const std::uint64_t group_size = size / groups;
  if (group_size > config.memory_budget_bytes / sizeof(Key))
    throw CapacityError("digest table for " + std::to_string(group_size) + " messages exceeds " +
                        std::to_string(config.memory_budget_bytes) + " byte budget");

  KeysetResult result;
  result.test = keyset_name(spec);
  result.sample_count = size;
  const bool want_distribution = groups == 1 && size >= 1000;
  const unsigned threads = std::max(1u, config.threads);
  // per-worker histograms of each digest byte's value
  std::vector<std::vector<std::uint64_t>> hist(
      threads, std::vector<std::uint64_t>(want_distribution ? digest * 256 : 0, 0));

  KeysetStream stream(spec);
  std::vector<Key> table;
  table.reserve(group_size);
  std::vector<Bytes> batch(static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, group_size)));

  for (std::uint64_t g = 0; g < groups; ++g) {
    table.clear();
    std::uint64_t remaining = group_size;
    while (remaining > 0) {
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(batch.size(), remaining));
      for (std::size_t i = 0; i < n; ++i) stream.next(batch[i]);
      const std::size_t base = table.size();
      table.resize(base + n);
      parallel_for(n, threads, [&](std::size_t b, std::size_t e, unsigned w) {
        std::uint8_t out[kMaxDigest];
        auto& h = hist[w];
        for (std::size_t i = b; i < e; ++i) {
          hash.hash(batch[i], MutableByteView(out, digest));
          Key key{};
          std::memcpy(key.data(), out, digest);
          table[base + i] = key;
          if (want_distribution)
            for (std::size_t j = 0; j < digest; ++j) ++h[j * 256 + out[j]];
        }
      });
      remaining -= n;
    }
    std::sort(table.begin(), table.end());
    const auto distinct =
        static_cast<std::uint64_t>(std::unique(table.begin(), table.end()) - table.begin());
    result.collisions += group_size - distinct;
  }

  if (want_distribution) {
    std::vector<std::uint64_t> ones(digest * 8, 0);
    for (const auto& h : hist)
      for (std::size_t j = 0; j < digest; ++j)
        for (unsigned v = 0; v < 256; ++v)
          for (unsigned b = 0; b < 8; ++b)
            if ((v >> b) & 1u) ones[j * 8 + b] += h[j * 256 + v];
    result.distribution_bias_pct = bit_balance_bias(ones, size);
  }
  return result;
}

void load_words(const std::uint8_t* bytes, std::size_t n, std::uint64_t* words) {
  for (std::size_t w = 0; w < (n + 7) / 8; ++w) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8 && w * 8 + i < n; ++i) v |= std::uint64_t{bytes[w * 8 + i]} << (8 * i);
    words[w] = v;
  }
}

}  // namespace

KeysetResult run_keyset(const HashAlgorithm& hash, const KeysetSpec& spec,
                        const QualityConfig& config) {
  const std::size_t d = hash.digest_bytes();
  if (d <= 8) return run_keyset_words<1>(hash, spec, config);
  if (d <= 16) return run_keyset_words<2>(hash, spec, config);
  if (d <= 32) return run_keyset_words<4>(hash, spec, config);
  throw std::invalid_argument("digests wider than 256 bits are not supported");
}

std::uint64_t count_collisions(const HashAlgorithm& hash, const KeysetSpec& spec,
                               const QualityConfig& config) {
  return run_keyset(hash, spec, config).collisions;
}

double distribution_bias(const HashAlgorithm& hash, const KeysetSpec& spec,
                         const QualityConfig& config) {
  if (keyset_groups(spec) != 1)
    throw std::invalid_argument("distribution is not defined for grouped keysets");
  if (keyset_size(spec) < 1000)
    throw std::invalid_argument("distribution needs at least 1000 messages");
  return *run_keyset(hash, spec, config).distribution_bias_pct;
}

double bit_balance_bias(const std::vector<std::uint64_t>& ones, std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("bit_balance_bias: no samples");
  double worst = 0.0;
  for (std::uint64_t c : ones) {
    const double p = static_cast<double>(c) / static_cast<double>(samples);
    worst = std::max(worst, std::fabs(2.0 * p - 1.0));
  }
  return std::clamp(worst * 100.0, 0.0, 100.0);
}

double avalanche_bias(const HashAlgorithm& hash, std::size_t msg_len_bytes, std::uint64_t samples,
                      std::uint64_t seed, const QualityConfig& config) {
  if (samples < 10000) throw std::invalid_argument("avalanche_bias: needs at least 10^4 samples");
  if (msg_len_bytes == 0) throw std::invalid_argument("avalanche_bias: empty messages");
  const std::size_t digest = hash.digest_bytes();
  const std::size_t in_bits = msg_len_bytes * 8;
  const std::size_t out_bits = digest * 8;
  const std::size_t out_words = (digest + 7) / 8;
  const unsigned threads = std::max(1u, config.threads);
  std::vector<std::vector<std::uint32_t>> counts(
      threads, std::vector<std::uint32_t>(in_bits * out_bits, 0));

  parallel_for(static_cast<std::size_t>(samples), threads,
               [&](std::size_t b, std::size_t e, unsigned w) {
                 auto& cnt = counts[w];
                 Bytes msg(msg_len_bytes);
                 std::uint8_t base[kMaxDigest], flipped[kMaxDigest];
                 std::uint64_t base_w[4], flip_w[4];
                 for (std::size_t s = b; s < e; ++s) {
                   Rng rng = Rng::split(seed, s);
                   rng.fill(msg.data(), msg.size());
                   hash.hash(msg, MutableByteView(base, digest));
                   load_words(base, digest, base_w);
                   for (std::size_t i = 0; i < in_bits; ++i) {
                     const auto mask = static_cast<std::uint8_t>(1u << (i % 8));
                     msg[i / 8] ^= mask;
                     hash.hash(msg, MutableByteView(flipped, digest));
                     msg[i / 8] ^= mask;
                     load_words(flipped, digest, flip_w);
                     std::uint32_t* row = cnt.data() + i * out_bits;
                     for (std::size_t wd = 0; wd < out_words; ++wd) {
                       std::uint64_t diff = base_w[wd] ^ flip_w[wd];
                       while (diff) {
                         ++row[wd * 64 + static_cast<std::size_t>(std::countr_zero(diff))];
                         diff &= diff - 1;
                       }
                     }
                   }
                 }
               });

  double worst = 0.0;
  for (std::size_t k = 0; k < in_bits * out_bits; ++k) {
    std::uint64_t c = 0;
    for (const auto& per : counts) c += per[k];
    const double p = static_cast<double>(c) / static_cast<double>(samples);
    worst = std::max(worst, std::fabs(2.0 * p - 1.0));
  }
  return std::clamp(worst * 100.0, 0.0, 100.0);
}

DifferentialResult differential_test(const HashAlgorithm& hash, std::size_t key_bytes,
                                     std::size_t n_bits, std::uint64_t pairs_per_subset,
                                     std::uint64_t seed, const QualityConfig& config) {
  if (n_bits != 1 && n_bits != 2) throw std::invalid_argument("differential_test: n_bits must be 1 or 2");
  if (key_bytes == 0) throw std::invalid_argument("differential_test: empty keys");
  const std::size_t bits = key_bytes * 8;
  std::vector<std::pair<std::size_t, std::size_t>> subsets;
  for (std::size_t i = 0; i < bits; ++i) {
    if (n_bits == 1) {
      subsets.emplace_back(i, i);
    } else {
      for (std::size_t j = i + 1; j < bits; ++j) subsets.emplace_back(i, j);
    }
  }
  const std::size_t digest = hash.digest_bytes();
  const unsigned threads = std::max(1u, config.threads);
  std::vector<std::uint64_t> hits(threads, 0);
  parallel_for(subsets.size(), threads, [&](std::size_t b, std::size_t e, unsigned w) {
    Bytes key(key_bytes);
    std::uint8_t h1[kMaxDigest], h2[kMaxDigest];
    for (std::size_t s = b; s < e; ++s) {
      const auto [i, j] = subsets[s];
      for (std::uint64_t p = 0; p < pairs_per_subset; ++p) {
        Rng rng = Rng::split(seed, s * pairs_per_subset + p);
        rng.fill(key.data(), key.size());
        hash.hash(key, MutableByteView(h1, digest));
        key[i / 8] ^= static_cast<std::uint8_t>(1u << (i % 8));
        if (j != i) key[j / 8] ^= static_cast<std::uint8_t>(1u << (j % 8));
        hash.hash(key, MutableByteView(h2, digest));
        if (std::memcmp(h1, h2, digest) == 0) ++hits[w];
      }
    }
  });
  DifferentialResult r;
  r.n_bits = n_bits;
  r.pairs = subsets.size() * pairs_per_subset;
  for (auto h : hits) r.collisions += h;
  return r;
}

double collision_probability(const CollisionModel& model) {
  if (model.n < 1.0) throw std::invalid_argument("collision_probability: N must be >= 1");
  if (model.k < 0.0) throw std::invalid_argument("collision_probability: k must be >= 0");
  const double p = -std::expm1(-model.k * (model.k - 1.0) / (2.0 * model.n));
  return std::clamp(p, 0.0, 1.0);
}

const std::vector<std::string>& quality_test_names() {
  static const std::vector<std::string> names = {"avalanche", "cyclic",      "twobytes", "differential",
                                                 "sparse",    "permutation", "window",   "zeros"};
  return names;
}

QualityPlan QualityPlan::defaults(std::uint64_t seed) {
  QualityPlan p;
  p.seed = seed;
  p.keysets = default_keysets(seed);
  return p;
}

QualityReport run_quality(const HashAlgorithm& hash, const QualityPlan& plan,
                          const QualityConfig& config) {
  const auto& known = quality_test_names();
  for (const auto& t : plan.tests)
    if (std::find(known.begin(), known.end(), t) == known.end())
      throw std::invalid_argument("unknown quality test: " + t);
  auto wanted = [&](const std::string& t) {
    return std::find(plan.tests.begin(), plan.tests.end(), t) != plan.tests.end();
  };

  QualityReport r;
  r.hash_name = hash.name();
  if (wanted("avalanche"))
    r.avalanche_bias_pct = avalanche_bias(hash, plan.avalanche_msg_bytes, plan.avalanche_samples, plan.seed, config);
  if (wanted("differential"))
    r.differential = differential_test(hash, plan.differential_key_bytes, plan.differential_n_bits,
                                       plan.differential_pairs, plan.seed, config);
  for (const auto& spec : plan.keysets)
    if (wanted(keyset_name(spec))) r.keysets.push_back(run_keyset(hash, spec, config));
  return r;
}

}  // namespace intermithash
