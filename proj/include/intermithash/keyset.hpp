#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "intermithash/bytes.hpp"

namespace intermithash {

/// Raised when a keyset or its digest table would not fit the configured budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `sample_count` random patterns of `pattern_bytes`, each repeated `repeats` times.
struct CyclicKeys {
  std::size_t pattern_bytes = 8;
  std::size_t repeats = 8;
  std::uint64_t sample_count = 100000;
};

/// Every message of length 1..max_len with one or two nonzero bytes.
struct TwoBytesKeys {
  std::size_t max_len = 8;
};

/// Every msg_bits-bit message with at most max_set_bits bits set (including none).
struct SparseKeys {
  std::size_t msg_bits = 512;
  std::size_t max_set_bits = 3;
};

/// Every sequence of 1..max_blocks blocks drawn, with repetition, from `blocks`.
struct PermutationKeys {
  std::vector<Bytes> blocks;
  std::size_t max_blocks = 6;

  /// Eight little-endian 32-bit words 0..7.
  static PermutationKeys low_bits(std::size_t max_blocks = 6);
};

/// For each of key_bits window positions (wrapping), all 2^window_bits values
/// of a contiguous window with every other bit clear. Collisions are counted
/// per window position.
struct WindowKeys {
  std::size_t key_bits = 64;
  std::size_t window_bits = 20;
};

/// All-zero messages of every length 0..max_len-1.
struct ZerosKeys {
  std::size_t max_len = 65536;
};

using KeysetKind =
    std::variant<CyclicKeys, TwoBytesKeys, SparseKeys, PermutationKeys, WindowKeys, ZerosKeys>;

struct KeysetSpec {
  KeysetKind kind;
  std::uint64_t seed = 0;  // only Cyclic draws random bytes
};

/// "cyclic", "twobytes", "sparse", "permutation", "window" or "zeros".
std::string keyset_name(const KeysetSpec& spec);

/// Number of messages the spec enumerates. Throws std::invalid_argument for
/// malformed parameters and CapacityError if the count exceeds 2^40.
std::uint64_t keyset_size(const KeysetSpec& spec);

/// Number of independent collision groups (window positions for Window, else 1).
std::uint64_t keyset_groups(const KeysetSpec& spec);

/// Pull-based enumeration of a keyset in a fixed order.
class KeysetStream {
 public:
  explicit KeysetStream(const KeysetSpec& spec);
  ~KeysetStream();
  KeysetStream(KeysetStream&&) noexcept;
  KeysetStream& operator=(KeysetStream&&) noexcept;

  /// Writes the next message into `out`; false once exhausted.
  bool next(Bytes& out);
  std::uint64_t size() const { return size_; }
  /// Messages produced so far.
  std::uint64_t produced() const { return produced_; }

  class Generator;

 private:
  std::unique_ptr<Generator> gen_;
  std::uint64_t size_ = 0;
  std::uint64_t produced_ = 0;
};

/// Materializes the whole keyset; refuses more than `max_messages`.
std::vector<Bytes> gen_keyset(const KeysetSpec& spec, std::uint64_t max_messages = 1u << 24);

/// The desk-scale battery: Cyclic, TwoBytes, Sparse, Permutation, Window, Zeros.
std::vector<KeysetSpec> default_keysets(std::uint64_t seed);

}  // namespace intermithash
