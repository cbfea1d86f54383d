#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "intermithash/bytes.hpp"

namespace intermithash {

/// Fixed-length hash output.
class Digest {
 public:
  Digest() = default;
  explicit Digest(Bytes bytes) : bytes_(std::move(bytes)) {}

  std::size_t size() const { return bytes_.size(); }
  std::size_t bits() const { return bytes_.size() * 8; }
  ByteView view() const { return bytes_; }
  const Bytes& bytes() const { return bytes_; }
  std::string hex() const { return to_hex(bytes_); }

  friend bool operator==(const Digest&, const Digest&) = default;

 private:
  Bytes bytes_;
};

/// Deterministic work counters. These are the host-independent part of a
/// benchmark: identical on every platform for the same input length.
struct HashCounters {
  std::uint64_t compressions = 0;
  std::uint64_t cipher_calls = 0;

  friend bool operator==(const HashCounters&, const HashCounters&) = default;
};

/// Incremental hashing state. Single owner; may be moved between threads.
class StreamingHasher {
 public:
  virtual ~StreamingHasher() = default;
  virtual void update(ByteView data) = 0;
  /// Finalizes and writes the digest. The hasher must not be updated afterwards.
  virtual void finish(MutableByteView out) = 0;
  virtual HashCounters counters() const = 0;
  virtual std::size_t digest_bytes() const = 0;

  Digest finish();
};

/// Stateless description of a hash function. Every method is const and safe
/// to call concurrently.
class HashAlgorithm {
 public:
  virtual ~HashAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual std::size_t digest_bytes() const = 0;
  /// Bytes consumed per compression call.
  virtual std::size_t block_bytes() const = 0;
  /// Size of the algorithm's working state (chaining value, buffer, counters).
  virtual std::size_t state_bytes() const = 0;
  virtual std::unique_ptr<StreamingHasher> stream() const = 0;

  /// One-shot hash into `out` (exactly digest_bytes() long).
  virtual void hash(ByteView message, MutableByteView out) const;

  Digest hash(ByteView message) const;
  Digest hash(std::string_view message) const { return hash(as_bytes(message)); }
};

/// Adapts a value-type state with update/finish/counters into the virtual interface.
template <class State>
class StreamingAdapter final : public StreamingHasher {
 public:
  explicit StreamingAdapter(State state) : state_(std::move(state)) {}
  void update(ByteView data) override { state_.update(data); }
  void finish(MutableByteView out) override { state_.finish(out); }
  using StreamingHasher::finish;
  HashCounters counters() const override { return state_.counters(); }
  std::size_t digest_bytes() const override { return state_.digest_bytes(); }

 private:
  State state_;
};

}  // namespace intermithash
