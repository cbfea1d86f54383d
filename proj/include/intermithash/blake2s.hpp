#pragma once

#include <array>
#include <cstdint>

#include "intermithash/bytes.hpp"
#include "intermithash/hash.hpp"

namespace intermithash {

/// Unkeyed BLAKE2s with a 256-bit digest (RFC 7693).
class Blake2s {
 public:
  static constexpr std::size_t kDigestBytes = 32;
  static constexpr std::size_t kBlockBytes = 64;
  // h[8] + t[2] + f[2] words, block buffer
  static constexpr std::size_t kStateBytes = 48 + 64;

  Blake2s();
  void update(ByteView data);
  void finish(MutableByteView out);
  HashCounters counters() const { return counters_; }
  std::size_t digest_bytes() const { return kDigestBytes; }

 private:
  void compress(const std::uint8_t* block, bool last);

  std::array<std::uint32_t, 8> h_;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t t_ = 0;
  HashCounters counters_;
};

Digest blake2s(ByteView message);

}  // namespace intermithash
