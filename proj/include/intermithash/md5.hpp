#pragma once

#include <array>
#include <cstdint>

#include "intermithash/bytes.hpp"
#include "intermithash/hash.hpp"

namespace intermithash {

/// RFC 1321 MD5.
class Md5 {
 public:
  static constexpr std::size_t kDigestBytes = 16;
  static constexpr std::size_t kBlockBytes = 64;
  // chaining words + block buffer + bit length
  static constexpr std::size_t kStateBytes = 16 + 64 + 8;

  Md5();
  void update(ByteView data);
  void finish(MutableByteView out);
  HashCounters counters() const { return counters_; }
  std::size_t digest_bytes() const { return kDigestBytes; }

 private:
  void compress(const std::uint8_t* block);

  std::array<std::uint32_t, 4> h_;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t length_ = 0;
  HashCounters counters_;
};

/// One-shot convenience.
Digest md5(ByteView message);

}  // namespace intermithash
