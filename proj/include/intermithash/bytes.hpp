#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace intermithash {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using MutableByteView = std::span<std::uint8_t>;

/// Lowercase hex rendering, two characters per byte.
std::string to_hex(ByteView bytes);

/// Parses an even-length hex string (either case). Throws std::invalid_argument.
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline std::uint32_t load_le32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

inline std::uint64_t load_le64(const std::uint8_t* p) {
  return std::uint64_t{load_le32(p)} | (std::uint64_t{load_le32(p + 4)} << 32);
}

inline void store_le32(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v);
  p[1] = static_cast<std::uint8_t>(v >> 8);
  p[2] = static_cast<std::uint8_t>(v >> 16);
  p[3] = static_cast<std::uint8_t>(v >> 24);
}

inline void store_le64(std::uint8_t* p, std::uint64_t v) {
  store_le32(p, static_cast<std::uint32_t>(v));
  store_le32(p + 4, static_cast<std::uint32_t>(v >> 32));
}

/// Fixed-capacity byte value used for cipher blocks, keys and chaining values.
/// Holds up to 16 bytes, which covers every SPECK block and key size used here.
class Block {
 public:
  static constexpr std::size_t kCapacity = 16;

  Block() = default;
  explicit Block(std::size_t size) : size_(checked(size)) {}
  explicit Block(ByteView bytes) : size_(checked(bytes.size())) {
    for (std::size_t i = 0; i < size_; ++i) data_[i] = bytes[i];
  }

  static Block zeros(std::size_t size) { return Block(size); }

  std::size_t size() const { return size_; }
  std::size_t bits() const { return size_ * 8; }
  const std::uint8_t* data() const { return data_.data(); }
  std::uint8_t* data() { return data_.data(); }
  ByteView view() const { return {data_.data(), size_}; }
  MutableByteView span() { return {data_.data(), size_}; }
  std::uint8_t operator[](std::size_t i) const { return data_[i]; }
  std::uint8_t& operator[](std::size_t i) { return data_[i]; }
  Bytes to_bytes() const { return Bytes(data_.begin(), data_.begin() + static_cast<long>(size_)); }

  Block& operator^=(const Block& other) {
    if (other.size_ != size_) throw std::invalid_argument("Block xor: width mismatch");
    for (std::size_t i = 0; i < size_; ++i) data_[i] ^= other.data_[i];
    return *this;
  }
  friend Block operator^(Block a, const Block& b) { return a ^= b; }

  friend bool operator==(const Block& a, const Block& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.data_[i] != b.data_[i]) return false;
    return true;
  }

 private:
  static std::size_t checked(std::size_t n) {
    if (n > kCapacity) throw std::invalid_argument("Block: more than 16 bytes");
    return n;
  }

  std::array<std::uint8_t, kCapacity> data_{};
  std::size_t size_ = 0;
};

}  // namespace intermithash
