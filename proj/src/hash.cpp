#include "intermithash/hash.hpp"

#include <stdexcept>

namespace intermithash {

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: invalid digit");
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  return out;
}

Digest StreamingHasher::finish() {
  Bytes out(digest_bytes());
  finish(MutableByteView(out));
  return Digest(std::move(out));
}

void HashAlgorithm::hash(ByteView message, MutableByteView out) const {
  auto s = stream();
  s->update(message);
  s->finish(out);
}

Digest HashAlgorithm::hash(ByteView message) const {
  Bytes out(digest_bytes());
  hash(message, MutableByteView(out));
  return Digest(std::move(out));
}

}  // namespace intermithash
