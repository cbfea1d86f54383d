#include "intermithash/blake2s.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace intermithash {
namespace {

constexpr std::uint32_t kIv[8] = {0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
                                  0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19};

constexpr std::uint8_t kSigma[10][16] = {
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
    {14, 10, 4, 8, 9, 15, 13, 6, 1, 12, 0, 2, 11, 7, 5, 3},
    {11, 8, 12, 0, 5, 2, 15, 13, 10, 14, 3, 6, 7, 1, 9, 4},
    {7, 9, 3, 1, 13, 12, 11, 14, 2, 6, 5, 10, 4, 0, 15, 8},
    {9, 0, 5, 7, 2, 4, 10, 15, 14, 1, 11, 12, 6, 8, 3, 13},
    {2, 12, 6, 10, 0, 11, 8, 3, 4, 13, 7, 5, 15, 14, 1, 9},
    {12, 5, 1, 15, 14, 13, 4, 10, 0, 7, 6, 3, 9, 2, 8, 11},
    {13, 11, 7, 14, 12, 1, 3, 9, 5, 0, 15, 4, 8, 6, 2, 10},
    {6, 15, 14, 9, 11, 3, 0, 8, 12, 2, 13, 7, 1, 4, 10, 5},
    {10, 2, 8, 4, 7, 6, 1, 5, 15, 11, 9, 14, 3, 12, 13, 0},
};

inline void mix(std::uint32_t* v, int a, int b, int c, int d, std::uint32_t x, std::uint32_t y) {
  v[a] = v[a] + v[b] + x;
  v[d] = std::rotr(v[d] ^ v[a], 16);
  v[c] = v[c] + v[d];
  v[b] = std::rotr(v[b] ^ v[c], 12);
  v[a] = v[a] + v[b] + y;
  v[d] = std::rotr(v[d] ^ v[a], 8);
  v[c] = v[c] + v[d];
  v[b] = std::rotr(v[b] ^ v[c], 7);
}

}  // namespace

Blake2s::Blake2s() {
  for (int i = 0; i < 8; ++i) h_[i] = kIv[i];
  // parameter block: digest length 32, key length 0, fanout 1, depth 1
  h_[0] ^= 0x01010000u ^ static_cast<std::uint32_t>(kDigestBytes);
}

void Blake2s::compress(const std::uint8_t* block, bool last) {
  std::uint32_t m[16];
  for (int i = 0; i < 16; ++i) m[i] = load_le32(block + 4 * i);
  std::uint32_t v[16];
  for (int i = 0; i < 8; ++i) {
    v[i] = h_[i];
    v[i + 8] = kIv[i];
  }
  v[12] ^= static_cast<std::uint32_t>(t_);
  v[13] ^= static_cast<std::uint32_t>(t_ >> 32);
  if (last) v[14] = ~v[14];

  for (const auto& s : kSigma) {
    mix(v, 0, 4, 8, 12, m[s[0]], m[s[1]]);
    mix(v, 1, 5, 9, 13, m[s[2]], m[s[3]]);
    mix(v, 2, 6, 10, 14, m[s[4]], m[s[5]]);
    mix(v, 3, 7, 11, 15, m[s[6]], m[s[7]]);
    mix(v, 0, 5, 10, 15, m[s[8]], m[s[9]]);
    mix(v, 1, 6, 11, 12, m[s[10]], m[s[11]]);
    mix(v, 2, 7, 8, 13, m[s[12]], m[s[13]]);
    mix(v, 3, 4, 9, 14, m[s[14]], m[s[15]]);
  }
  for (int i = 0; i < 8; ++i) h_[i] ^= v[i] ^ v[i + 8];
  ++counters_.compressions;
}

void Blake2s::update(ByteView data) {
  std::size_t pos = 0;
  // The final block is compressed with the last-block flag, so a full buffer
  // is only flushed once more input is known to follow.
  while (pos < data.size()) {
    if (buffered_ == kBlockBytes) {
      t_ += kBlockBytes;
      compress(buffer_.data(), false);
      buffered_ = 0;
    }
    const std::size_t take = std::min(kBlockBytes - buffered_, data.size() - pos);
    std::memcpy(buffer_.data() + buffered_, data.data() + pos, take);
    buffered_ += take;
    pos += take;
  }
}

void Blake2s::finish(MutableByteView out) {
  if (out.size() != kDigestBytes) throw std::invalid_argument("blake2s: output must be 32 bytes");
  t_ += buffered_;
  std::memset(buffer_.data() + buffered_, 0, kBlockBytes - buffered_);
  compress(buffer_.data(), true);
  buffered_ = 0;
  for (int i = 0; i < 8; ++i) store_le32(out.data() + 4 * i, h_[i]);
}

Digest blake2s(ByteView message) {
  Blake2s s;
  s.update(message);
  Bytes out(Blake2s::kDigestBytes);
  s.finish(out);
  return Digest(std::move(out));
}

}  // namespace intermithash
