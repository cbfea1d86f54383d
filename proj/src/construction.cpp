#include "intermithash/construction.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace intermithash {
namespace {

void g_bytes(const std::uint8_t* src, std::size_t src_n, std::uint8_t* dst, std::size_t dst_n,
             GMode mode) {
  if (mode == GMode::ZeroPad || src_n >= dst_n) {
    const std::size_t n = std::min(src_n, dst_n);
    std::memcpy(dst, src, n);
    std::memset(dst + n, 0, dst_n - n);
    return;
  }
  for (std::size_t i = 0; i < dst_n; ++i) dst[i] = src[i % src_n];
}

void validate(const Construction& c) {
  if (!c.cipher) throw std::invalid_argument("construction: no cipher bound");
  if (c.iv.size() != c.cipher->block_bytes())
    throw std::invalid_argument("construction: IV width must equal the cipher block width");
}

// One compression, in place on the chaining value `h`.
void step(const Construction& c, std::uint8_t* h, const std::uint8_t* fragment) {
  const std::size_t bb = c.cipher->block_bytes();
  std::uint8_t v[Block::kCapacity];
  if (c.kind == ConstructionKind::DM) {
    c.cipher->encrypt(fragment, h, v);
    for (std::size_t i = 0; i < bb; ++i) h[i] ^= v[i];
    return;
  }
  std::uint8_t key[Block::kCapacity];
  g_bytes(h, bb, key, c.cipher->key_bytes(), c.g_mode);
  c.cipher->encrypt(key, fragment, v);
  if (c.kind == ConstructionKind::MMO) {
    for (std::size_t i = 0; i < bb; ++i) h[i] = v[i] ^ fragment[i];
  } else {
    for (std::size_t i = 0; i < bb; ++i) h[i] ^= v[i] ^ fragment[i];
  }
}

ChainState compress_checked(const Construction& c, ConstructionKind kind, const ChainState& state,
                            ByteView fragment) {
  validate(c);
  if (state.h.size() != c.cipher->block_bytes())
    throw std::invalid_argument("compress: chaining value width mismatch");
  const std::size_t want =
      kind == ConstructionKind::DM ? c.cipher->key_bytes() : c.cipher->block_bytes();
  if (fragment.size() != want)
    throw std::invalid_argument("compress: fragment must be " + std::to_string(want) + " bytes");
  Construction local = c;
  local.kind = kind;
  ChainState next = state;
  step(local, next.h.data(), fragment.data());
  ++next.blocks_consumed;
  return next;
}

}  // namespace

std::string to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::DM: return "dm";
    case ConstructionKind::MMO: return "mmo";
    case ConstructionKind::MP: return "mp";
  }
  return "?";
}

std::string to_string(GMode mode) { return mode == GMode::ZeroPad ? "zeropad" : "duplicate"; }

std::size_t Construction::fragment_bytes() const {
  return kind == ConstructionKind::DM ? cipher->key_bytes() : cipher->block_bytes();
}

Construction Construction::speck(ConstructionKind kind, const SpeckVariant& variant, GMode g_mode) {
  return Construction{kind, make_speck(variant), g_mode, Block::zeros(variant.block_bytes())};
}

PaddedMessage pad_message(ByteView message, std::size_t fragment_bytes) {
  if (fragment_bytes == 0) throw std::invalid_argument("pad_message: fragment_bytes must be > 0");
  PaddedMessage out;
  out.fragment_bytes = fragment_bytes;
  out.original_len_bytes = message.size();
  const std::size_t n = std::max<std::size_t>(1, (message.size() + fragment_bytes - 1) / fragment_bytes);
  out.data.assign(n * fragment_bytes, 0);
  std::copy(message.begin(), message.end(), out.data.begin());
  return out;
}

Block g_map(const Block& value, std::size_t target_bits, GMode mode) {
  if (value.size() == 0) throw std::invalid_argument("g_map: empty value");
  if (target_bits == 0 || target_bits % 8 != 0 || target_bits > Block::kCapacity * 8)
    throw std::invalid_argument("g_map: target width must be a multiple of 8 in (0, 128]");
  Block out(target_bits / 8);
  g_bytes(value.data(), value.size(), out.data(), out.size(), mode);
  return out;
}

ChainState compress_dm(const Construction& c, const ChainState& state, ByteView fragment) {
  return compress_checked(c, ConstructionKind::DM, state, fragment);
}

ChainState compress_mmo(const Construction& c, const ChainState& state, ByteView fragment) {
  return compress_checked(c, ConstructionKind::MMO, state, fragment);
}

ChainState compress_mp(const Construction& c, const ChainState& state, ByteView fragment) {
  return compress_checked(c, ConstructionKind::MP, state, fragment);
}

ChainState compress(const Construction& c, const ChainState& state, ByteView fragment) {
  return compress_checked(c, c.kind, state, fragment);
}

void hash_into(const Construction& c, ByteView message, MutableByteView out,
               HashCounters* counters) {
  validate(c);
  const std::size_t bb = c.cipher->block_bytes();
  const std::size_t fb = c.fragment_bytes();
  if (out.size() != bb) throw std::invalid_argument("hash_into: output width mismatch");

  std::uint8_t h[Block::kCapacity];
  std::memcpy(h, c.iv.data(), bb);
  std::uint64_t n = 0;
  std::size_t pos = 0;
  for (; pos + fb <= message.size(); pos += fb, ++n) step(c, h, message.data() + pos);
  if (pos < message.size() || message.empty()) {
    std::uint8_t tail[Block::kCapacity] = {};
    std::memcpy(tail, message.data() + pos, message.size() - pos);
    step(c, h, tail);
    ++n;
  }
  std::memcpy(out.data(), h, bb);
  if (counters) {
    counters->compressions += n;
    counters->cipher_calls += n;
  }
}

Digest hash(const Construction& c, ByteView message) {
  validate(c);
  Bytes out(c.digest_bytes());
  hash_into(c, message, out);
  return Digest(std::move(out));
}

ConstructionState::ConstructionState(const Construction& c)
    : construction_(c), chain_{c.iv, 0}, buffer_(Block::zeros(c.cipher ? c.fragment_bytes() : 0)) {
  validate(construction_);
}

void ConstructionState::absorb(const std::uint8_t* fragment) {
  step(construction_, chain_.h.data(), fragment);
  ++chain_.blocks_consumed;
  ++counters_.compressions;
  ++counters_.cipher_calls;
}

void ConstructionState::update(ByteView data) {
  const std::size_t fb = buffer_.size();
  total_ += data.size();
  std::size_t pos = 0;
  if (buffered_ > 0) {
    const std::size_t take = std::min(fb - buffered_, data.size());
    std::memcpy(buffer_.data() + buffered_, data.data(), take);
    buffered_ += take;
    pos = take;
    if (buffered_ < fb) return;
    absorb(buffer_.data());
    buffered_ = 0;
  }
  for (; pos + fb <= data.size(); pos += fb) absorb(data.data() + pos);
  std::memcpy(buffer_.data(), data.data() + pos, data.size() - pos);
  buffered_ = data.size() - pos;
}

void ConstructionState::finish(MutableByteView out) {
  if (out.size() != chain_.h.size()) throw std::invalid_argument("finish: output width mismatch");
  if (buffered_ > 0 || total_ == 0) {
    std::memset(buffer_.data() + buffered_, 0, buffer_.size() - buffered_);
    absorb(buffer_.data());
    buffered_ = 0;
  }
  std::memcpy(out.data(), chain_.h.data(), out.size());
}

namespace {

class ConstructionHash final : public HashAlgorithm {
 public:
  ConstructionHash(std::string name, Construction c) : name_(std::move(name)), c_(std::move(c)) {
    validate(c_);
  }

  std::string name() const override { return name_; }
  std::size_t digest_bytes() const override { return c_.digest_bytes(); }
  std::size_t block_bytes() const override { return c_.fragment_bytes(); }
  // chaining value + partial-fragment buffer + g output + cipher output
  std::size_t state_bytes() const override {
    return c_.digest_bytes() + c_.fragment_bytes() + c_.cipher->key_bytes() + c_.digest_bytes();
  }
  std::unique_ptr<StreamingHasher> stream() const override {
    return std::make_unique<StreamingAdapter<ConstructionState>>(ConstructionState(c_));
  }
  void hash(ByteView message, MutableByteView out) const override { hash_into(c_, message, out); }
  using HashAlgorithm::hash;

 private:
  std::string name_;
  Construction c_;
};

}  // namespace

std::shared_ptr<const HashAlgorithm> make_construction_hash(std::string name,
                                                            Construction construction) {
  return std::make_shared<ConstructionHash>(std::move(name), std::move(construction));
}

}  // namespace intermithash
