#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "intermithash/bytes.hpp"
#include "intermithash/hash.hpp"
#include "intermithash/speck.hpp"

namespace intermithash {

/// Single-block-length compression functions built from a block cipher E.
///   DM:  H_i = E_{m_i}(H_{i-1}) ^ H_{i-1}
///   MMO: H_i = E_{g(H_{i-1})}(m_i) ^ m_i
///   MP:  H_i = E_{g(H_{i-1})}(m_i) ^ m_i ^ H_{i-1}
enum class ConstructionKind { DM, MMO, MP };

/// How g widens (or narrows) the chaining value to the cipher's key width.
enum class GMode { ZeroPad, Duplicate };

std::string to_string(ConstructionKind kind);
std::string to_string(GMode mode);

/// Merkle-Damgard iteration over one compression function. Messages are
/// zero-padded to a whole number of fragments with no length block, so
/// trailing zero bytes inside the final fragment do not change the digest.
struct Construction {
  ConstructionKind kind = ConstructionKind::DM;
  std::shared_ptr<const BlockCipher> cipher;
  GMode g_mode = GMode::ZeroPad;
  Block iv;

  /// DM consumes key-width fragments, MMO/MP block-width fragments.
  std::size_t fragment_bytes() const;
  std::size_t digest_bytes() const { return cipher->block_bytes(); }

  /// SPECK-backed construction with an all-zero IV.
  static Construction speck(ConstructionKind kind, const SpeckVariant& variant,
                            GMode g_mode = GMode::ZeroPad);
};

struct ChainState {
  Block h;
  std::uint64_t blocks_consumed = 0;
};

/// Message split into equal-width fragments; stored contiguously.
struct PaddedMessage {
  Bytes data;
  std::size_t fragment_bytes = 0;
  std::size_t original_len_bytes = 0;

  std::size_t fragment_count() const { return data.size() / fragment_bytes; }
  ByteView fragment(std::size_t i) const {
    return ByteView(data).subspan(i * fragment_bytes, fragment_bytes);
  }
};

/// Appends the minimum number of zero bytes; the empty message becomes one
/// all-zero fragment. Throws std::invalid_argument if fragment_bytes is 0.
PaddedMessage pad_message(ByteView message, std::size_t fragment_bytes);

/// Width adaptation for the key port. `target_bits` must be a positive
/// multiple of 8 and at most 128.
Block g_map(const Block& value, std::size_t target_bits, GMode mode);

ChainState compress_dm(const Construction& c, const ChainState& state, ByteView fragment);
ChainState compress_mmo(const Construction& c, const ChainState& state, ByteView fragment);
ChainState compress_mp(const Construction& c, const ChainState& state, ByteView fragment);
/// Dispatches on c.kind.
ChainState compress(const Construction& c, const ChainState& state, ByteView fragment);

Digest hash(const Construction& c, ByteView message);

/// Allocation-free one-shot form; `out` must be c.digest_bytes() long.
void hash_into(const Construction& c, ByteView message, MutableByteView out,
               HashCounters* counters = nullptr);

/// Streaming form of `hash`; counts one compression and one cipher call per fragment.
class ConstructionState {
 public:
  explicit ConstructionState(const Construction& c);

  void update(ByteView data);
  void finish(MutableByteView out);
  HashCounters counters() const { return counters_; }
  std::size_t digest_bytes() const { return chain_.h.size(); }
  const ChainState& chain() const { return chain_; }

 private:
  void absorb(const std::uint8_t* fragment);

  Construction construction_;
  ChainState chain_;
  Block buffer_;
  std::size_t buffered_ = 0;
  std::uint64_t total_ = 0;
  HashCounters counters_;
};

/// Construction exposed through the common hashing interface under `name`.
std::shared_ptr<const HashAlgorithm> make_construction_hash(std::string name,
                                                            Construction construction);

}  // namespace intermithash
