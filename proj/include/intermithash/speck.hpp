#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "intermithash/bytes.hpp"

namespace intermithash {

/// One member of the SPECK family. Only the two 128-bit-key variants are
/// supported: 64/128 (27 rounds) and 128/128 (32 rounds).
struct SpeckVariant {
  std::size_t block_bits;
  std::size_t key_bits;
  std::size_t rounds;
  std::size_t word_bits;

  std::size_t block_bytes() const { return block_bits / 8; }
  std::size_t key_bytes() const { return key_bits / 8; }
  std::size_t key_words() const { return key_bits / word_bits; }
  std::string name() const;

  friend bool operator==(const SpeckVariant&, const SpeckVariant&) = default;
};

inline constexpr SpeckVariant kSpeck64_128{64, 128, 27, 32};
inline constexpr SpeckVariant kSpeck128_128{128, 128, 32, 64};

/// Expands `key` (little-endian words, k0 first) into `variant.rounds` round
/// keys. Words of the 64-bit-block variant are returned zero-extended.
/// Throws std::invalid_argument if the key length does not match.
std::vector<std::uint64_t> speck_key_schedule(const SpeckVariant& variant, ByteView key);

/// Encrypts one block. Block bytes hold the low word y first, then x, each
/// little-endian, matching the designers' reference byte order.
/// Throws std::invalid_argument on key or block length mismatch.
Block speck_encrypt(const SpeckVariant& variant, ByteView key, ByteView plaintext);

/// The black-box cipher E of a block-cipher-based compression function.
class BlockCipher {
 public:
  virtual ~BlockCipher() = default;
  virtual std::size_t block_bytes() const = 0;
  virtual std::size_t key_bytes() const = 0;
  virtual std::string name() const = 0;
  /// `key`, `plaintext` and `out` are pre-validated by the caller.
  virtual void encrypt(const std::uint8_t* key, const std::uint8_t* plaintext,
                       std::uint8_t* out) const = 0;
};

class SpeckCipher final : public BlockCipher {
 public:
  explicit SpeckCipher(SpeckVariant variant);

  std::size_t block_bytes() const override { return variant_.block_bytes(); }
  std::size_t key_bytes() const override { return variant_.key_bytes(); }
  std::string name() const override { return variant_.name(); }
  void encrypt(const std::uint8_t* key, const std::uint8_t* plaintext,
               std::uint8_t* out) const override;

  const SpeckVariant& variant() const { return variant_; }

 private:
  SpeckVariant variant_;
};

std::shared_ptr<const BlockCipher> make_speck(const SpeckVariant& variant);

}  // namespace intermithash
