#include "intermithash/speck.hpp"

#include <bit>
#include <stdexcept>

namespace intermithash {
namespace {

constexpr int kAlpha = 8;
constexpr int kBeta = 3;

template <class Word>
inline void round_fn(Word& x, Word& y, Word k) {
  x = static_cast<Word>(std::rotr(x, kAlpha) + y) ^ k;
  y = std::rotl(y, kBeta) ^ x;
}

template <class Word>
Word load_word(const std::uint8_t* p) {
  if constexpr (sizeof(Word) == 8) {
    return load_le64(p);
  } else {
    return load_le32(p);
  }
}

template <class Word>
void store_word(std::uint8_t* p, Word v) {
  if constexpr (sizeof(Word) == 8) {
    store_le64(p, v);
  } else {
    store_le32(p, v);
  }
}

// Encryption with on-the-fly key expansion: the key words (k0, l0, l1, ...)
// advance through the same round function as the data, with the round index
// as the "key" of the schedule step.
template <class Word, std::size_t KeyWords, std::size_t Rounds>
void encrypt_words(const std::uint8_t* key, const std::uint8_t* pt, std::uint8_t* ct) {
  Word k = load_word<Word>(key);
  Word l[KeyWords - 1];
  for (std::size_t i = 0; i + 1 < KeyWords; ++i) l[i] = load_word<Word>(key + sizeof(Word) * (i + 1));

  Word y = load_word<Word>(pt);
  Word x = load_word<Word>(pt + sizeof(Word));
  for (std::size_t i = 0; i < Rounds; ++i) {
    round_fn(x, y, k);
    Word& li = l[i % (KeyWords - 1)];
    round_fn(li, k, static_cast<Word>(i));
  }
  store_word<Word>(ct, y);
  store_word<Word>(ct + sizeof(Word), x);
}

void check_variant(const SpeckVariant& v) {
  if (v != kSpeck64_128 && v != kSpeck128_128)
    throw std::invalid_argument("unsupported SPECK variant");
}

template <class Word, std::size_t KeyWords, std::size_t Rounds>
std::vector<std::uint64_t> schedule_words(ByteView key) {
  Word k = load_word<Word>(key.data());
  Word l[KeyWords - 1];
  for (std::size_t i = 0; i + 1 < KeyWords; ++i)
    l[i] = load_word<Word>(key.data() + sizeof(Word) * (i + 1));
  std::vector<std::uint64_t> out;
  out.reserve(Rounds);
  for (std::size_t i = 0; i < Rounds; ++i) {
    out.push_back(k);
    round_fn(l[i % (KeyWords - 1)], k, static_cast<Word>(i));
  }
  return out;
}

}  // namespace

std::string SpeckVariant::name() const {
  return "speck" + std::to_string(block_bits) + "/" + std::to_string(key_bits);
}

std::vector<std::uint64_t> speck_key_schedule(const SpeckVariant& variant, ByteView key) {
  check_variant(variant);
  if (key.size() != variant.key_bytes())
    throw std::invalid_argument("speck_key_schedule: key must be " +
                                std::to_string(variant.key_bytes()) + " bytes");
  if (variant == kSpeck64_128) return schedule_words<std::uint32_t, 4, 27>(key);
  return schedule_words<std::uint64_t, 2, 32>(key);
}

Block speck_encrypt(const SpeckVariant& variant, ByteView key, ByteView plaintext) {
  check_variant(variant);
  if (key.size() != variant.key_bytes())
    throw std::invalid_argument("speck_encrypt: key must be " +
                                std::to_string(variant.key_bytes()) + " bytes");
  if (plaintext.size() != variant.block_bytes())
    throw std::invalid_argument("speck_encrypt: block must be " +
                                std::to_string(variant.block_bytes()) + " bytes");
  Block out(variant.block_bytes());
  SpeckCipher(variant).encrypt(key.data(), plaintext.data(), out.data());
  return out;
}

SpeckCipher::SpeckCipher(SpeckVariant variant) : variant_(variant) { check_variant(variant_); }

void SpeckCipher::encrypt(const std::uint8_t* key, const std::uint8_t* plaintext,
                          std::uint8_t* out) const {
  if (variant_.block_bits == 128) {
    encrypt_words<std::uint64_t, 2, 32>(key, plaintext, out);
  } else {
    encrypt_words<std::uint32_t, 4, 27>(key, plaintext, out);
  }
}

std::shared_ptr<const BlockCipher> make_speck(const SpeckVariant& variant) {
  return std::make_shared<SpeckCipher>(variant);
}

}  // namespace intermithash
