#include <gtest/gtest.h>
#include <openssl/evp.h>

#include "intermithash/blake2s.hpp"
#include "intermithash/md5.hpp"
#include "intermithash/registry.hpp"
#include "intermithash/rng.hpp"

using namespace intermithash;

namespace {

#include "../data/blake2s_kat.inc"

Bytes openssl_digest(const EVP_MD* md, ByteView msg) {
  Bytes out(EVP_MD_get_size(md));
  unsigned int n = 0;
  EVP_Digest(msg.data(), msg.size(), out.data(), &n, md, nullptr);
  out.resize(n);
  return out;
}

}  // namespace

TEST(Md5, Rfc1321Suite) {
  const std::pair<const char*, const char*> suite[] = {
      {"", "d41d8cd98f00b204e9800998ecf8427e"},
      {"a", "0cc175b9c0f1b6a831c399e269772661"},
      {"abc", "900150983cd24fb0d6963f7d28e17f72"},
      {"message digest", "f96b697d7cb7938d525a2f31aaf161d0"},
      {"abcdefghijklmnopqrstuvwxyz", "c3fcd3d76192e4007dfb496cca67e13b"},
      {"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789",
       "d174ab98d277d9f5a5611c2c9f419d9f"},
      {"12345678901234567890123456789012345678901234567890123456789012345678901234567890",
       "57edf4a22be3c955ac49da2e2107b67a"},
  };
  for (const auto& [msg, hex] : suite) EXPECT_EQ(md5(as_bytes(msg)).hex(), hex) << msg;
}

TEST(Md5, TrailingZeroChangesDigest) {
  Rng rng(1);
  for (std::size_t len = 0; len < 130; ++len) {
    Bytes m(len);
    rng.fill(m.data(), len);
    Bytes m0 = m;
    m0.push_back(0);
    EXPECT_NE(md5(m), md5(m0));
  }
}

TEST(Md5, CompressionCountIncludesLengthBlock) {
  Md5 s;
  s.update(Bytes(1280, 1));
  Bytes out(16);
  s.finish(out);
  EXPECT_EQ(s.counters().compressions, 21u);
  Md5 s2;
  s2.update(Bytes(55, 1));
  s2.finish(out);
  EXPECT_EQ(s2.counters().compressions, 1u);
  Md5 s3;
  s3.update(Bytes(56, 1));
  s3.finish(out);
  EXPECT_EQ(s3.counters().compressions, 2u);
}

TEST(Blake2s, ReferenceVectors) {
  EXPECT_EQ(blake2s({}).hex(), "69217a3079908094e11121d042354a7c1f55b6482ca1a51e1b250dfd1ed0eef9");
  EXPECT_EQ(blake2s(as_bytes("abc")).hex(),
            "508c5e8c327c14e2e1a72ba34eeb452f37458b209ed63a294d999b4c86675982");
}

TEST(Blake2s, UnkeyedKnownAnswerSet) {
  Bytes in;
  for (int n = 0; n < 256; ++n) {
    EXPECT_EQ(blake2s(in).hex(), kBlake2sKat[n]) << "len " << n;
    EXPECT_EQ(blake2s(in).size(), 32u);
    in.push_back(static_cast<std::uint8_t>(n));
  }
}

TEST(Blake2s, CompressionCount) {
  Blake2s s;
  s.update(Bytes(1280, 1));
  Bytes out(32);
  s.finish(out);
  EXPECT_EQ(s.counters().compressions, 20u);
}

TEST(RefHashes, AgreeWithOpenSsl) {
  Rng rng(77);
  for (std::size_t len = 0; len < 600; ++len) {
    Bytes m(len);
    rng.fill(m.data(), len);
    EXPECT_EQ(md5(m).bytes(), openssl_digest(EVP_md5(), m)) << len;
    EXPECT_EQ(blake2s(m).bytes(), openssl_digest(EVP_blake2s256(), m)) << len;
  }
  Bytes big(1 << 20);
  rng.fill(big.data(), big.size());
  EXPECT_EQ(md5(big).bytes(), openssl_digest(EVP_md5(), big));
  EXPECT_EQ(blake2s(big).bytes(), openssl_digest(EVP_blake2s256(), big));
}
