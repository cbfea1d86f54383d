#include "intermithash/construction.hpp"

#include <gtest/gtest.h>

#include <set>

#include "intermithash/registry.hpp"
#include "intermithash/rng.hpp"

using namespace intermithash;

namespace {

// E_k(x) = x
class IdentityCipher final : public BlockCipher {
 public:
  explicit IdentityCipher(std::size_t block, std::size_t key) : block_(block), key_(key) {}
  std::size_t block_bytes() const override { return block_; }
  std::size_t key_bytes() const override { return key_; }
  std::string name() const override { return "identity"; }
  void encrypt(const std::uint8_t*, const std::uint8_t* pt, std::uint8_t* out) const override {
    std::copy(pt, pt + block_, out);
  }

 private:
  std::size_t block_, key_;
};

Construction stub(ConstructionKind kind) {
  return Construction{kind, std::make_shared<IdentityCipher>(16, 16), GMode::ZeroPad,
                      Block::zeros(16)};
}

Block random_block(Rng& rng, std::size_t n) {
  Block b(n);
  rng.fill(b.data(), n);
  return b;
}

Bytes random_bytes(Rng& rng, std::size_t n) {
  Bytes b(n);
  rng.fill(b.data(), n);
  return b;
}

const Bytes kZero16(16, 0);

}  // namespace

TEST(PadMessage, TenBytesToOneFragment) {
  const Bytes msg = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto p = pad_message(msg, 16);
  ASSERT_EQ(p.fragment_count(), 1u);
  Bytes expect = msg;
  expect.resize(16, 0);
  EXPECT_EQ(Bytes(p.fragment(0).begin(), p.fragment(0).end()), expect);
  EXPECT_EQ(p.original_len_bytes, 10u);
}

TEST(PadMessage, ExactMultipleUnchanged) {
  Bytes msg(16);
  for (int i = 0; i < 16; ++i) msg[i] = static_cast<std::uint8_t>(i + 1);
  auto p = pad_message(msg, 16);
  ASSERT_EQ(p.fragment_count(), 1u);
  EXPECT_EQ(p.data, msg);
}

TEST(PadMessage, EmptyIsOneZeroFragment) {
  auto p = pad_message({}, 16);
  ASSERT_EQ(p.fragment_count(), 1u);
  EXPECT_EQ(p.data, kZero16);
  EXPECT_THROW(pad_message({}, 0), std::invalid_argument);
}

TEST(PadMessage, MinimalZeroPadding) {
  Rng rng(3);
  for (std::size_t len = 0; len < 100; ++len) {
    for (std::size_t fb : {1u, 8u, 16u, 64u}) {
      Bytes msg = random_bytes(rng, len);
      auto p = pad_message(msg, fb);
      EXPECT_EQ(p.data.size() % fb, 0u);
      EXPECT_GE(p.data.size(), std::max<std::size_t>(len, 1));
      EXPECT_LT(p.data.size(), std::max<std::size_t>(len, 1) + fb);
      EXPECT_TRUE(std::equal(msg.begin(), msg.end(), p.data.begin()));
      EXPECT_TRUE(std::all_of(p.data.begin() + static_cast<long>(len), p.data.end(),
                              [](std::uint8_t b) { return b == 0; }));
    }
  }
}

TEST(GMap, IdentityWhenWidthsMatch) {
  Rng rng(1);
  Block v = random_block(rng, 16);
  EXPECT_EQ(g_map(v, 128, GMode::ZeroPad), v);
  EXPECT_EQ(g_map(v, 128, GMode::Duplicate), v);
}

TEST(GMap, DuplicateAndZeroPad) {
  const Bytes b = {0xab, 0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07};
  Block v(b);
  EXPECT_EQ(to_hex(g_map(v, 128, GMode::Duplicate).view()), "ab01020304050607ab01020304050607");
  EXPECT_EQ(to_hex(g_map(v, 128, GMode::ZeroPad).view()), "ab010203040506070000000000000000");
  // narrowing truncates in both modes
  EXPECT_EQ(to_hex(g_map(v, 32, GMode::ZeroPad).view()), "ab010203");
  EXPECT_EQ(to_hex(g_map(v, 32, GMode::Duplicate).view()), "ab010203");
  // 3-byte source duplicated to 8: repeat then truncate
  EXPECT_EQ(to_hex(g_map(Block(Bytes{1, 2, 3}), 64, GMode::Duplicate).view()), "0102030102030102");
  EXPECT_THROW(g_map(v, 0, GMode::ZeroPad), std::invalid_argument);
  EXPECT_THROW(g_map(Block(), 64, GMode::ZeroPad), std::invalid_argument);
}

TEST(Compress, IdentityStubAlgebra) {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    ChainState s{random_block(rng, 16), 0};
    Bytes m = random_bytes(rng, 16);
    EXPECT_EQ(compress_dm(stub(ConstructionKind::DM), s, m).h, Block::zeros(16));
    EXPECT_EQ(compress_mmo(stub(ConstructionKind::MMO), s, m).h, Block::zeros(16));
    EXPECT_EQ(compress_mp(stub(ConstructionKind::MP), s, m).h, s.h);
    EXPECT_EQ(compress_mp(stub(ConstructionKind::MP), s, m).blocks_consumed, 1u);
  }
}

TEST(Compress, ZeroStateZeroFragmentGivesZeroZeroCiphertext) {
  const Block zz = speck_encrypt(kSpeck128_128, kZero16, kZero16);
  ChainState s{Block::zeros(16), 0};
  for (auto kind : {ConstructionKind::DM, ConstructionKind::MMO, ConstructionKind::MP}) {
    auto c = Construction::speck(kind, kSpeck128_128);
    EXPECT_EQ(compress(c, s, kZero16).h, zz) << to_string(kind);
  }
}

TEST(Compress, MmoEqualsMpFromZeroChain) {
  Rng rng(4);
  auto mmo = Construction::speck(ConstructionKind::MMO, kSpeck128_128);
  auto mp = Construction::speck(ConstructionKind::MP, kSpeck128_128);
  ChainState s{Block::zeros(16), 0};
  for (int t = 0; t < 200; ++t) {
    Bytes m = random_bytes(rng, 16);
    EXPECT_EQ(compress_mmo(mmo, s, m).h, compress_mp(mp, s, m).h);
  }
}

TEST(Compress, DmSingleBitFlipsAgainstLiteralFormula) {
  Rng rng(12);
  auto dm = Construction::speck(ConstructionKind::DM, kSpeck128_128);
  ChainState s{random_block(rng, 16), 3};
  Bytes m = random_bytes(rng, 16);
  const Block base = compress_dm(dm, s, m).h;
  std::set<Bytes> seen{base.to_bytes()};
  for (int bit = 0; bit < 128; ++bit) {
    Bytes m2 = m;
    m2[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    const Block got = compress_dm(dm, s, m2).h;
    const Block literal = speck_encrypt(kSpeck128_128, m2, s.h.view()) ^ s.h;
    EXPECT_EQ(got, literal);
    EXPECT_FALSE(got == base);
    seen.insert(got.to_bytes());
  }
  EXPECT_EQ(seen.size(), 129u);
}

TEST(Compress, MpAgainstLiteralFormulaAllVariants) {
  Rng rng(13);
  for (auto variant : {kSpeck64_128, kSpeck128_128}) {
    for (auto g : {GMode::ZeroPad, GMode::Duplicate}) {
      auto mp = Construction::speck(ConstructionKind::MP, variant, g);
      auto mmo = Construction::speck(ConstructionKind::MMO, variant, g);
      for (int t = 0; t < 50; ++t) {
        ChainState s{random_block(rng, variant.block_bytes()), 0};
        Bytes m = random_bytes(rng, variant.block_bytes());
        const Block key = g_map(s.h, variant.key_bits, g);
        const Block v = speck_encrypt(variant, key.view(), m);
        const Block mb(m);
        EXPECT_EQ(compress_mp(mp, s, m).h, v ^ mb ^ s.h);
        EXPECT_EQ(compress_mmo(mmo, s, m).h, v ^ mb);
      }
    }
  }
}

TEST(Compress, WidthMismatchThrows) {
  auto dm = Construction::speck(ConstructionKind::DM, kSpeck64_128);
  ChainState s{Block::zeros(8), 0};
  EXPECT_THROW(compress_dm(dm, s, Bytes(8)), std::invalid_argument);  // DM wants key width
  EXPECT_NO_THROW(compress_dm(dm, s, Bytes(16)));
  EXPECT_THROW(compress_mmo(dm, s, Bytes(16)), std::invalid_argument);  // MMO wants block width
  EXPECT_NO_THROW(compress_mmo(dm, s, Bytes(8)));
  EXPECT_THROW(compress_mp(dm, ChainState{Block::zeros(16), 0}, Bytes(8)), std::invalid_argument);
}

TEST(Compress, GModesDifferOnlyWhenWidening) {
  ChainState s{Block(Bytes{1, 2, 3, 4, 5, 6, 7, 8}), 0};
  Bytes m(8, 0x11);
  auto zp = Construction::speck(ConstructionKind::MMO, kSpeck64_128, GMode::ZeroPad);
  auto dup = Construction::speck(ConstructionKind::MMO, kSpeck64_128, GMode::Duplicate);
  EXPECT_FALSE(compress(zp, s, m).h == compress(dup, s, m).h);
  ChainState s16{Block(Bytes(16, 7)), 0};
  Bytes m16(16, 0x11);
  auto zp128 = Construction::speck(ConstructionKind::MMO, kSpeck128_128, GMode::ZeroPad);
  auto dup128 = Construction::speck(ConstructionKind::MMO, kSpeck128_128, GMode::Duplicate);
  EXPECT_EQ(compress(zp128, s16, m16).h, compress(dup128, s16, m16).h);
}

TEST(Hash, DmOfEmptyMessage) {
  auto dm = Construction::speck(ConstructionKind::DM, kSpeck128_128);
  const Block expect = speck_encrypt(kSpeck128_128, kZero16, dm.iv.view()) ^ dm.iv;
  EXPECT_EQ(hash(dm, {}).bytes(), expect.to_bytes());
  // non-zero IV
  dm.iv = Block(Bytes{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16});
  const Block expect2 = speck_encrypt(kSpeck128_128, kZero16, dm.iv.view()) ^ dm.iv;
  EXPECT_EQ(hash(dm, {}).bytes(), expect2.to_bytes());
}

TEST(Hash, FoldsCompressionOverFragments) {
  Rng rng(21);
  for (auto kind : {ConstructionKind::DM, ConstructionKind::MMO, ConstructionKind::MP}) {
    auto c = Construction::speck(kind, kSpeck128_128);
    for (std::size_t len : {0u, 1u, 15u, 16u, 17u, 47u, 48u, 100u}) {
      Bytes msg = random_bytes(rng, len);
      auto p = pad_message(msg, c.fragment_bytes());
      ChainState s{c.iv, 0};
      for (std::size_t i = 0; i < p.fragment_count(); ++i) s = compress(c, s, p.fragment(i));
      EXPECT_EQ(hash(c, msg).bytes(), s.h.to_bytes());
      EXPECT_EQ(s.blocks_consumed, p.fragment_count());
    }
  }
}

TEST(Hash, TrailingZeroAliasing) {
  Rng rng(31);
  for (const char* name : {"dm-speck128", "mmo-speck128", "mp-speck128"}) {
    auto h = find_hash(name);
    int equal_nonzero = 0;
    for (int t = 0; t < 10000; ++t) {
      std::size_t len = 1 + rng.below(100);
      if (len % 16 == 0) ++len;
      Bytes m = random_bytes(rng, len);
      Bytes m0 = m;
      m0.push_back(0);
      Bytes m1 = m;
      m1.push_back(static_cast<std::uint8_t>(1 + rng.below(255)));
      const Digest d = h->hash(m);
      ASSERT_EQ(d, h->hash(m0));
      if (d == h->hash(m1)) ++equal_nonzero;
    }
    EXPECT_EQ(equal_nonzero, 0) << name;
  }
}

TEST(Hash, BlockCountSensitivity) {
  // Chain the compression of an all-zero fragment n = 1..4096 times; every
  // state must be distinct, and hash() of n*16 zero bytes must agree.
  for (auto kind : {ConstructionKind::DM, ConstructionKind::MMO, ConstructionKind::MP}) {
    auto c = Construction::speck(kind, kSpeck128_128);
    std::set<Bytes> states;
    ChainState s{c.iv, 0};
    for (std::size_t n = 1; n <= 4096; ++n) {
      s = compress(c, s, kZero16);
      states.insert(s.h.to_bytes());
      if (n == 1 || n == 2 || n == 77 || n == 4096) {
        EXPECT_EQ(hash(c, Bytes(16 * n, 0)).bytes(), s.h.to_bytes());
        EXPECT_EQ(hash(c, Bytes(16 * n - 5, 0)).bytes(), s.h.to_bytes());
      }
    }
    EXPECT_EQ(states.size(), 4096u) << to_string(kind);
  }
}

TEST(Hash, DeterministicAndFixedWidth) {
  Rng rng(8);
  for (const auto& name : hash_names()) {
    auto h = find_hash(name);
    for (std::size_t len : {0u, 3u, 64u, 1000u}) {
      Bytes m = random_bytes(rng, len);
      const Digest a = h->hash(m), b = h->hash(m);
      EXPECT_EQ(a, b);
      EXPECT_EQ(a.size(), h->digest_bytes());
    }
  }
  EXPECT_EQ(find_hash("dm-speck128")->digest_bytes() * 8, 128u);
  EXPECT_EQ(find_hash("dm-speck64")->digest_bytes() * 8, 64u);
}

TEST(Hash, StreamingMatchesOneShotForRandomChunkings) {
  Rng rng(99);
  for (const auto& name : hash_names()) {
    auto h = find_hash(name);
    for (int t = 0; t < 60; ++t) {
      Bytes m = random_bytes(rng, rng.below(300));
      auto s = h->stream();
      std::size_t pos = 0;
      while (pos < m.size()) {
        std::size_t n = std::min<std::size_t>(m.size() - pos, rng.below(70));
        s->update(ByteView(m).subspan(pos, n));
        pos += n;
      }
      EXPECT_EQ(s->finish(), h->hash(m)) << name << " len " << m.size();
    }
  }
}

TEST(Hash, StreamingCountsOneCipherCallPerFragment) {
  auto h = find_hash("dm-speck128");
  for (std::size_t len : {0u, 10u, 16u, 17u, 1280u}) {
    auto s = h->stream();
    s->update(Bytes(len, 0x42));
    s->finish();
    const std::uint64_t frags = std::max<std::size_t>(1, (len + 15) / 16);
    EXPECT_EQ(s->counters().compressions, frags);
    EXPECT_EQ(s->counters().cipher_calls, frags);
  }
}

TEST(Registry, UnknownNameThrows) {
  EXPECT_THROW(find_hash("sha1"), UnknownHashError);
  for (const char* n : {"md5", "blake2s", "dm-speck128", "mmo-speck128", "mp-speck128"})
    EXPECT_EQ(find_hash(n)->name(), n);
}
