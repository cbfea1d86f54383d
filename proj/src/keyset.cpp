#include "intermithash/keyset.hpp"

#include <algorithm>

#include "intermithash/rng.hpp"

namespace intermithash {
namespace {

constexpr std::uint64_t kMaxKeyset = std::uint64_t{1} << 40;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMaxKeyset / a) throw CapacityError("keyset too large");
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a + b > kMaxKeyset) throw CapacityError("keyset too large");
  return a + b;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays exact because r == C(n-k+i-1, i-1)
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

void set_bit(Bytes& b, std::size_t bit) { b[bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8)); }

void validate(const CyclicKeys& k) {
  if (k.pattern_bytes == 0 || k.repeats == 0) throw std::invalid_argument("cyclic: empty pattern");
}
void validate(const TwoBytesKeys& k) {
  if (k.max_len == 0) throw std::invalid_argument("twobytes: max_len must be > 0");
}
void validate(const SparseKeys& k) {
  if (k.msg_bits == 0 || k.msg_bits % 8 != 0)
    throw std::invalid_argument("sparse: msg_bits must be a positive multiple of 8");
  if (k.max_set_bits > k.msg_bits) throw std::invalid_argument("sparse: too many set bits");
}
void validate(const PermutationKeys& k) {
  if (k.blocks.empty() || k.max_blocks == 0)
    throw std::invalid_argument("permutation: need at least one block and max_blocks > 0");
}
void validate(const WindowKeys& k) {
  if (k.key_bits == 0 || k.key_bits % 8 != 0)
    throw std::invalid_argument("window: key_bits must be a positive multiple of 8");
  if (k.window_bits == 0 || k.window_bits > 32 || k.window_bits > k.key_bits)
    throw std::invalid_argument("window: window_bits must be in 1..min(32, key_bits)");
}
void validate(const ZerosKeys&) {}

}  // namespace

class KeysetStream::Generator {
 public:
  virtual ~Generator() = default;
  virtual void emit(Bytes& out) = 0;  // called exactly size() times
};

namespace {

class ZerosGen final : public KeysetStream::Generator {
 public:
  void emit(Bytes& out) override { out.assign(len_++, 0); }

 private:
  std::size_t len_ = 0;
};

class CyclicGen final : public KeysetStream::Generator {
 public:
  CyclicGen(CyclicKeys k, std::uint64_t seed) : k_(k), seed_(seed), pattern_(k.pattern_bytes) {}
  void emit(Bytes& out) override {
    Rng rng = Rng::split(seed_, sample_++);
    rng.fill(pattern_.data(), pattern_.size());
    out.resize(k_.pattern_bytes * k_.repeats);
    for (std::size_t r = 0; r < k_.repeats; ++r)
      std::copy(pattern_.begin(), pattern_.end(), out.begin() + static_cast<long>(r * k_.pattern_bytes));
  }

 private:
  CyclicKeys k_;
  std::uint64_t seed_;
  std::uint64_t sample_ = 0;
  Bytes pattern_;
};

// Order: for L = 1..max_len, first every single nonzero byte (position-major),
// then every pair i < j with values a, b in 1..255.
class TwoBytesGen final : public KeysetStream::Generator {
 public:
  void emit(Bytes& out) override {
    out.assign(len_, 0);
    if (phase_ == 0) {
      out[i_] = static_cast<std::uint8_t>(a_);
      if (++a_ > 255) {
        a_ = 1;
        if (++i_ == len_) {
          i_ = 0;
          j_ = 1;
          phase_ = 1;
          if (len_ < 2) next_len();
        }
      }
      return;
    }
    out[i_] = static_cast<std::uint8_t>(a_);
    out[j_] = static_cast<std::uint8_t>(b_);
    if (++b_ > 255) {
      b_ = 1;
      if (++a_ > 255) {
        a_ = 1;
        if (++j_ == len_) {
          ++i_;
          j_ = i_ + 1;
          if (j_ >= len_) next_len();
        }
      }
    }
  }

 private:
  void next_len() {
    ++len_;
    phase_ = 0;
    i_ = 0;
    j_ = 1;
    a_ = b_ = 1;
  }

  std::size_t len_ = 1;
  int phase_ = 0;
  std::size_t i_ = 0, j_ = 1;
  unsigned a_ = 1, b_ = 1;
};

// Lexicographic k-combinations of bit positions for k = 0..max_set_bits.
class SparseGen final : public KeysetStream::Generator {
 public:
  explicit SparseGen(SparseKeys k) : k_(k) {}
  void emit(Bytes& out) override {
    out.assign(k_.msg_bits / 8, 0);
    for (std::size_t p : pos_) set_bit(out, p);
    advance();
  }

 private:
  void advance() {
    const std::size_t k = pos_.size();
    const std::size_t n = k_.msg_bits;
    std::size_t i = k;
    while (i > 0 && pos_[i - 1] == n - k + i - 1) --i;
    if (i == 0) {
      pos_.resize(k + 1);
      for (std::size_t j = 0; j <= k; ++j) pos_[j] = j;
      return;
    }
    ++pos_[i - 1];
    for (std::size_t j = i; j < k; ++j) pos_[j] = pos_[j - 1] + 1;
  }

  SparseKeys k_;
  std::vector<std::size_t> pos_;
};

class PermutationGen final : public KeysetStream::Generator {
 public:
  explicit PermutationGen(PermutationKeys k) : k_(std::move(k)), digits_(1, 0) {}
  void emit(Bytes& out) override {
    out.clear();
    for (std::size_t d : digits_) out.insert(out.end(), k_.blocks[d].begin(), k_.blocks[d].end());
    std::size_t i = digits_.size();
    while (i > 0) {
      if (++digits_[i - 1] < k_.blocks.size()) return;
      digits_[i - 1] = 0;
      --i;
    }
    digits_.push_back(0);
  }

 private:
  PermutationKeys k_;
  std::vector<std::size_t> digits_;
};

class WindowGen final : public KeysetStream::Generator {
 public:
  explicit WindowGen(WindowKeys k) : k_(k) {}
  void emit(Bytes& out) override {
    out.assign(k_.key_bits / 8, 0);
    for (std::size_t b = 0; b < k_.window_bits; ++b)
      if ((value_ >> b) & 1u) set_bit(out, (pos_ + b) % k_.key_bits);
    if (++value_ == (std::uint64_t{1} << k_.window_bits)) {
      value_ = 0;
      ++pos_;
    }
  }

 private:
  WindowKeys k_;
  std::size_t pos_ = 0;
  std::uint64_t value_ = 0;
};

}  // namespace

PermutationKeys PermutationKeys::low_bits(std::size_t max_blocks) {
  PermutationKeys k;
  k.max_blocks = max_blocks;
  for (std::uint32_t v = 0; v < 8; ++v) {
    Bytes b(4);
    store_le32(b.data(), v);
    k.blocks.push_back(b);
  }
  return k;
}

std::string keyset_name(const KeysetSpec& spec) {
  struct Namer {
    std::string operator()(const CyclicKeys&) const { return "cyclic"; }
    std::string operator()(const TwoBytesKeys&) const { return "twobytes"; }
    std::string operator()(const SparseKeys&) const { return "sparse"; }
    std::string operator()(const PermutationKeys&) const { return "permutation"; }
    std::string operator()(const WindowKeys&) const { return "window"; }
    std::string operator()(const ZerosKeys&) const { return "zeros"; }
  };
  return std::visit(Namer{}, spec.kind);
}

std::uint64_t keyset_size(const KeysetSpec& spec) {
  std::visit([](const auto& k) { validate(k); }, spec.kind);
  struct Sizer {
    std::uint64_t operator()(const CyclicKeys& k) const {
      checked_mul(k.pattern_bytes, k.repeats);
      return checked_add(k.sample_count, 0);
    }
    std::uint64_t operator()(const TwoBytesKeys& k) const {
      std::uint64_t n = 0;
      for (std::uint64_t len = 1; len <= k.max_len; ++len) {
        n = checked_add(n, checked_mul(255, len));
        n = checked_add(n, checked_mul(255 * 255, choose(len, 2)));
      }
      return n;
    }
    std::uint64_t operator()(const SparseKeys& k) const {
      std::uint64_t n = 0;
      for (std::uint64_t s = 0; s <= k.max_set_bits; ++s) n = checked_add(n, choose(k.msg_bits, s));
      return n;
    }
    std::uint64_t operator()(const PermutationKeys& k) const {
      std::uint64_t n = 0, p = 1;
      for (std::size_t len = 1; len <= k.max_blocks; ++len) {
        p = checked_mul(p, k.blocks.size());
        n = checked_add(n, p);
      }
      return n;
    }
    std::uint64_t operator()(const WindowKeys& k) const {
      return checked_mul(k.key_bits, std::uint64_t{1} << k.window_bits);
    }
    std::uint64_t operator()(const ZerosKeys& k) const { return checked_add(k.max_len, 0); }
  };
  return std::visit(Sizer{}, spec.kind);
}

std::uint64_t keyset_groups(const KeysetSpec& spec) {
  if (const auto* w = std::get_if<WindowKeys>(&spec.kind)) return w->key_bits;
  return 1;
}

KeysetStream::KeysetStream(const KeysetSpec& spec) : size_(keyset_size(spec)) {
  struct Maker {
    std::uint64_t seed;
    std::unique_ptr<Generator> operator()(const CyclicKeys& k) const {
      return std::make_unique<CyclicGen>(k, seed);
    }
    std::unique_ptr<Generator> operator()(const TwoBytesKeys&) const {
      return std::make_unique<TwoBytesGen>();
    }
    std::unique_ptr<Generator> operator()(const SparseKeys& k) const {
      return std::make_unique<SparseGen>(k);
    }
    std::unique_ptr<Generator> operator()(const PermutationKeys& k) const {
      return std::make_unique<PermutationGen>(k);
    }
    std::unique_ptr<Generator> operator()(const WindowKeys& k) const {
      return std::make_unique<WindowGen>(k);
    }
    std::unique_ptr<Generator> operator()(const ZerosKeys&) const {
      return std::make_unique<ZerosGen>();
    }
  };
  gen_ = std::visit(Maker{spec.seed}, spec.kind);
}

KeysetStream::~KeysetStream() = default;
KeysetStream::KeysetStream(KeysetStream&&) noexcept = default;
KeysetStream& KeysetStream::operator=(KeysetStream&&) noexcept = default;

bool KeysetStream::next(Bytes& out) {
  if (produced_ == size_) return false;
  gen_->emit(out);
  ++produced_;
  return true;
}

std::vector<Bytes> gen_keyset(const KeysetSpec& spec, std::uint64_t max_messages) {
  KeysetStream s(spec);
  if (s.size() > max_messages)
    throw CapacityError("keyset of " + std::to_string(s.size()) + " messages exceeds limit " +
                        std::to_string(max_messages));
  std::vector<Bytes> out(s.size());
  for (auto& m : out) s.next(m);
  return out;
}

std::vector<KeysetSpec> default_keysets(std::uint64_t seed) {
  return {
      KeysetSpec{CyclicKeys{8, 8, 100000}, seed},
      KeysetSpec{TwoBytesKeys{8}, seed},
      KeysetSpec{SparseKeys{512, 3}, seed},
      KeysetSpec{PermutationKeys::low_bits(6), seed},
      KeysetSpec{WindowKeys{64, 20}, seed},
      KeysetSpec{ZerosKeys{65536}, seed},
  };
}

}  // namespace intermithash
