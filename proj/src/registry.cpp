#include "intermithash/registry.hpp"

#include <utility>

#include "intermithash/blake2s.hpp"
#include "intermithash/construction.hpp"
#include "intermithash/md5.hpp"

namespace intermithash {
namespace {

template <class State>
class ReferenceHash final : public HashAlgorithm {
 public:
  explicit ReferenceHash(std::string name) : name_(std::move(name)) {}

  std::string name() const override { return name_; }
  std::size_t digest_bytes() const override { return State::kDigestBytes; }
  std::size_t block_bytes() const override { return State::kBlockBytes; }
  std::size_t state_bytes() const override { return State::kStateBytes; }
  std::unique_ptr<StreamingHasher> stream() const override {
    return std::make_unique<StreamingAdapter<State>>(State{});
  }
  void hash(ByteView message, MutableByteView out) const override {
    State s;
    s.update(message);
    s.finish(out);
  }
  using HashAlgorithm::hash;

 private:
  std::string name_;
};

using Entry = std::pair<std::string, std::shared_ptr<const HashAlgorithm>>;

std::vector<Entry> build_registry() {
  std::vector<Entry> r;
  auto add = [&r](std::shared_ptr<const HashAlgorithm> h) { r.emplace_back(h->name(), std::move(h)); };
  auto speck = [&](const char* name, ConstructionKind k, const SpeckVariant& v, GMode g) {
    add(make_construction_hash(name, Construction::speck(k, v, g)));
  };

  add(std::make_shared<ReferenceHash<Md5>>("md5"));
  add(std::make_shared<ReferenceHash<Blake2s>>("blake2s"));
  speck("dm-speck128", ConstructionKind::DM, kSpeck128_128, GMode::ZeroPad);
  speck("mmo-speck128", ConstructionKind::MMO, kSpeck128_128, GMode::ZeroPad);
  speck("mp-speck128", ConstructionKind::MP, kSpeck128_128, GMode::ZeroPad);
  speck("dm-speck64", ConstructionKind::DM, kSpeck64_128, GMode::ZeroPad);
  speck("mmo-speck64", ConstructionKind::MMO, kSpeck64_128, GMode::ZeroPad);
  speck("mmo-speck64-dup", ConstructionKind::MMO, kSpeck64_128, GMode::Duplicate);
  speck("mp-speck64", ConstructionKind::MP, kSpeck64_128, GMode::ZeroPad);
  speck("mp-speck64-dup", ConstructionKind::MP, kSpeck64_128, GMode::Duplicate);
  return r;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = build_registry();
  return r;
}

}  // namespace

std::shared_ptr<const HashAlgorithm> find_hash(std::string_view name) {
  for (const auto& [n, h] : registry())
    if (n == name) return h;
  throw UnknownHashError(std::string(name));
}

std::vector<std::string> hash_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.first);
  return out;
}

std::vector<std::string> default_quality_hashes() {
  return {"md5", "dm-speck128", "mmo-speck128", "mp-speck128"};
}

std::vector<std::string> default_bench_hashes() {
  return {"md5", "blake2s", "dm-speck128", "mmo-speck128", "mp-speck128"};
}

}  // namespace intermithash
