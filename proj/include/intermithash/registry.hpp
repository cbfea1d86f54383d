#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "intermithash/hash.hpp"

namespace intermithash {

class UnknownHashError : public std::invalid_argument {
 public:
  explicit UnknownHashError(const std::string& name)
      : std::invalid_argument("unknown hash: " + name) {}
};

/// Looks up a hash by its CLI name:
///   md5, blake2s, dm-speck128, mmo-speck128, mp-speck128,
///   and the 64-bit-block variants dm-speck64, mmo-speck64[-dup], mp-speck64[-dup]
///   where "-dup" selects the duplicating g function.
/// Throws UnknownHashError.
std::shared_ptr<const HashAlgorithm> find_hash(std::string_view name);

/// Every registered name, in registration order.
std::vector<std::string> hash_names();

/// The hashes the quality battery and benchmarks cover by default.
std::vector<std::string> default_quality_hashes();
std::vector<std::string> default_bench_hashes();

}  // namespace intermithash
