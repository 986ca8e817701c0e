#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace twophase {

// Deterministic, hierarchical seed derivation. A RandomSource is a 64-bit
// key; derive(label, index) gives an independent child whose key depends only
// on the parent key and the derivation path, never on call order. Leaves are
// used either as world keys for the counter-based arc coins or as seeds for a
// sequential engine.
class RandomSource {
 public:
  explicit constexpr RandomSource(std::uint64_t master_seed) : key_(master_seed) {}

  RandomSource derive(std::string_view label, std::uint64_t index = 0) const;
  RandomSource derive(std::uint64_t salt) const;

  std::uint64_t key() const { return key_; }
  std::mt19937_64 engine() const;

  friend bool operator==(const RandomSource&, const RandomSource&) = default;

 private:
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace twophase
