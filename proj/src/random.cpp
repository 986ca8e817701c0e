#include "twophase/random.hpp"

namespace twophase {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

RandomSource RandomSource::derive(std::string_view label, std::uint64_t index) const {
  const std::uint64_t labelled = splitmix64(key_ ^ fnv1a(label));
  return RandomSource(splitmix64(labelled + splitmix64(index)));
}

RandomSource RandomSource::derive(std::uint64_t salt) const {
  return RandomSource(splitmix64(key_ ^ splitmix64(salt ^ 0xA5A5A5A5A5A5A5A5ull)));
}

std::mt19937_64 RandomSource::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace twophase
