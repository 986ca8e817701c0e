#pragma once

// Counter-based arc coins. A world (live graph) is identified by a 64-bit
// key; arc `a` is live in world `k` iff arc_hash(k, a) <= threshold(a). The
// coins are a pure function of (world, arc), so lazily sampling them during a
// cascade gives exactly the reachability of one fixed live graph, independent
// of traversal order or thread count.
//
// The batch kernel has a scalar reference and an AVX2 variant; the variant is
// picked at runtime and must be bit-identical to the reference.

#include <cstddef>
#include <cstdint>
#include <span>

namespace twophase::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
Isa best_available_isa();

// Kernel used by draw_arc_coins. Starts at best_available_isa(), or at the
// value of TWOPHASE_ISA ("scalar" / "avx2") when set.
Isa active_isa();
// Throws std::invalid_argument if the ISA is not available on this CPU/build.
void set_active_isa(Isa isa);

inline constexpr std::uint32_t mix32(std::uint32_t x) {
  x ^= x >> 16;
  x *= 0x21F0AAADu;
  x ^= x >> 15;
  x *= 0x735A2D97u;
  x ^= x >> 15;
  return x;
}

inline constexpr std::uint32_t arc_hash(std::uint64_t world_key, std::uint32_t arc) {
  const auto k0 = static_cast<std::uint32_t>(world_key);
  const auto k1 = static_cast<std::uint32_t>(world_key >> 32);
  return mix32(mix32((arc * 0x9E3779B9u) ^ k0) ^ k1);
}

inline constexpr bool arc_live(std::uint64_t world_key, std::uint32_t arc, std::uint32_t threshold) {
  return arc_hash(world_key, arc) <= threshold;
}

// live[i] = 1 if arc first_arc + i is live in the world, else 0.
// thresholds and live must have the same length.
void draw_arc_coins(std::uint64_t world_key, std::uint32_t first_arc,
                    std::span<const std::uint32_t> thresholds, std::span<std::uint8_t> live);

namespace scalar {
void draw_arc_coins(std::uint64_t world_key, std::uint32_t first_arc,
                    const std::uint32_t* thresholds, std::size_t count, std::uint8_t* live);
}

namespace avx2 {
void draw_arc_coins(std::uint64_t world_key, std::uint32_t first_arc,
                    const std::uint32_t* thresholds, std::size_t count, std::uint8_t* live);
}

}  // namespace twophase::kernels
