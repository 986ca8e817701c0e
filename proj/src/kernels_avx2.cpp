// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <array>
#include <cstring>

#include "twophase/kernels.hpp"

namespace twophase::kernels::avx2 {

namespace {

// Byte expansion of an 8-bit lane mask: bit i -> byte i set to 1.
constexpr std::array<std::uint64_t, 256> make_expand_table() {
  std::array<std::uint64_t, 256> table{};
  for (unsigned m = 0; m < 256; ++m) {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < 8; ++b) {
      if (m & (1u << b)) v |= std::uint64_t{1} << (8 * b);
    }
    table[m] = v;
  }
  return table;
}

constexpr auto kExpand = make_expand_table();

inline __m256i mix32(__m256i x) {
  const __m256i c1 = _mm256_set1_epi32(static_cast<int>(0x21F0AAADu));
  const __m256i c2 = _mm256_set1_epi32(static_cast<int>(0x735A2D97u));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
  x = _mm256_mullo_epi32(x, c1);
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 15));
  x = _mm256_mullo_epi32(x, c2);
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 15));
  return x;
}

}  // namespace

void draw_arc_coins(std::uint64_t world_key, std::uint32_t first_arc,
                    const std::uint32_t* thresholds, std::size_t count, std::uint8_t* live) {
  const __m256i k0 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(world_key)));
  const __m256i k1 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(world_key >> 32)));
  const __m256i golden = _mm256_set1_epi32(static_cast<int>(0x9E3779B9u));
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i arc =
        _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(first_arc + static_cast<std::uint32_t>(i))), lane);
    __m256i h = mix32(_mm256_xor_si256(_mm256_mullo_epi32(arc, golden), k0));
    h = mix32(_mm256_xor_si256(h, k1));
    const __m256i thr = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(thresholds + i));
    // Unsigned h <= thr  <=>  max(h, thr) == thr.
    const __m256i le = _mm256_cmpeq_epi32(_mm256_max_epu32(h, thr), thr);
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(le));
    std::memcpy(live + i, &kExpand[static_cast<unsigned>(mask)], 8);
  }
  if (i < count) {
    scalar::draw_arc_coins(world_key, first_arc + static_cast<std::uint32_t>(i), thresholds + i,
                           count - i, live + i);
  }
}

}  // namespace twophase::kernels::avx2
