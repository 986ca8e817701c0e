#include "twophase/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twophase::kernels {

#if !defined(TWOPHASE_BUILD_AVX2)
namespace avx2 {
void draw_arc_coins(std::uint64_t, std::uint32_t, const std::uint32_t*, std::size_t, std::uint8_t*) {
  throw std::logic_error("AVX2 kernels were not built");
}
}  // namespace avx2
#endif

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("TWOPHASE_ISA")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::kScalar;
    if (v == "avx2" && isa_available(Isa::kAvx2)) return Isa::kAvx2;
  }
  return best_available_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(TWOPHASE_BUILD_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa best_available_isa() { return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument(std::string("ISA not available: ") + isa_name(isa));
  }
  active().store(isa, std::memory_order_relaxed);
}

void draw_arc_coins(std::uint64_t world_key, std::uint32_t first_arc,
                    std::span<const std::uint32_t> thresholds, std::span<std::uint8_t> live) {
  if (thresholds.size() != live.size()) {
    throw std::invalid_argument("draw_arc_coins: thresholds and output differ in length");
  }
  if (active_isa() == Isa::kAvx2) {
    avx2::draw_arc_coins(world_key, first_arc, thresholds.data(), thresholds.size(), live.data());
  } else {
    scalar::draw_arc_coins(world_key, first_arc, thresholds.data(), thresholds.size(), live.data());
  }
}

}  // namespace twophase::kernels
