#include "twophase/kernels.hpp"

namespace twophase::kernels::scalar {

void draw_arc_coins(std::uint64_t world_key, std::uint32_t first_arc,
                    const std::uint32_t* thresholds, std::size_t count, std::uint8_t* live) {
  for (std::size_t i = 0; i < count; ++i) {
    live[i] = arc_live(world_key, first_arc + static_cast<std::uint32_t>(i), thresholds[i]) ? 1 : 0;
  }
}

}  // namespace twophase::kernels::scalar
