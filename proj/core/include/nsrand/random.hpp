#pragma once

#include <array>
#include <cstdint>

namespace nsrand {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A (key, counter)
/// pair maps to four independent 32-bit words; no state is carried between calls.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
  static Key key_from_seed(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }
};

/// Uniform double in (0, 1] from two 32-bit words (53 bits of mantissa).
double uniform_open_closed(std::uint32_t hi, std::uint32_t lo) noexcept;

/// Deterministic random stream addressed by (seed, counter): each call to a
/// draw_* function consumes one Philox block.
struct StreamAddress {
  std::uint64_t seed = 0;
  Philox4x32::Counter counter{};
};

double draw_uniform(const StreamAddress& at) noexcept;         ///< in (0, 1]
double draw_standard_normal(const StreamAddress& at) noexcept;  ///< Box-Muller
double draw_rademacher(const StreamAddress& at) noexcept;       ///< +-1

}  // namespace nsrand
