#include "nsrand/random.hpp"

#include <cmath>
#include <numbers>

namespace nsrand {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

double uniform_open_closed(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

double draw_uniform(const StreamAddress& at) noexcept {
  const auto w = Philox4x32::generate(at.counter, Philox4x32::key_from_seed(at.seed));
  return uniform_open_closed(w[0], w[1]);
}

double draw_standard_normal(const StreamAddress& at) noexcept {
  const auto w = Philox4x32::generate(at.counter, Philox4x32::key_from_seed(at.seed));
  const double u1 = uniform_open_closed(w[0], w[1]);
  const double u2 = uniform_open_closed(w[2], w[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double draw_rademacher(const StreamAddress& at) noexcept {
  const auto w = Philox4x32::generate(at.counter, Philox4x32::key_from_seed(at.seed));
  return (w[0] >> 31) != 0u ? 1.0 : -1.0;
}

}  // namespace nsrand
