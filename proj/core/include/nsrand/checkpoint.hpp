#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "nsrand/spectral_field.hpp"

namespace nsrand {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  SpectralField field;
  double time = 0.0;
  double cutoff = 0.0;
};

/// Binary layout, little-endian:
///   "NSRW" | version u32 | d u32 | N u32 | L f64 | t f64 | n f64 |
///   per component, (re, im) f64 pairs for frequencies -N/2..N/2-1 on each axis,
///   axis 0 slowest.
std::vector<std::uint8_t> encode_checkpoint(const SpectralField& field, double time, double cutoff);
/// Throws CheckpointError on bad magic, version mismatch, bad header or a payload
/// of the wrong length.
Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const SpectralField& field, double time, double cutoff, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace nsrand
