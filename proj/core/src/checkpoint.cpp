#include "nsrand/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "nsrand/error.hpp"

namespace nsrand {

namespace {

constexpr char kMagic[4] = {'N', 'S', 'R', 'W'};
constexpr std::size_t kHeaderBytes = 4 + 3 * 4 + 3 * 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw CheckpointError("checkpoint truncated");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 4;
};

// Lattice indices in ascending frequency order, axis 0 slowest.
std::vector<std::size_t> centered_order(const Grid& grid) {
  const int n = grid.points();
  const int d = grid.dim();
  std::vector<std::size_t> order;
  order.reserve(grid.size());
  Mode m{0, 0, 0};
  std::size_t total = grid.size();
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    for (int a = d - 1; a >= 0; --a) {
      m[static_cast<std::size_t>(a)] = static_cast<int>(rest % static_cast<std::size_t>(n)) - n / 2;
      rest /= static_cast<std::size_t>(n);
    }
    order.push_back(grid.index_of(m));
  }
  return order;
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const SpectralField& field, double time, double cutoff) {
  require_space(field, Space::fourier, "save_checkpoint");
  if (!field.is_vector()) throw InvalidArgument("save_checkpoint: expected a vector field");
  const Grid& grid = field.grid();
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(kHeaderBytes + field.values().size() * 16);
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(grid.dim()));
  put_u32(out, static_cast<std::uint32_t>(grid.points()));
  put_f64(out, grid.length());
  put_f64(out, time);
  put_f64(out, cutoff);
  const auto order = centered_order(grid);
  for (std::size_t c = 0; c < field.components(); ++c) {
    auto v = field.component(c);
    for (std::size_t idx : order) {
      put_f64(out, v[idx].real());
      put_f64(out, v[idx].imag());
    }
  }
  return out;
}

Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw CheckpointError("checkpoint has bad magic (expected NSRW)");
  }
  Reader in(bytes);
  const std::uint32_t version = in.u32();
  if (version != kCheckpointVersion) {
    throw CheckpointError("checkpoint version " + std::to_string(version) + " is not supported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint32_t d = in.u32();
  const std::uint32_t n = in.u32();
  const double length = in.f64();
  const double time = in.f64();
  const double cutoff = in.f64();
  Grid grid = [&] {
    try {
      return Grid::make(static_cast<int>(d), static_cast<int>(n), length);
    } catch (const InvalidArgument& e) {
      throw CheckpointError(std::string("checkpoint header describes an invalid grid: ") + e.what());
    }
  }();
  const std::size_t expected = grid.size() * d * 16;
  if (in.remaining() < expected) throw CheckpointError("checkpoint truncated");
  if (in.remaining() > expected) throw CheckpointError("checkpoint has trailing bytes");

  SpectralField field = SpectralField::vector(grid);
  const auto order = centered_order(grid);
  for (std::size_t c = 0; c < field.components(); ++c) {
    auto v = field.component(c);
    for (std::size_t idx : order) {
      const double re = in.f64();
      const double im = in.f64();
      v[idx] = Complex(re, im);
    }
  }
  return {std::move(field), time, cutoff};
}

void save_checkpoint(const SpectralField& field, double time, double cutoff, const std::filesystem::path& path) {
  const auto bytes = encode_checkpoint(field, time, cutoff);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace nsrand
