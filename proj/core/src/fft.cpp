#include "nsrand/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "nsrand/error.hpp"

namespace nsrand {
namespace {

// fftw planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int points, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, points, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t size = 1;
    std::vector<int> n(static_cast<std::size_t>(dim), points);
    for (int a = 0; a < dim; ++a) size *= static_cast<std::size_t>(points);
    auto* scratch = fftw_alloc_complex(size);
    // FFTW_UNALIGNED keeps the codelet choice independent of buffer alignment,
    // so every execution of a plan runs the same arithmetic.
    fftw_plan plan = fftw_plan_dft(dim, n.data(), scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw Error("fftw failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

}  // namespace

void transform_in_place(SpectralField& field, Direction direction) {
  const Grid& grid = field.grid();
  const bool forward = direction == Direction::forward;
  require_space(field, forward ? Space::physical : Space::fourier, "transform");

  fftw_plan plan =
      PlanCache::instance().get(grid.dim(), grid.points(), forward ? FFTW_FORWARD : FFTW_BACKWARD);

  const double root_volume = std::sqrt(grid.volume());
  const double scale =
      forward ? root_volume / static_cast<double>(grid.size()) : 1.0 / root_volume;

  for (std::size_t c = 0; c < field.components(); ++c) {
    auto values = field.component(c);
    auto* data = reinterpret_cast<fftw_complex*>(values.data());
    fftw_execute_dft(plan, data, data);
    for (auto& v : values) v *= scale;
  }
  field.set_space(forward ? Space::fourier : Space::physical);
}

SpectralField transform(const SpectralField& field, Direction direction) {
  SpectralField out = field;
  transform_in_place(out, direction);
  return out;
}

}  // namespace nsrand
