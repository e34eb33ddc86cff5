#include "nsrand/randomization.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

#include "nsrand/error.hpp"
#include "nsrand/random.hpp"

namespace nsrand {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::rademacher: return "rademacher";
    case Family::gaussian: return "gaussian";
    case Family::uniform: return "uniform";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "rademacher") return Family::rademacher;
  if (name == "gaussian") return Family::gaussian;
  if (name == "uniform") return Family::uniform;
  throw InvalidArgument("unknown distribution family '" + std::string(name) + "'");
}

double subgaussian_constant(Family family) {
  switch (family) {
    case Family::rademacher:
    case Family::gaussian:
      return 0.5;
    case Family::uniform:
      return 1.0 / 6.0;
  }
  return 0.5;
}

CoefficientDraw CoefficientDraw::identity(int max_ring) {
  return {0, std::vector<double>(static_cast<std::size_t>(max_ring), 1.0)};
}

CoefficientDraw sample_coefficients(const RandomModel& model, int max_ring, std::uint64_t sample_index) {
  if (max_ring < 1) throw InvalidArgument("sample_coefficients: max_ring must be >= 1");
  CoefficientDraw draw;
  draw.sample_index = sample_index;
  draw.values.resize(static_cast<std::size_t>(max_ring));
  for (int n = 1; n <= max_ring; ++n) {
    // Word 3 = 0 keeps these blocks disjoint from the data-phase stream.
    const StreamAddress at{model.master_seed,
                           {static_cast<std::uint32_t>(sample_index),
                            static_cast<std::uint32_t>(sample_index >> 32), static_cast<std::uint32_t>(n), 0u}};
    double value = 0.0;
    switch (model.family) {
      case Family::rademacher: value = draw_rademacher(at); break;
      case Family::gaussian: value = draw_standard_normal(at); break;
      case Family::uniform: value = 2.0 * draw_uniform(at) - 1.0; break;
    }
    draw.values[static_cast<std::size_t>(n - 1)] = value;
  }
  return draw;
}

SpectralField randomize(const SpectralField& f, const CoefficientDraw& draw, const RingPartition& partition) {
  require_space(f, Space::fourier, "randomize");
  if (!(partition.grid() == f.grid())) throw InvalidArgument("randomize: partition/grid mismatch");
  if (draw.max_ring() < partition.max_ring()) {
    throw InvalidArgument("randomize: draw has fewer rings than the partition");
  }
  SpectralField out = f;
  apply_symbol_in_place(out, [&](std::size_t idx) { return draw.at(partition.ring(idx)); });
  return out;
}

double hminus_s_norm(const SpectralField& f, double s) {
  require_space(f, Space::fourier, "hminus_s_norm");
  const Grid& grid = f.grid();
  double sum = 0.0;
  for (std::size_t c = 0; c < f.components(); ++c) {
    auto v = f.component(c);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const double a2 = std::norm(v[idx]);
      if (a2 == 0.0) continue;
      sum += (s == 0.0 ? a2 : a2 * std::pow(1.0 + grid.xi_squared(idx), -s));
    }
  }
  return std::sqrt(sum);
}

namespace {

double uniform_log_mgf(double gamma) {
  // (1/2) int_{-1}^{1} e^{gamma x} dx, integrated numerically.
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(
      [gamma](double x) { return 0.5 * std::exp(gamma * x); }, -1.0, 1.0, 15, 1e-14, &error, &l1);
  if (!(error <= 1e-12 * std::max(1.0, std::abs(value)))) {
    throw ConvergenceError("uniform moment generating function quadrature did not converge at gamma = " +
                           std::to_string(gamma));
  }
  return std::log(value);
}

}  // namespace

SubgaussianReport verify_subgaussian(const RandomModel& model, std::span<const double> gamma_grid) {
  SubgaussianReport report{model.family, model.c, {}, {}, -std::numeric_limits<double>::infinity()};
  report.gamma.assign(gamma_grid.begin(), gamma_grid.end());
  report.log_mgf.reserve(gamma_grid.size());
  for (double g : gamma_grid) {
    double log_mgf = 0.0;
    switch (model.family) {
      case Family::rademacher: log_mgf = std::log(std::cosh(g)); break;
      case Family::gaussian: log_mgf = 0.5 * g * g; break;
      case Family::uniform: log_mgf = uniform_log_mgf(g); break;
    }
    report.log_mgf.push_back(log_mgf);
    report.margin = std::max(report.margin, log_mgf - model.c * g * g);
  }
  return report;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace nsrand
