#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsrand/operators.hpp"
#include "nsrand/spectral_field.hpp"

namespace nsrand {

enum class Family { rademacher, gaussian, uniform };

std::string_view to_string(Family family);
/// Throws InvalidArgument for an unknown name.
Family family_from_string(std::string_view name);

/// Smallest c with E exp(gamma X) <= exp(c gamma^2) for the family:
/// 1/2 for Rademacher and standard Gaussian, 1/6 for Uniform[-1, 1].
double subgaussian_constant(Family family);

/// Distribution of the ring multipliers l_n and the seed every draw derives from.
struct RandomModel {
  Family family = Family::gaussian;
  double c = 0.5;
  std::uint64_t master_seed = 0;

  static RandomModel standard(Family family, std::uint64_t seed) {
    return {family, subgaussian_constant(family), seed};
  }
};

/// One realisation omega: values[n-1] = l_n(omega) for n = 1..max_ring.
struct CoefficientDraw {
  std::uint64_t sample_index = 0;
  std::vector<double> values;

  double at(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
  int max_ring() const noexcept { return static_cast<int>(values.size()); }
  /// All l_n = 1.
  static CoefficientDraw identity(int max_ring);
};

/// Independent draws l_1..l_max_ring. Value n depends only on
/// (master_seed, sample_index, n), so draws are reproducible in any order.
CoefficientDraw sample_coefficients(const RandomModel& model, int max_ring, std::uint64_t sample_index);

/// f^omega = sum_n l_n Delta_n f: each coefficient at xi is scaled by l_{ring(xi)}.
/// Throws InvalidArgument if the partition does not match f's grid or the draw
/// has fewer rings than the partition.
SpectralField randomize(const SpectralField& f, const CoefficientDraw& draw, const RingPartition& partition);

/// ||f||_{H^{-s}} = (sum (1 + |xi|^2)^{-s} |c|^2)^{1/2}.
double hminus_s_norm(const SpectralField& f, double s);

struct SubgaussianReport {
  Family family;
  double c;
  std::vector<double> gamma;
  std::vector<double> log_mgf;  ///< log E exp(gamma X)
  /// max over gamma of log_mgf - c gamma^2; the moment condition holds iff <= 0.
  double margin;
};

/// Evaluates the moment generating function on the grid (closed form for
/// Rademacher and Gaussian, adaptive Gauss-Kronrod for the uniform law).
/// Throws ConvergenceError if the quadrature misses its tolerance.
SubgaussianReport verify_subgaussian(const RandomModel& model, std::span<const double> gamma_grid);

/// n evenly spaced points over [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace nsrand
