#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nsrand/randomization.hpp"
#include "nsrand/spectral_field.hpp"

namespace nsrand {

/// Exponents of the weighted space-time norm
///   || t^gamma (-Delta)^{sigma/2} e^{t Delta} f ||_{L^q([0,T]; L^p_x)}
/// and of the moment L^r(Omega).
struct NormSpec {
  double gamma = 0.0;
  double sigma = 0.0;
  double p = 4.0;
  double q = 4.0;
  double r = 4.0;
  double s = 0.25;
  double horizon = 1.0;
};

/// True iff (sigma + s - 2 gamma) q < 2 and r >= p >= q >= 2.
bool check_admissible(const NormSpec& spec);

/// The weighted space-time norm above, by power-law quadrature on a positive,
/// increasing time grid ending at T. Throws InvalidArgument when the spec is not
/// admissible or q gamma <= -1 (divergent time integral).
double space_time_norm(const SpectralField& f_omega, const NormSpec& spec, std::span<const double> time_grid);

/// Same norm with an arbitrary radial symbol m(|xi|^2) in place of |xi|^sigma.
double weighted_space_time_norm(const SpectralField& f, const std::function<double(double)>& symbol,
                                double gamma, double p, double q, std::span<const double> time_grid);

struct TailFitResult {
  std::vector<double> lambda_grid;
  std::vector<double> empirical_prob;  ///< #{samples >= lambda} / M
  std::vector<double> samples;         ///< in sample-index order
  double data_norm = 0.0;              ///< ||f||_{H^{-s}}
  double C1 = 0.0;
  double C2 = 0.0;
  double r_squared = 0.0;
  std::size_t fit_points = 0;
  std::size_t M = 0;
  bool fit_valid = false;
};

struct MonteCarloOptions {
  std::size_t workers = 0;  ///< 0: resolve_workers default
  int per_decade = 64;
  std::size_t lambda_points = 40;
  std::uint64_t first_sample = 0;
};

/// Space-time norms of M randomizations of f, index i drawn with sample_index first_sample + i.
std::vector<double> sample_space_time_norms(const SpectralField& f, const RandomModel& model,
                                            const NormSpec& spec, std::size_t M,
                                            const MonteCarloOptions& options = {});

/// Empirical tail P(||.|| >= lambda) over M randomizations, fitted to
///   log P = log C1 - C2 lambda^2 / ||f||^2_{H^{-s}}
/// on the lambda values with 5/M <= P <= 1/2. An empty lambda_grid spans the
/// empirical median to the 99.5th percentile. f = 0 yields zero probabilities and
/// fit_valid = false; identical nonzero samples or too few fit points throw.
TailFitResult monte_carlo_tails(const SpectralField& f, const RandomModel& model, const NormSpec& spec,
                                std::size_t M, std::span<const double> lambda_grid = {},
                                const MonteCarloOptions& options = {});

/// Fit only, from precomputed samples.
TailFitResult fit_tails(std::vector<double> samples, double data_norm, std::span<const double> lambda_grid,
                        std::size_t lambda_points = 40);

struct MomentReport {
  double moment = 0.0;  ///< (E ||.||^r)^{1/r}
  double ratio = 0.0;   ///< moment / ||f||_{H^{-s}}, 0 for f = 0
};

/// Monte Carlo estimate of the L^r(Omega) moment of the space-time norm.
MomentReport moment_bound_check(const SpectralField& f, const RandomModel& model, const NormSpec& spec,
                                double r, std::size_t M, const MonteCarloOptions& options = {});

}  // namespace nsrand
