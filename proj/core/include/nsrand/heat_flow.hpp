#pragma once

#include <span>
#include <vector>

#include "nsrand/spectral_field.hpp"

namespace nsrand {

/// e^{t Delta}: multiplies each coefficient by e^{-t |xi|^2}. Throws for t < 0.
SpectralField heat_semigroup(const SpectralField& field, double t);
void heat_semigroup_in_place(SpectralField& field, double t);

enum class NormKind { l2, linf };

/// Decay of ||nabla^k e^{t Delta} f||, its ratio against the linear bound, and the
/// small-time log-log slope.
///
/// L2 ratios use (1 + t^{-(s+k)/2}) ||f||_{H^{-s}}. L-infinity ratios use
/// max{t^{-1}, t^{-(k+s+d/2)}}^{1/2} ||f||_{H^{-s}}; `alt_ratios` keeps the same
/// bracket without the square root.
struct DecayReport {
  int k = 0;
  NormKind kind = NormKind::l2;
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> ratios;
  std::vector<double> alt_ratios;
  double data_norm = 0.0;  ///< ||f||_{H^{-s}}
  double bound_constant = 0.0;
  double alt_bound_constant = 0.0;
  double fitted_slope = 0.0;
  double window_start = 0.0;
  double window_end = 0.0;
  std::size_t window_points = 0;
};

/// Start of the small-time fit window, 10 / ((2pi/L) N/2)^2: below it the grid
/// cutoff rather than the data sets the decay.
double small_time_window_start(const Grid& grid);

/// Throws InvalidArgument on an empty or non-positive t_grid, or k outside {0, 1, 2}.
DecayReport check_linear_estimates(const SpectralField& f_omega, double s, int k,
                                   std::span<const double> t_grid, NormKind kind = NormKind::l2);

/// max_x |nabla^k f(x)| with the Euclidean norm over all components and derivative indices.
double gradient_power_linf(const SpectralField& fourier, int k);

struct CondgReport {
  std::vector<double> times;
  double l2_sup = 0.0;             ///< sup ||g|| / (1 + t^{-s/2})
  double linf_sup[2] = {0.0, 0.0};  ///< sup ||nabla^k g||_inf / max{t^-1, t^-(k+s+d/2)}^{1/2}
  double linf_printed_sup[2] = {0.0, 0.0};  ///< same bracket without the square root
};

/// Suprema of the forcing-size ratios for g = e^{t Delta} f_omega over the grid.
CondgReport condg_check(const SpectralField& f_omega, double s, std::span<const double> t_grid);

}  // namespace nsrand
