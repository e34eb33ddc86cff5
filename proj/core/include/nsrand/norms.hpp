#pragma once

#include "nsrand/spectral_field.hpp"

namespace nsrand {

/// L^2 norm of the box; Fourier fields use Parseval, physical fields a cell-volume sum.
double l2_norm(const SpectralField& field);

/// (dV sum_x |f(x)|^p)^{1/p} over a physical field with |f| the Euclidean norm
/// across components. p = infinity gives the pointwise maximum.
double lp_norm(const SpectralField& physical, double p);
double linf_norm(const SpectralField& physical);

/// sum_xi conj(a) b over all components of two Fourier fields (the L^2 inner product).
Complex inner_product(const SpectralField& a, const SpectralField& b);

/// Inhomogeneous Sobolev norm (sum (1 + |xi|^2)^s |c|^2)^{1/2}; s may be negative.
double sobolev_norm(const SpectralField& field, double s);

/// ||nabla^k f||_{L^2} = (sum |xi|^{2k} |c|^2)^{1/2}.
double gradient_power_norm(const SpectralField& field, int k);

/// ||div f|| / ||nabla f||, scale-free and at most 1; 0 for a constant field.
double relative_divergence(const SpectralField& field);

/// Maximum modulus of any coefficient with |xi| >= radius.
double max_outside_ball(const SpectralField& field, double radius);

}  // namespace nsrand
