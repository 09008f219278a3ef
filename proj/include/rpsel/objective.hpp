#pragma once

#include "rpsel/types.hpp"

namespace rpsel {

RpConstants rp_constants(TuningAlpha alpha, double sigma);

/// Per-observation loss for alpha > 0:
///   (1/a) * [1 - c_a * sigma^(-a/(a+1)) * exp(-(a/2) r^2)],  r = (y - x'b)/sigma.
/// Bounded above by 1/a; approaches it as |r| -> infinity.
double vhat(double y_i, const Eigen::Ref<const Vector>& x_i, const Theta& theta,
            TuningAlpha alpha);

/// Per-observation loss at alpha = 0: the Gaussian negative log density,
/// log(2*pi)/2 + log(sigma) + r^2/2.
double vhat0(double y_i, const Eigen::Ref<const Vector>& x_i, const Theta& theta);

/// Pooled objective (1/n) * sum_i vhat (or vhat0 at alpha = 0). This is the
/// function the estimator minimizes.
double objective_h(const Dataset& data, const Theta& theta, TuningAlpha alpha);

/// Analytic gradient of objective_h w.r.t. (beta, sigma); length p+1, sigma last.
Vector gradient_h(const Dataset& data, const Theta& theta, TuningAlpha alpha);

}  // namespace rpsel
