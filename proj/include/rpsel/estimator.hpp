#pragma once

#include "rpsel/types.hpp"

#include <optional>

namespace rpsel {

enum class InitPolicy { MleStart, WarmStart };

struct FitOptions {
  int max_iterations = 500;
  double param_tolerance = 1e-10;   // sup-norm of parameter change
  double grad_tolerance = 1e-8;     // sup-norm of the objective gradient
  double sigma_floor_scale = 1e-8;  // floor = scale * sample sd of y
  InitPolicy init = InitPolicy::MleStart;
  std::optional<Theta> warm_start;
  // Also solve from a high-breakdown start (one reweighting pass at alpha = 1
  // from the MLE) and keep whichever solution has the lower objective.
  bool robust_retry = false;
};

struct FitResult {
  Theta theta;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  double objective = 0.0;
  bool sigma_clamped = false;  // degenerate fit, sigma hit its floor
};

/// Exact least-squares fit: beta = (X'X)^-1 X'y via QR, sigma^2 = RSS/n.
FitResult fit_mle(const Dataset& data, const FitOptions& opts = {});

/// Minimizes objective_h by damped fixed-point sweeps of the estimating
/// equations: beta <- weighted LS, then sigma^2 <- (1+a) * sum(w u^2)/sum(w),
/// each sweep backtracked so the objective never increases. alpha = 0
/// delegates to fit_mle. Non-convergence is reported via the flag, not thrown.
FitResult fit_mrpe(const Dataset& data, TuningAlpha alpha, const FitOptions& opts = {});

}  // namespace rpsel
