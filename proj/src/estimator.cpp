#include "rpsel/estimator.hpp"

#include "rpsel/objective.hpp"

#include <Eigen/QR>

#include <cmath>

namespace rpsel {

namespace {

double sample_sd(const Vector& y) {
  const double n = static_cast<double>(y.size());
  const double mean = y.mean();
  return std::sqrt((y.array() - mean).square().sum() / n);
}

double sigma_floor_for(const Dataset& data, const FitOptions& opts) {
  const double sd = sample_sd(data.y);
  return opts.sigma_floor_scale * (sd > 0.0 ? sd : 1.0);
}

Vector weights_at(const Dataset& data, const Vector& beta, double sigma, double a) {
  Vector w(data.n());
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double r = (data.y[i] - data.X.row(i).dot(beta)) / sigma;
    w[i] = std::exp(std::max(-(a / 2.0) * r * r, -745.0));
  }
  return w;
}

// Weighted least squares; weights are rescaled by their maximum so a uniformly
// tiny w (far starts, large alpha) does not wreck the factorization.
Vector weighted_ls(const Dataset& data, const Vector& w) {
  const double wmax = w.maxCoeff();
  if (!(wmax > 0.0))
    throw DegenerateWeightsError(
        "all observation weights underflowed; use a smaller alpha or a warm start");
  const Vector ws = (w / wmax).cwiseSqrt();
  const Matrix Xw = ws.asDiagonal() * data.X;
  const Vector yw = ws.asDiagonal() * data.y;
  Eigen::ColPivHouseholderQR<Matrix> qr(Xw);
  if (qr.rank() < data.p())
    throw DegenerateWeightsError(
        "weighted design lost rank; use a smaller alpha or a warm start");
  return qr.solve(yw);
}

struct Sweep {
  Vector beta;
  double sigma;
};

Sweep sweep_once(const Dataset& data, const Vector& beta, double sigma, double a) {
  const Vector w1 = weights_at(data, beta, sigma, a);
  Vector beta_new = weighted_ls(data, w1);
  const Vector w2 = weights_at(data, beta_new, sigma, a);
  const double wsum = w2.sum();
  if (!(wsum > 0.0))
    throw DegenerateWeightsError(
        "all observation weights underflowed; use a smaller alpha or a warm start");
  const Vector u = data.y - data.X * beta_new;
  const double s2 = (1.0 + a) * u.cwiseAbs2().dot(w2) / wsum;
  return {std::move(beta_new), std::sqrt(s2)};
}

FitResult run_iteration(const Dataset& data, TuningAlpha alpha, Theta theta,
                        const FitOptions& opts, double floor) {
  const double a = alpha.value;
  FitResult res;
  res.sigma_clamped = false;
  double f = objective_h(data, theta, alpha);
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    Sweep target = sweep_once(data, theta.beta, theta.sigma, a);
    if (target.sigma < floor) {
      target.sigma = floor;
      res.sigma_clamped = true;
    }
    // Backtrack toward the current iterate until the objective stops increasing.
    double step = 1.0;
    Theta cand = theta;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      cand.beta = theta.beta + step * (target.beta - theta.beta);
      cand.sigma = theta.sigma + step * (target.sigma - theta.sigma);
      const double fc = objective_h(data, cand, alpha);
      if (fc <= f + 1e-12) {
        accepted = true;
        f = fc;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stalled; stationarity is checked below
    const double change = std::max((cand.beta - theta.beta).cwiseAbs().maxCoeff(),
                                   std::abs(cand.sigma - theta.sigma));
    theta = cand;
    if (change <= opts.param_tolerance) {
      ++iter;
      break;
    }
  }
  res.theta = std::move(theta);
  res.iterations = iter;
  res.grad_norm = gradient_h(data, res.theta, alpha).cwiseAbs().maxCoeff();
  res.converged = res.grad_norm <= opts.grad_tolerance && !res.sigma_clamped;
  res.objective = f;
  return res;
}

// One reweighting pass at alpha = 1 from the MLE: sharply downweights large
// residuals, giving a start that survives heavy contamination.
Theta robust_start(const Dataset& data, const Theta& mle, double floor) {
  const Vector w = weights_at(data, mle.beta, mle.sigma, 1.0);
  Vector beta = weighted_ls(data, w);
  const Vector u = data.y - data.X * beta;
  const Vector w2 = weights_at(data, beta, mle.sigma, 1.0);
  const double s2 = 2.0 * u.cwiseAbs2().dot(w2) / w2.sum();
  return {std::move(beta), std::max(std::sqrt(s2), floor)};
}

}  // namespace

FitResult fit_mle(const Dataset& data, const FitOptions& opts) {
  if (data.n() <= data.p())
    throw InsufficientDataError("fit_mle: need n > p (n = " + std::to_string(data.n()) +
                                ", p = " + std::to_string(data.p()) + ")");
  Eigen::ColPivHouseholderQR<Matrix> qr(data.X);
  if (qr.rank() < data.p()) throw SingularDesignError("fit_mle: design is rank deficient");

  FitResult res;
  res.theta.beta = qr.solve(data.y);
  const Vector resid = data.y - data.X * res.theta.beta;
  const double s2 = resid.squaredNorm() / static_cast<double>(data.n());
  const double floor = sigma_floor_for(data, opts);
  res.theta.sigma = std::sqrt(s2);
  if (res.theta.sigma < floor) {
    res.theta.sigma = floor;
    res.sigma_clamped = true;
  }
  res.iterations = 0;
  res.objective = objective_h(data, res.theta, TuningAlpha{});
  res.grad_norm = res.sigma_clamped
                      ? gradient_h(data, res.theta, TuningAlpha{}).cwiseAbs().maxCoeff()
                      : 0.0;
  res.converged = true;
  return res;
}

FitResult fit_mrpe(const Dataset& data, TuningAlpha alpha, const FitOptions& opts) {
  if (alpha.is_zero()) return fit_mle(data, opts);

  const double floor = sigma_floor_for(data, opts);
  const FitResult mle = fit_mle(data, opts);

  Theta start;
  if (opts.init == InitPolicy::WarmStart) {
    if (!opts.warm_start) throw InvalidInputError("fit_mrpe: warm start requested without theta");
    start = *opts.warm_start;
    if (!(start.sigma > 0.0) || start.beta.size() != data.p())
      throw InvalidInputError("fit_mrpe: warm start has wrong shape");
  } else {
    start = mle.theta;
  }

  FitResult best = run_iteration(data, alpha, start, opts, floor);
  if (opts.robust_retry) {
    FitResult alt = run_iteration(data, alpha, robust_start(data, mle.theta, floor), opts, floor);
    const bool prefer_alt =
        (alt.converged && !best.converged) ||
        (alt.converged == best.converged && alt.objective < best.objective);
    if (prefer_alt) best = std::move(alt);
  }
  return best;
}

}  // namespace rpsel
