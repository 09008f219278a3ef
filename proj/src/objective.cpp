#include "rpsel/objective.hpp"

#include <cmath>
#include <numbers>

namespace rpsel {

namespace {

// exp underflows to 0 below roughly -745; clamping there keeps the weight an
// exact zero instead of raising FE_UNDERFLOW garbage in fast-math builds.
constexpr double kExpFloor = -745.0;

double checked_sigma(const Theta& theta) {
  if (!(theta.sigma > 0.0)) throw InvalidInputError("sigma must be > 0");
  return theta.sigma;
}

}  // namespace

RpConstants rp_constants(TuningAlpha alpha, double sigma) {
  if (!(sigma > 0.0)) throw InvalidInputError("sigma must be > 0");
  const double a = alpha.value;
  RpConstants c;
  c.c_alpha = std::pow((1.0 + a) / (2.0 * std::numbers::pi), a / (2.0 * (a + 1.0)));
  c.k_obj = a > 0.0 ? c.c_alpha / a : std::numeric_limits<double>::quiet_NaN();
  c.k1 = c.c_alpha * std::pow(sigma, -(3.0 * a + 2.0) / (a + 1.0));
  return c;
}

double vhat(double y_i, const Eigen::Ref<const Vector>& x_i, const Theta& theta,
            TuningAlpha alpha) {
  const double a = alpha.value;
  if (!(a > 0.0)) throw InvalidInputError("vhat requires alpha > 0; use vhat0");
  const double sigma = checked_sigma(theta);
  if (!std::isfinite(y_i) || !x_i.allFinite() || !theta.beta.allFinite())
    throw InvalidInputError("vhat: non-finite input");
  const double r = (y_i - x_i.dot(theta.beta)) / sigma;
  const double w = std::exp(std::max(-(a / 2.0) * r * r, kExpFloor));
  const RpConstants c = rp_constants(alpha, sigma);
  return (1.0 - c.c_alpha * std::pow(sigma, -a / (a + 1.0)) * w) / a;
}

double vhat0(double y_i, const Eigen::Ref<const Vector>& x_i, const Theta& theta) {
  const double sigma = checked_sigma(theta);
  const double r = (y_i - x_i.dot(theta.beta)) / sigma;
  return 0.5 * std::log(2.0 * std::numbers::pi) + std::log(sigma) + 0.5 * r * r;
}

double objective_h(const Dataset& data, const Theta& theta, TuningAlpha alpha) {
  if (data.p() != theta.beta.size())
    throw InvalidInputError("objective_h: beta length does not match design");
  const double sigma = checked_sigma(theta);
  const auto n = data.n();
  const double a = alpha.value;
  if (alpha.is_zero()) {
    const Vector r = (data.y - data.X * theta.beta) / sigma;
    return 0.5 * std::log(2.0 * std::numbers::pi) + std::log(sigma) +
           0.5 * r.squaredNorm() / static_cast<double>(n);
  }
  const Vector r = (data.y - data.X * theta.beta) / sigma;
  const double scale = rp_constants(alpha, sigma).c_alpha * std::pow(sigma, -a / (a + 1.0));
  double mean_w = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    mean_w += std::exp(std::max(-(a / 2.0) * r[i] * r[i], kExpFloor));
  mean_w /= static_cast<double>(n);
  return (1.0 - scale * mean_w) / a;
}

Vector gradient_h(const Dataset& data, const Theta& theta, TuningAlpha alpha) {
  if (data.p() != theta.beta.size())
    throw InvalidInputError("gradient_h: beta length does not match design");
  const double sigma = checked_sigma(theta);
  const auto n = static_cast<double>(data.n());
  const auto p = data.p();
  const double a = alpha.value;
  const Vector r = (data.y - data.X * theta.beta) / sigma;
  Vector grad = Vector::Zero(p + 1);

  if (alpha.is_zero()) {
    grad.head(p) = -(data.X.transpose() * r) / (n * sigma);
    grad[p] = -(r.squaredNorm() / n - 1.0) / sigma;
    return grad;
  }

  Vector w(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i)
    w[i] = std::exp(std::max(-(a / 2.0) * r[i] * r[i], kExpFloor));
  const double scale =
      rp_constants(alpha, sigma).c_alpha * std::pow(sigma, -a / (a + 1.0) - 1.0) / n;
  grad.head(p) = -scale * (data.X.transpose() * w.cwiseProduct(r).matrix());
  double s_term = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    s_term += w[i] * (r[i] * r[i] - 1.0 / (1.0 + a));
  grad[p] = -scale * s_term;
  return grad;
}

}  // namespace rpsel
