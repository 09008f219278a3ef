#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpsel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Input contained a non-finite value or violated a basic precondition.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Design matrix is rank deficient (or a derived matrix is singular).
class SingularDesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few observations for the requested fit (n <= p).
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All observation weights underflowed to zero; the tuning parameter is too
/// aggressive for this data, or the starting point is too far off.
class DegenerateWeightsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every candidate model failed to fit.
class NoValidModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Response vector plus fixed design matrix. X rows are observations; column 0
/// may be an all-ones intercept column.
struct Dataset {
  Vector y;
  Matrix X;

  Dataset(Vector y_in, Matrix x_in) : y(std::move(y_in)), X(std::move(x_in)) {
    if (y.size() < 1) throw InvalidInputError("Dataset: need at least one observation");
    if (X.rows() != y.size())
      throw InvalidInputError("Dataset: X has " + std::to_string(X.rows()) +
                              " rows but y has " + std::to_string(y.size()));
    if (!y.allFinite() || !X.allFinite())
      throw InvalidInputError("Dataset: non-finite entry");
  }

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return X.cols(); }
};

/// A candidate model: a subset of predictor columns of a master matrix, plus
/// an intercept flag. Column indices refer to predictors only (the intercept
/// is never one of them).
struct ModelSpec {
  std::vector<int> columns;
  bool include_intercept = true;

  int param_count() const {
    return static_cast<int>(columns.size()) + (include_intercept ? 1 : 0);
  }

  void validate(int master_cols) const {
    if (param_count() < 1) throw InvalidInputError("ModelSpec: no parameters");
    std::vector<bool> seen(static_cast<std::size_t>(master_cols), false);
    for (int c : columns) {
      if (c < 0 || c >= master_cols)
        throw InvalidInputError("ModelSpec: column index " + std::to_string(c) + " out of range");
      if (seen[static_cast<std::size_t>(c)])
        throw InvalidInputError("ModelSpec: duplicate column " + std::to_string(c));
      seen[static_cast<std::size_t>(c)] = true;
    }
  }

  std::string label(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ",";
      out += names.at(static_cast<std::size_t>(columns[i]));
    }
    return out.empty() ? "(intercept only)" : out;
  }
};

/// Regression coefficients and error scale, the parameter (beta, sigma).
struct Theta {
  Vector beta;
  double sigma = 1.0;

  Eigen::Index dim() const { return beta.size() + 1; }
};

/// Efficiency/robustness tuning parameter; 0 selects the log-likelihood
/// (maximum likelihood) code path.
struct TuningAlpha {
  double value = 0.0;

  TuningAlpha() = default;
  explicit TuningAlpha(double a) : value(a) {
    if (!(a >= 0.0)) throw InvalidInputError("alpha must be >= 0");
  }
  bool is_zero() const { return value == 0.0; }
};

/// Scale constants shared by the objective and the penalty matrices.
///   c_alpha = ((1+a)/(2*pi))^(a/(2(a+1)))      -> 1 as a -> 0
///   k_obj   = c_alpha / a                       (objective scale, a > 0 only)
///   k1      = c_alpha * sigma^(-(3a+2)/(a+1))   -> sigma^-2 as a -> 0
struct RpConstants {
  double c_alpha = 1.0;
  double k_obj = 0.0;
  double k1 = 0.0;
};

}  // namespace rpsel
