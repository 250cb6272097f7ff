#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

// All rates in this library are in bits per channel use (log base 2).
namespace helpernet {

/// Thrown for out-of-range parameters, unknown labels, malformed inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation cannot produce a meaningful number
/// (degenerate empirical covariance, non-PSD matrix, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RatePoint = Eigen::VectorXd;

/// ½·log2(1 + snr), the Gaussian point-to-point rate.
inline double gaussian_rate(double snr) { return 0.5 * std::log2(1.0 + snr); }

/// State power: a finite positive variance or the high-state-power limit.
class StatePower {
 public:
  static StatePower infinite() { return StatePower(std::numeric_limits<double>::infinity()); }
  static StatePower finite(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
      throw InvalidArgument("state power must be finite and positive, got " + std::to_string(q));
    }
    return StatePower(q);
  }

  bool is_infinite() const { return std::isinf(value_); }
  double value() const { return value_; }

  bool operator==(const StatePower&) const = default;

 private:
  explicit StatePower(double v) : value_(v) {}
  double value_;
};

/// Helper power P0, user powers P1..PK and state powers Q1..QK.
struct PowerConfig {
  double p0 = 0.0;
  std::vector<double> p;
  std::vector<StatePower> q;

  PowerConfig() = default;
  PowerConfig(double helper, std::vector<double> users, std::vector<StatePower> states)
      : p0(helper), p(std::move(users)), q(std::move(states)) {
    validate();
  }

  /// All states in the high-power limit.
  static PowerConfig high_state(double helper, std::vector<double> users) {
    std::vector<StatePower> states(users.size(), StatePower::infinite());
    return PowerConfig(helper, std::move(users), std::move(states));
  }

  std::size_t users() const { return p.size(); }

  bool all_states_infinite() const {
    for (const auto& s : q) {
      if (!s.is_infinite()) return false;
    }
    return true;
  }

  void validate() const {
    if (p.size() != q.size()) {
      throw InvalidArgument("power config: user and state power lists differ in length");
    }
    if (!(p0 >= 0.0) || !std::isfinite(p0)) throw InvalidArgument("helper power must be >= 0");
    for (double v : p) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("user powers must be >= 0");
    }
  }
};

}  // namespace helpernet
