#pragma once

#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

namespace exeval {

/// A nonnegative real number stored as its natural logarithm.
///
/// Exact zero is represented by -infinity. Multiplication and division are
/// addition and subtraction of logs; zero is absorbing under multiplication.
/// Every probability, weight, and e-value in this library is carried as a
/// LogValue because the quantities of interest overflow double precision by
/// thousands of decimal orders at large horizons.
class LogValue {
 public:
  constexpr LogValue() : log_(-std::numeric_limits<double>::infinity()) {}

  static constexpr LogValue from_log(double log_x) {
    LogValue v;
    v.log_ = log_x;
    return v;
  }

  static LogValue from_linear(double x) {
    if (std::isnan(x) || x < 0.0) {
      throw std::domain_error("LogValue: linear value must be nonnegative");
    }
    return from_log(x == 0.0 ? -std::numeric_limits<double>::infinity()
                             : std::log(x));
  }

  static constexpr LogValue zero() { return LogValue{}; }
  static constexpr LogValue one() { return from_log(0.0); }

  bool is_zero() const { return std::isinf(log_) && log_ < 0.0; }

  /// Natural logarithm of the represented value (-inf for zero).
  double log() const { return log_; }

  double log10() const { return log_ / std::numbers::ln10; }

  /// The value itself; overflows to +inf past ~1e308, underflows to 0.
  double linear() const { return std::exp(log_); }

  LogValue& operator*=(LogValue o) {
    // -inf + finite and -inf + -inf are both -inf, so zero absorbs.
    log_ += o.log_;
    return *this;
  }

  LogValue& operator/=(LogValue o) {
    if (o.is_zero()) throw std::domain_error("LogValue: division by zero");
    log_ -= o.log_;
    return *this;
  }

  friend LogValue operator*(LogValue a, LogValue b) { return a *= b; }
  friend LogValue operator/(LogValue a, LogValue b) { return a /= b; }

 private:
  double log_;
};

namespace detail {

// All factorial-like magnitudes are produced by the log-gamma function in
// extended precision and rounded to double once, at the end of a combined
// expression. That keeps sums and differences of ~1e6-sized logs accurate
// to well below the 1e-9 log tolerance used throughout.
inline long double lgamma_l(long double x) { return std::lgamma(x); }

inline long double log_factorial_l(long long n) {
  return lgamma_l(static_cast<long double>(n) + 1.0L);
}

}  // namespace detail

/// ln(n!), n >= 0.
inline double log_factorial(long long n) {
  if (n < 0) throw std::domain_error("log_factorial: n must be nonnegative");
  return static_cast<double>(detail::log_factorial_l(n));
}

/// Binomial coefficient C(n, k) as a LogValue; zero when k is out of range.
inline LogValue log_binomial(long long n, long long k) {
  if (n < 0) throw std::domain_error("log_binomial: n must be nonnegative");
  if (k < 0 || k > n) return LogValue::zero();
  const long double r = detail::log_factorial_l(n) -
                        detail::log_factorial_l(k) -
                        detail::log_factorial_l(n - k);
  return LogValue::from_log(static_cast<double>(r));
}

/// ln B(a, b) for a, b > 0.
inline double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("log_beta: arguments must be positive");
  }
  const long double r = detail::lgamma_l(a) + detail::lgamma_l(b) -
                        detail::lgamma_l(static_cast<long double>(a) + b);
  return static_cast<double>(r);
}

/// Log of the sum of the represented values, max-shifted so no intermediate
/// overflows. Empty input (or all zeros) sums to zero.
inline LogValue log_sum(std::span<const LogValue> values) {
  double max_log = -std::numeric_limits<double>::infinity();
  for (const LogValue& v : values) max_log = std::max(max_log, v.log());
  if (values.empty() || std::isinf(max_log)) return LogValue::zero();
  long double acc = 0.0L;
  for (const LogValue& v : values) {
    acc += std::exp(static_cast<long double>(v.log()) - max_log);
  }
  return LogValue::from_log(max_log + static_cast<double>(std::log(acc)));
}

inline LogValue log_sum(std::initializer_list<LogValue> values) {
  return log_sum(std::span<const LogValue>(values.begin(), values.size()));
}

}  // namespace exeval
