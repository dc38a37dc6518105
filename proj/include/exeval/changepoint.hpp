#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "exeval/log_value.hpp"
#include "exeval/sequence.hpp"

namespace exeval {

/// Summary of a sequence under the changepoint compression model with break
/// location tau: the numbers of 1s before (inclusive) and after it.
struct ChangepointSummary {
  long long tau = 0;
  long long k0 = 0;  // ones in z_1..z_tau
  long long k1 = 0;  // ones in z_{tau+1}..z_N

  friend bool operator==(const ChangepointSummary&,
                         const ChangepointSummary&) = default;
};

namespace detail {

// log of B(k+1, len-k+1) B(k'+1, len'-k'+1): the marginal likelihood of a
// two-piece Bernoulli model with uniform priors, split after `len` symbols.
inline double log_split_term(long long k_left, long long len_left,
                             long long k_right, long long len_right) {
  return log_beta(static_cast<double>(k_left) + 1.0,
                  static_cast<double>(len_left - k_left) + 1.0) +
         log_beta(static_cast<double>(k_right) + 1.0,
                  static_cast<double>(len_right - k_right) + 1.0);
}

inline std::vector<long long> prefix_ones(const BinarySequence& z) {
  std::vector<long long> pre(z.size() + 1, 0);
  for (std::size_t i = 0; i < z.size(); ++i) pre[i + 1] = pre[i] + z[i];
  return pre;
}

// Number of ways to land k1 ones in a prefix of length n when the whole
// sequence of length n_total carries n1 ones: the count of feasible k1.
inline long long feasible_split_count(long long n, long long n1,
                                      long long n_total) {
  const long long lo = std::max<long long>(0, n1 - (n_total - n));
  const long long hi = std::min(n, n1);
  return hi >= lo ? hi - lo + 1 : 0;
}

}  // namespace detail

/// Probability of the sequence under the changepoint mixture alternative:
/// a uniform prior over the break location n in {1,...,N-1} and independent
/// uniform priors on the Bernoulli parameters of the two pieces.
inline LogValue cp_mixture_logprob(const BinarySequence& z) {
  const long long n_total = z.horizon();
  const auto pre = detail::prefix_ones(z);
  const long long ones = pre[static_cast<std::size_t>(n_total)];
  std::vector<LogValue> terms;
  terms.reserve(static_cast<std::size_t>(n_total - 1));
  for (long long n = 1; n <= n_total - 1; ++n) {
    const long long k_left = pre[static_cast<std::size_t>(n)];
    terms.push_back(LogValue::from_log(detail::log_split_term(
        k_left, n, ones - k_left, n_total - n)));
  }
  return log_sum(terms) /
         LogValue::from_linear(static_cast<double>(n_total - 1));
}

/// Quasi-universal exchangeability e-value under the changepoint mixture:
/// C(N, N1) times the mixture's conditional probability of the sequence
/// given its exchangeability class. The class mass collapses to a sum over
/// split locations because C(n,k) B(k+1, n-k+1) = 1/(n+1) for every k.
inline LogValue cp_evalue(const BinarySequence& z) {
  const long long n_total = z.horizon();
  const auto pre = detail::prefix_ones(z);
  const long long ones = pre[static_cast<std::size_t>(n_total)];
  // Both sums leave out the common 1/(N-1) of the mixture.
  std::vector<LogValue> terms;
  terms.reserve(static_cast<std::size_t>(n_total - 1));
  long double class_sum = 0.0L;
  for (long long n = 1; n <= n_total - 1; ++n) {
    const long long k_left = pre[static_cast<std::size_t>(n)];
    terms.push_back(LogValue::from_log(detail::log_split_term(
        k_left, n, ones - k_left, n_total - n)));
    const long long splits = detail::feasible_split_count(n, ones, n_total);
    class_sum += static_cast<long double>(splits) /
                 (static_cast<long double>(n + 1) *
                  static_cast<long double>(n_total - n + 1));
  }
  return log_binomial(n_total, ones) * log_sum(terms) /
         LogValue::from_log(static_cast<double>(std::log(class_sum)));
}

inline ChangepointSummary cp_summary(const BinarySequence& z, long long tau) {
  const long long n_total = z.horizon();
  if (tau < 1 || tau > n_total - 1) {
    throw std::out_of_range("cp_summary: tau must lie in {1,...,N-1}");
  }
  long long k0 = 0, k1 = 0;
  for (long long i = 0; i < n_total; ++i) {
    (i < tau ? k0 : k1) += z[static_cast<std::size_t>(i)];
  }
  return ChangepointSummary{tau, k0, k1};
}

/// E-value for testing the changepoint compression model at location tau,
/// using the changepoint mixture over the other locations as alternative:
/// C(tau, K0) C(N-tau, K1) Q_tau(z) / Q_tau(summary block of z).
///
/// The block mass is an exact double sum: for a split n on one side of tau,
/// the ones that the block fixes in the shorter stretch between n and tau
/// are redistributed binomially, and the Beta factor of the far side
/// collapses against its binomial just as in cp_evalue.
inline LogValue cp_tau_evalue(const BinarySequence& z, long long tau) {
  const long long n_total = z.horizon();
  if (n_total < 3) {
    throw std::out_of_range(
        "cp_tau_evalue: horizon must be at least 3 so that some location "
        "other than tau exists");
  }
  if (tau < 1 || tau > n_total - 1) {
    throw std::out_of_range("cp_tau_evalue: tau must lie in {1,...,N-1}");
  }
  const auto pre = detail::prefix_ones(z);
  const long long ones = pre[static_cast<std::size_t>(n_total)];
  const long long k0 = pre[static_cast<std::size_t>(tau)];
  const long long k1 = ones - k0;

  // Numerator: mixture mass of z over locations n != tau (times N-2).
  std::vector<LogValue> num_terms;
  num_terms.reserve(static_cast<std::size_t>(n_total - 2));
  for (long long n = 1; n <= n_total - 1; ++n) {
    if (n == tau) continue;
    const long long k_left = pre[static_cast<std::size_t>(n)];
    num_terms.push_back(LogValue::from_log(detail::log_split_term(
        k_left, n, ones - k_left, n_total - n)));
  }
  const LogValue numerator = log_sum(num_terms);

  // Block mass of t_tau^{-1}(k0, k1) under the same mixture (times N-2).
  // The binomial of the stretch on the far side of tau collapses against its
  // Beta factor into 1/(len+1); the binomial of the near stretch between n
  // and tau stays as an explicit prefactor of each summand.
  std::vector<LogValue> block_terms;
  for (long long n = 1; n <= n_total - 1; ++n) {
    if (n == tau) continue;
    std::vector<LogValue> inner;
    if (n < tau) {
      // k ones among the first n positions; k0-k in positions (n, tau].
      const long long lo = std::max<long long>(0, k0 - (tau - n));
      const long long hi = std::min(n, k0);
      for (long long k = lo; k <= hi; ++k) {
        const double lg =
            log_binomial(tau - n, k0 - k).log() -
            std::log(static_cast<double>(n + 1)) +
            log_beta(static_cast<double>(ones - k) + 1.0,
                     static_cast<double>((n_total - n) - (ones - k)) + 1.0);
        inner.push_back(LogValue::from_log(lg));
      }
      block_terms.push_back(log_binomial(n_total - tau, k1) *
                            log_sum(inner));
    } else {
      // j of the k1 second-block ones among positions (tau, n].
      const long long lo = std::max<long long>(0, k1 - (n_total - n));
      const long long hi = std::min(n - tau, k1);
      for (long long j = lo; j <= hi; ++j) {
        const double lg =
            log_binomial(n - tau, j).log() -
            std::log(static_cast<double>(n_total - n + 1)) +
            log_beta(static_cast<double>(k0 + j) + 1.0,
                     static_cast<double>(n - k0 - j) + 1.0);
        inner.push_back(LogValue::from_log(lg));
      }
      block_terms.push_back(log_binomial(tau, k0) * log_sum(inner));
    }
  }
  const LogValue block_mass = log_sum(block_terms);

  return log_binomial(tau, k0) * log_binomial(n_total - tau, k1) * numerator /
         block_mass;
}

/// E-confidence region for the changepoint location at level alpha: the set
/// of tau whose e-value does not exceed 1/alpha. May be empty.
struct ConfidenceRegion {
  double alpha = 1.0;
  std::vector<long long> members;
  std::vector<double> log10_evalues;  // indexed by tau - 1
};

inline ConfidenceRegion cp_confidence_region(const BinarySequence& z,
                                             double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::out_of_range("cp_confidence_region: alpha must be in (0,1]");
  }
  const long long n_total = z.horizon();
  if (n_total < 3) {
    throw std::out_of_range("cp_confidence_region: horizon must be >= 3");
  }
  ConfidenceRegion region;
  region.alpha = alpha;
  const double threshold_log10 = -std::log10(alpha);
  for (long long tau = 1; tau <= n_total - 1; ++tau) {
    const double l10 = cp_tau_evalue(z, tau).log10();
    region.log10_evalues.push_back(l10);
    if (l10 <= threshold_log10) region.members.push_back(tau);
  }
  return region;
}

}  // namespace exeval
