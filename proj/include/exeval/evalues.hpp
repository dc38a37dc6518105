#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "exeval/enumerated_measure.hpp"
#include "exeval/log_value.hpp"
#include "exeval/sequence.hpp"

namespace exeval {

namespace detail {

// Weight that the mixture prior puts on a whole transition-count
// configuration: N00! N01! N10! N11! / ((N0*+1)! (N1*+1)!). The 1/2 prior
// probability of the first bit is NOT included here; elb() and the mixture
// probability carry it explicitly, while in the UMM ratio it cancels against
// the matching 1/2 of the type-sum denominator.
inline long double log_dirichlet_weight_l(const MarkovType& t) {
  return log_factorial_l(t.n00) + log_factorial_l(t.n01) +
         log_factorial_l(t.n10) + log_factorial_l(t.n11) -
         log_factorial_l(t.n0_star() + 1) - log_factorial_l(t.n1_star() + 1);
}

inline long double log_choose_l(long long n, long long k) {
  return log_factorial_l(n) - log_factorial_l(k) - log_factorial_l(n - k);
}

// One closed-form term sum(m) = m(m+1)/2 divided by `den`, evaluated as an
// exact integer ratio when the factors fit 64 bits (they do for all horizons
// up to 2^20) and in plain floating point beyond that.
inline double case_term(long long m, long long den_a, long long den_b,
                        long long den_c) {
  if (m <= 0) return 0.0;
  constexpr long long kExactLimit = 1LL << 20;
  if (den_a <= kExactLimit && den_b <= kExactLimit + 1 &&
      den_c <= kExactLimit + 1) {
    return static_cast<double>(m * (m + 1)) /
           static_cast<double>(2 * den_a * den_b * den_c);
  }
  return static_cast<double>(m) * static_cast<double>(m + 1) /
         (2.0 * static_cast<double>(den_a) * static_cast<double>(den_b) *
          static_cast<double>(den_c));
}

// Total Dirichlet weight of all Markov types compatible with symbol counts
// (n0, n1), both positive; the four addends correspond to the (first, last)
// bit combinations 00, 01, 10, 11. As with log_dirichlet_weight_l, the 1/2
// first-bit factor is not included.
inline double type_sum(long long n0, long long n1) {
  double sum = 0.0;
  if (n0 >= 2) sum += case_term(std::min(n0 - 1, n1), n0, n1, n1 + 1);
  sum += case_term(std::min(n0, n1), n0, n0 + 1, n1);
  sum += case_term(std::min(n0, n1), n0, n1, n1 + 1);
  if (n1 >= 2) sum += case_term(std::min(n0, n1 - 1), n0, n0 + 1, n1);
  return sum;
}

}  // namespace detail

/// Probability of one sequence of Markov type `t` under the uniform mixture
/// of binary Markov chains (uniform prior on the transition probabilities,
/// first bit fair). Degenerate types with N_{1-F} = 0 get mass 1/(2N), which
/// the general expression already yields.
inline LogValue umm_alternative_logprob(const MarkovType& t) {
  if (!t.is_valid()) {
    throw std::invalid_argument("umm_alternative_logprob: invalid type");
  }
  const long double r = detail::log_dirichlet_weight_l(t) -
                        static_cast<long double>(std::numbers::ln2);
  return LogValue::from_log(static_cast<double>(r));
}

/// Exchangeability lower benchmark: the mixture probability of the sequence
/// divided by the maximum likelihood over the exchangeability model,
/// (1/2) C(N, N1) N00! N01! N10! N11! / ((N0*+1)! (N1*+1)!).
inline LogValue elb(const MarkovType& t) {
  if (!t.is_valid()) throw std::invalid_argument("elb: invalid type");
  const long double r = detail::log_choose_l(t.n0() + t.n1(), t.n1()) +
                        detail::log_dirichlet_weight_l(t) -
                        static_cast<long double>(std::numbers::ln2);
  return LogValue::from_log(static_cast<double>(r));
}

inline LogValue elb(const BinarySequence& z) { return elb(markov_type(z)); }

/// Lower benchmark: mixture probability divided by the maximum likelihood
/// over the IID model, (N0/N)^N0 (N1/N)^N1 with the convention 0^0 = 1.
/// For N1 in {0, N} the type is degenerate and the ML factor equals 1.
inline LogValue lb(const MarkovType& t) {
  if (!t.is_valid()) throw std::invalid_argument("lb: invalid type");
  const long long n0 = t.n0(), n1 = t.n1(), n = n0 + n1;
  long double ml_log = 0.0L;
  if (n0 > 0) {
    ml_log += static_cast<long double>(n0) *
              std::log(static_cast<long double>(n0) / n);
  }
  if (n1 > 0) {
    ml_log += static_cast<long double>(n1) *
              std::log(static_cast<long double>(n1) / n);
  }
  const long double r = detail::log_dirichlet_weight_l(t) -
                        static_cast<long double>(std::numbers::ln2) - ml_log;
  return LogValue::from_log(static_cast<double>(r));
}

inline LogValue lb(const BinarySequence& z) { return lb(markov_type(z)); }

/// Upper benchmark: mixture probability divided by the likelihood under a
/// fixed IID measure with marginal (pi0, pi1). Not an exchangeability
/// e-variable; used for comparison only.
inline LogValue ub(const MarkovType& t, double pi0, double pi1) {
  if (!t.is_valid()) throw std::invalid_argument("ub: invalid type");
  if (!(pi0 >= 0.0 && pi0 <= 1.0 && pi1 >= 0.0 && pi1 <= 1.0) ||
      std::abs(pi0 + pi1 - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "ub: stationary probabilities must be in [0,1] and sum to 1");
  }
  const long long n0 = t.n0(), n1 = t.n1();
  if ((pi0 == 0.0 && n0 > 0) || (pi1 == 0.0 && n1 > 0)) {
    throw std::invalid_argument(
        "ub: zero stationary probability with a positive count");
  }
  long double denom_log = 0.0L;
  if (n0 > 0) denom_log += static_cast<long double>(n0) * std::log(pi0);
  if (n1 > 0) denom_log += static_cast<long double>(n1) * std::log(pi1);
  const long double r = detail::log_dirichlet_weight_l(t) -
                        static_cast<long double>(std::numbers::ln2) -
                        denom_log;
  return LogValue::from_log(static_cast<double>(r));
}

inline LogValue ub(const BinarySequence& z, double pi0, double pi1) {
  return ub(markov_type(z), pi0, pi1);
}

/// Mass that the uniform Markov mixture pushes onto the exchangeability
/// summary {N1 ones}: half the four-case type sum for interior N1, and
/// 1/(2N) for the two constant classes.
inline LogValue umm_summary_mass(long long n0, long long n1) {
  if (n0 < 0 || n1 < 0 || n0 + n1 < 2) {
    throw std::invalid_argument("umm_summary_mass: need N0+N1 >= 2");
  }
  if (n0 == 0 || n1 == 0) {
    return LogValue::from_linear(0.5 / static_cast<double>(n0 + n1));
  }
  return LogValue::from_linear(0.5 * detail::type_sum(n0, n1));
}

/// The uniformly mixed Markov (UMM) e-variable: likelihood ratio of the
/// uniform Markov mixture to the exchangeability null, computed in O(N).
/// Equals 1 by definition when the sequence is constant.
inline LogValue umm(const MarkovType& t) {
  if (!t.is_valid()) throw std::invalid_argument("umm: invalid type");
  const long long n0 = t.n0(), n1 = t.n1();
  if (n0 == 0 || n1 == 0) return LogValue::one();
  // Both the numerator and the type-sum denominator drop the common factor
  // 1/2, leaving the ratio unchanged.
  const long double log_num = detail::log_choose_l(n0 + n1, n1) +
                              detail::log_dirichlet_weight_l(t);
  const double sum = detail::type_sum(n0, n1);
  return LogValue::from_log(static_cast<double>(
      log_num - std::log(static_cast<long double>(sum))));
}

inline LogValue umm(const BinarySequence& z) { return umm(markov_type(z)); }

/// Result of checking the UMM/ELB ratio bounds: 1 <= UMM/ELB <= 2N always,
/// and UMM/ELB <= N unless N1 is 0 or N.
struct BoundsCheck {
  double ratio_log10 = 0.0;
  bool loose_ok = false;
  bool tight_applicable = false;
  bool tight_ok = false;
};

inline BoundsCheck check_bounds(const MarkovType& t) {
  constexpr double kTol = 1e-9;
  const long long n0 = t.n0(), n1 = t.n1();
  const double n = static_cast<double>(n0 + n1);
  BoundsCheck r;
  r.ratio_log10 = umm(t).log10() - elb(t).log10();
  r.loose_ok =
      r.ratio_log10 >= -kTol && r.ratio_log10 <= std::log10(2.0 * n) + kTol;
  r.tight_applicable = n0 > 0 && n1 > 0;
  r.tight_ok =
      !r.tight_applicable || r.ratio_log10 <= std::log10(n) + kTol;
  return r;
}

inline BoundsCheck check_bounds(const BinarySequence& z) {
  return check_bounds(markov_type(z));
}

/// Decimal logarithms of the four statistics for one sequence, plus its two
/// summaries. UB is present only when a stationary pair was supplied.
struct EValueReport {
  ExchType exch;
  MarkovType markov;
  double log10_umm = 0.0;
  double log10_elb = 0.0;
  double log10_lb = 0.0;
  std::optional<double> log10_ub;
  bool degenerate = false;  // N1 in {0, N}: LB uses the 0^0 = 1 convention
  BoundsCheck bounds;
};

inline EValueReport evalue_report(
    const BinarySequence& z,
    std::optional<std::pair<double, double>> ub_stationary = std::nullopt) {
  const MarkovType t = markov_type(z);
  EValueReport r;
  r.exch = exch_type(z);
  r.markov = t;
  r.log10_umm = umm(t).log10();
  r.log10_elb = elb(t).log10();
  r.log10_lb = lb(t).log10();
  if (ub_stationary) {
    r.log10_ub = ub(t, ub_stationary->first, ub_stationary->second).log10();
  }
  r.degenerate = r.exch.n0 == 0 || r.exch.n1 == 0;
  r.bounds = check_bounds(t);
  return r;
}

/// E-power of `e` under the alternative `q`: sum of q(z) ln e(z). Terms with
/// q(z) = 0 contribute nothing; q(z) > 0 with e(z) = 0 is undefined.
inline double ep(const std::function<LogValue(const BinarySequence&)>& e,
                 const EnumeratedMeasure& q) {
  q.validate();
  long double acc = 0.0L;
  for (std::uint64_t code = 0; code < q.mass.size(); ++code) {
    const LogValue qm = q.mass[code];
    if (qm.is_zero()) continue;
    const BinarySequence z = BinarySequence::from_code(q.horizon, code);
    const LogValue ev = e(z);
    if (ev.is_zero()) {
      throw std::domain_error("ep: e vanishes on the support of q");
    }
    acc += static_cast<long double>(qm.linear()) * ev.log();
  }
  return static_cast<double>(acc);
}

/// Maximum e-power of the alternative `q` for the compression model with
/// summarising statistic `t`: the expected log preimage size plus the
/// entropy of the pushed-forward summary distribution minus the entropy of
/// q itself (all entropies in nats).
inline double mep(const std::function<long long(const BinarySequence&)>& t,
                  const EnumeratedMeasure& q) {
  q.validate();
  struct ClassInfo {
    std::uint64_t size = 0;
    long double mass = 0.0L;
  };
  std::map<long long, ClassInfo> classes;
  long double h_q = 0.0L;
  for (std::uint64_t code = 0; code < q.mass.size(); ++code) {
    const BinarySequence z = BinarySequence::from_code(q.horizon, code);
    ClassInfo& info = classes[t(z)];
    ++info.size;
    const LogValue qm = q.mass[code];
    if (!qm.is_zero()) {
      const long double p = qm.linear();
      info.mass += p;
      h_q -= p * qm.log();
    }
  }
  long double acc = -h_q;
  for (const auto& [summary, info] : classes) {
    if (info.mass <= 0.0L) continue;
    acc += info.mass * std::log(static_cast<long double>(info.size));
    acc -= info.mass * std::log(info.mass);
  }
  return static_cast<double>(acc);
}

/// First piece of the asymptotic e-power constant (the expected
/// log-likelihood of the mixture, per observation).
inline double epower_constant_part_a() {
  const double l2 = std::numbers::ln2;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return (2.0 / 3.0) * l2 + (2.0 / 3.0) * l2 * l2 - pi2 / 9.0 - 1.0 / 6.0;
}

/// Second piece (the expected log binomial coefficient, per observation).
inline double epower_constant_part_b() {
  const double l2 = std::numbers::ln2;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 2.0 * l2 - pi2 / 12.0;
}

/// Asymptotic e-power per observation of the UMM e-variable under its own
/// alternative: (8/3) ln 2 + (2/3) ln^2 2 - (7/36) pi^2 - 1/6, about 0.083.
inline double mep_asymptotic_constant() {
  return epower_constant_part_a() + epower_constant_part_b();
}

}  // namespace exeval
