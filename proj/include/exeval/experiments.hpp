#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "exeval/evalues.hpp"
#include "exeval/markov_sim.hpp"
#include "exeval/version.hpp"

namespace exeval {

enum class Statistic { elb, lb, ub, umm };

inline const char* statistic_name(Statistic s) {
  switch (s) {
    case Statistic::elb: return "elb";
    case Statistic::lb: return "lb";
    case Statistic::ub: return "ub";
    case Statistic::umm: return "umm";
  }
  return "?";
}

/// Configuration of one Monte Carlo experiment: a generator, the number of
/// replications, which statistics to record, and (when UB is requested for a
/// generator without derivable stationary probabilities) an explicit
/// stationary pair.
struct ExperimentSpec {
  GeneratorSpec generator;
  long long replications = 1;
  std::vector<Statistic> statistics = {Statistic::elb, Statistic::lb,
                                       Statistic::umm};
  std::optional<std::pair<double, double>> ub_stationary;
  int threads = 0;  // 0: EXEVAL_THREADS environment variable, else 1

  bool wants(Statistic s) const {
    return std::find(statistics.begin(), statistics.end(), s) !=
           statistics.end();
  }

  /// Stationary pair used by UB, derived from the generator when possible.
  std::pair<double, double> resolve_ub_stationary() const {
    if (ub_stationary) return *ub_stationary;
    switch (generator.kind) {
      case GeneratorKind::fixed_markov:
        return stationary(generator.params);
      case GeneratorKind::iid_bernoulli:
        return {1.0 - generator.bernoulli_p, generator.bernoulli_p};
      case GeneratorKind::umm_mixture:
        throw std::invalid_argument(
            "experiment: UB under the mixture generator needs an explicit "
            "stationary pair");
    }
    throw std::invalid_argument("experiment: unknown generator");
  }

  void validate() const {
    generator.validate();
    if (replications < 1) {
      throw std::invalid_argument("experiment: need at least 1 replication");
    }
    if (statistics.empty()) {
      throw std::invalid_argument("experiment: no statistics requested");
    }
    if (wants(Statistic::ub)) {
      const auto [pi0, pi1] = resolve_ub_stationary();
      if (!(pi0 > 0.0 && pi0 < 1.0 && pi1 > 0.0 && pi1 < 1.0)) {
        throw std::invalid_argument(
            "experiment: UB stationary probabilities must lie in (0,1)");
      }
    }
  }
};

/// One replication's results; statistics not requested stay NaN.
struct ReplicationRecord {
  long long index = 0;
  long long n1 = 0;
  double log10_elb = std::numeric_limits<double>::quiet_NaN();
  double log10_lb = std::numeric_limits<double>::quiet_NaN();
  double log10_ub = std::numeric_limits<double>::quiet_NaN();
  double log10_umm = std::numeric_limits<double>::quiet_NaN();
};

struct StatSummary {
  double mean = 0.0;
  double stddev = 0.0;
  // 5%, 25%, 50%, 75%, 95%
  std::array<double, 5> quantiles{};
};

struct ExperimentSummary {
  std::map<Statistic, StatSummary> per_statistic;
  double diff_mean = 0.0;         // mean(log10 UMM - log10 ELB)
  double bound_log10 = 0.0;       // log10 N, valid when N1 is interior
  double loose_bound_log10 = 0.0; // log10 2N, always valid
  long long degenerate_count = 0; // replications with N1 in {0, N}
  double asymptotic_log10 = 0.0;
};

struct ExperimentResult {
  ExperimentSummary summary;
  std::vector<ReplicationRecord> records;
};

/// Theoretical asymptotic mean of log10 UMM (and log10 ELB) under the
/// mixture alternative: N times the e-power constant, in decimal logs.
inline double asymptotic_log10(long long n) {
  return static_cast<double>(n) * mep_asymptotic_constant() /
         std::numbers::ln10;
}

namespace detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EXEVAL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

inline std::array<double, 5> quantiles_5_25_50_75_95(
    std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto at = [&](double p) {
    // Linear interpolation between order statistics.
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.05), at(0.25), at(0.50), at(0.75), at(0.95)};
}

}  // namespace detail

/// Runs the experiment. Replication i is a pure function of (seed, i), and
/// aggregation visits records in index order, so the result is bit-identical
/// for any thread count.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const long long k = spec.replications;
  const long long n = spec.generator.horizon;
  std::pair<double, double> ub_pair{0.0, 0.0};
  if (spec.wants(Statistic::ub)) ub_pair = spec.resolve_ub_stationary();

  std::vector<ReplicationRecord> records(static_cast<std::size_t>(k));
  const double loose_bound = std::log10(2.0 * static_cast<double>(n));

  const auto worker = [&](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      const BinarySequence z = generate(spec.generator, static_cast<std::uint64_t>(i));
      const MarkovType t = markov_type(z);
      ReplicationRecord& rec = records[static_cast<std::size_t>(i)];
      rec.index = i;
      rec.n1 = t.n1();
      if (spec.wants(Statistic::elb)) rec.log10_elb = elb(t).log10();
      if (spec.wants(Statistic::lb)) rec.log10_lb = lb(t).log10();
      if (spec.wants(Statistic::ub)) {
        rec.log10_ub = ub(t, ub_pair.first, ub_pair.second).log10();
      }
      if (spec.wants(Statistic::umm)) rec.log10_umm = umm(t).log10();
      if (spec.wants(Statistic::umm) && spec.wants(Statistic::elb)) {
        const double diff = rec.log10_umm - rec.log10_elb;
        if (diff < -1e-9 || diff > loose_bound + 1e-9) {
          throw std::logic_error(
              "experiment: UMM/ELB ratio bound violated; this indicates a "
              "computation bug");
        }
      }
    }
  };

  const int threads = detail::resolve_threads(spec.threads);
  if (threads <= 1 || k < 2 * threads) {
    worker(0, k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    const long long chunk = (k + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const long long lo = t * chunk;
      const long long hi = std::min<long long>(k, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, t, lo, hi]() {
        try {
          worker(lo, hi);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  ExperimentResult result;
  result.summary.bound_log10 = std::log10(static_cast<double>(n));
  result.summary.loose_bound_log10 = loose_bound;
  result.summary.asymptotic_log10 = asymptotic_log10(n);

  const auto column = [&](Statistic s) {
    std::vector<double> vals;
    vals.reserve(records.size());
    for (const auto& rec : records) {
      switch (s) {
        case Statistic::elb: vals.push_back(rec.log10_elb); break;
        case Statistic::lb: vals.push_back(rec.log10_lb); break;
        case Statistic::ub: vals.push_back(rec.log10_ub); break;
        case Statistic::umm: vals.push_back(rec.log10_umm); break;
      }
    }
    return vals;
  };

  for (Statistic s : spec.statistics) {
    const std::vector<double> vals = column(s);
    long double sum = 0.0L;
    for (double v : vals) sum += v;
    const double mean = static_cast<double>(sum / static_cast<long double>(k));
    long double sq = 0.0L;
    for (double v : vals) {
      sq += (static_cast<long double>(v) - mean) *
            (static_cast<long double>(v) - mean);
    }
    StatSummary ss;
    ss.mean = mean;
    ss.stddev = k > 1 ? static_cast<double>(
                            std::sqrt(sq / static_cast<long double>(k - 1)))
                      : 0.0;
    ss.quantiles = detail::quantiles_5_25_50_75_95(vals);
    result.summary.per_statistic[s] = ss;
  }

  if (spec.wants(Statistic::umm) && spec.wants(Statistic::elb)) {
    long double diff_sum = 0.0L;
    for (const auto& rec : records) {
      diff_sum += rec.log10_umm - rec.log10_elb;
    }
    result.summary.diff_mean =
        static_cast<double>(diff_sum / static_cast<long double>(k));
  }
  for (const auto& rec : records) {
    if (rec.n1 == 0 || rec.n1 == n) ++result.summary.degenerate_count;
  }

  result.records = std::move(records);
  return result;
}

namespace detail {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// Raw per-replication records as CSV, preceded by replayable metadata.
inline void write_csv(std::ostream& os, const ExperimentSpec& spec,
                      const ExperimentResult& result) {
  os << "# exeval " << kVersion << "\n";
  os << "# seed: " << spec.generator.seed << "\n";
  os << "# rng: " << kRngName << "\n";
  os << "# generator: " << spec.generator.description() << "\n";
  os << "# n: " << spec.generator.horizon
     << ", k: " << spec.replications << "\n";
  os << "replication_index,n1,log10_elb,log10_lb,log10_ub,log10_umm\n";
  for (const auto& rec : result.records) {
    os << rec.index << ',' << rec.n1 << ','
       << detail::format_double(rec.log10_elb) << ','
       << detail::format_double(rec.log10_lb) << ','
       << detail::format_double(rec.log10_ub) << ','
       << detail::format_double(rec.log10_umm) << '\n';
  }
}

/// Summary (plus an embedded copy of the spec) as JSON.
inline nlohmann::json summary_json(const ExperimentSpec& spec,
                                   const ExperimentResult& result) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["rng"] = kRngName;
  j["seed"] = spec.generator.seed;
  j["generator"] = spec.generator.description();
  j["n"] = spec.generator.horizon;
  j["k"] = spec.replications;
  nlohmann::json stats = nlohmann::json::array();
  for (Statistic s : spec.statistics) stats.push_back(statistic_name(s));
  j["statistics"] = stats;
  if (spec.wants(Statistic::ub)) {
    const auto [pi0, pi1] = spec.resolve_ub_stationary();
    j["ub_stationary"] = {pi0, pi1};
  }
  nlohmann::json per;
  for (const auto& [s, ss] : result.summary.per_statistic) {
    nlohmann::json e;
    e["mean_log10"] = ss.mean;
    e["stddev_log10"] = ss.stddev;
    e["quantiles_log10"] = ss.quantiles;
    e["quantile_levels"] = {0.05, 0.25, 0.50, 0.75, 0.95};
    per[statistic_name(s)] = e;
  }
  j["per_statistic"] = per;
  if (spec.wants(Statistic::umm) && spec.wants(Statistic::elb)) {
    j["diff_mean_log10"] = result.summary.diff_mean;
  }
  j["bound_log10"] = result.summary.bound_log10;
  j["loose_bound_log10"] = result.summary.loose_bound_log10;
  j["degenerate_count"] = result.summary.degenerate_count;
  j["asymptotic_log10"] = result.summary.asymptotic_log10;
  return j;
}

}  // namespace exeval
