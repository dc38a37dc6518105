#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "exeval/enumerated_measure.hpp"
#include "exeval/log_value.hpp"
#include "exeval/markov_graph.hpp"
#include "exeval/sequence.hpp"

// Brute-force reference implementations, exercised only at small horizons.
// Everything rational is computed in exact arbitrary-precision arithmetic so
// that the fast log-domain paths can be validated against an independent,
// strictly more trustworthy route.
namespace exeval::oracle {

using Rational = boost::multiprecision::cpp_rational;

class HorizonTooLarge : public std::out_of_range {
  using std::out_of_range::out_of_range;
};

inline constexpr int kMaxHorizon = 16;
inline constexpr int kMaxCpHorizon = 14;

namespace detail {

inline void check_horizon(int n, int max_n, const char* where) {
  if (n < 2 || n > max_n) {
    throw HorizonTooLarge(std::string(where) + ": horizon must lie in [2, " +
                          std::to_string(max_n) + "]");
  }
}

inline double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

inline LogValue rational_to_logvalue(const Rational& r) {
  if (r == 0) return LogValue::zero();
  // Split into numerator/denominator logs so huge exact values stay finite.
  const long double ln_num =
      std::log(boost::multiprecision::numerator(r).convert_to<long double>());
  const long double ln_den = std::log(
      boost::multiprecision::denominator(r).convert_to<long double>());
  return LogValue::from_log(static_cast<double>(ln_num - ln_den));
}

}  // namespace detail

/// Exact mixture probability of one sequence of the given Markov type:
/// (1/2) N00! N01! N10! N11! / ((N0*+1)! (N1*+1)!).
inline Rational markov_mixture_mass(const MarkovType& t) {
  const BigInt num = big_factorial(t.n00) * big_factorial(t.n01) *
                     big_factorial(t.n10) * big_factorial(t.n11);
  const BigInt den = 2 * big_factorial(t.n0_star() + 1) *
                     big_factorial(t.n1_star() + 1);
  return Rational(num, den);
}

/// Exact per-sequence table of the uniform Markov mixture on {0,1}^n.
inline std::vector<Rational> umm_rational_table(int n) {
  detail::check_horizon(n, kMaxHorizon, "umm_rational_table");
  std::vector<Rational> table(std::size_t{1} << n);
  std::map<MarkovType, Rational> memo;
  for (std::uint64_t code = 0; code < table.size(); ++code) {
    const MarkovType t = markov_type(BinarySequence::from_code(n, code));
    auto it = memo.find(t);
    if (it == memo.end()) {
      it = memo.emplace(t, markov_mixture_mass(t)).first;
    }
    table[code] = it->second;
  }
  return table;
}

inline EnumeratedMeasure enumerate_umm(int n) {
  detail::check_horizon(n, kMaxHorizon, "enumerate_umm");
  const auto table = umm_rational_table(n);
  EnumeratedMeasure q;
  q.horizon = n;
  q.mass.reserve(table.size());
  for (const Rational& r : table) {
    q.mass.push_back(detail::rational_to_logvalue(r));
  }
  return q;
}

/// Exact value of the optimal e-variable for the exchangeability model under
/// the Markov mixture: class size times the conditional probability of the
/// sequence within its class. Computed entirely by enumeration.
inline Rational brute_umm_rational(const BinarySequence& z) {
  const int n = static_cast<int>(z.size());
  detail::check_horizon(n, kMaxHorizon, "brute_umm");
  const long long ones = exch_type(z).n1;
  const auto table = umm_rational_table(n);
  Rational class_mass = 0;
  BigInt class_size = 0;
  std::uint64_t z_code = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    z_code |= static_cast<std::uint64_t>(z[i]) << i;
  }
  for (std::uint64_t code = 0; code < table.size(); ++code) {
    long long c = 0;
    for (int i = 0; i < n; ++i) c += (code >> i) & 1u;
    if (c != ones) continue;
    class_mass += table[code];
    ++class_size;
  }
  return Rational(class_size) * table[z_code] / class_mass;
}

inline LogValue brute_umm(const BinarySequence& z) {
  return detail::rational_to_logvalue(brute_umm_rational(z));
}

/// Exact e-values of the whole horizon at once (indexed by sequence code);
/// one table build instead of one per sequence.
inline std::vector<Rational> brute_umm_table(int n) {
  detail::check_horizon(n, kMaxHorizon, "brute_umm_table");
  const auto mass = umm_rational_table(n);
  std::vector<Rational> class_mass(static_cast<std::size_t>(n) + 1);
  std::vector<BigInt> class_size(static_cast<std::size_t>(n) + 1);
  std::vector<int> ones_of(mass.size());
  for (std::uint64_t code = 0; code < mass.size(); ++code) {
    int c = 0;
    for (int i = 0; i < n; ++i) c += static_cast<int>((code >> i) & 1u);
    ones_of[code] = c;
    class_mass[static_cast<std::size_t>(c)] += mass[code];
    ++class_size[static_cast<std::size_t>(c)];
  }
  std::vector<Rational> evalue(mass.size());
  for (std::uint64_t code = 0; code < mass.size(); ++code) {
    const auto k = static_cast<std::size_t>(ones_of[code]);
    evalue[code] = Rational(class_size[k]) * mass[code] / class_mass[k];
  }
  return evalue;
}

/// Counts the sequences of length n whose Markov type equals `t`.
inline BigInt brute_type_count(const MarkovType& t, int n) {
  detail::check_horizon(n, kMaxHorizon, "brute_type_count");
  BigInt count = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    if (markov_type(BinarySequence::from_code(n, code)) == t) ++count;
  }
  return count;
}

/// Class-mean check of the defining e-variable property: for every summary
/// value, the arithmetic mean of `e` over the preimage must not exceed 1.
struct EVariableReport {
  double max_mean = 0.0;
  long long worst_summary = 0;
  bool pass = false;
};

inline EVariableReport verify_evariable(
    const std::function<LogValue(const BinarySequence&)>& e,
    const std::function<long long(const BinarySequence&)>& t, int n,
    double tolerance = 1e-9) {
  detail::check_horizon(n, kMaxHorizon, "verify_evariable");
  std::map<long long, std::pair<long double, std::uint64_t>> classes;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    const BinarySequence z = BinarySequence::from_code(n, code);
    auto& [sum, size] = classes[t(z)];
    sum += e(z).linear();
    ++size;
  }
  EVariableReport report;
  report.max_mean = -1.0;
  for (const auto& [summary, acc] : classes) {
    const double mean =
        static_cast<double>(acc.first / static_cast<long double>(acc.second));
    if (mean > report.max_mean) {
      report.max_mean = mean;
      report.worst_summary = summary;
    }
  }
  report.pass = report.max_mean <= 1.0 + tolerance;
  return report;
}

/// Per-sequence table of the changepoint mixture, via the direct double loop
/// over break locations (log-Beta arithmetic; the formula is not rational in
/// any convenient sense once summed, and floats suffice as reference here).
inline EnumeratedMeasure enumerate_cp(int n) {
  detail::check_horizon(n, kMaxCpHorizon, "enumerate_cp");
  EnumeratedMeasure q;
  q.horizon = n;
  q.mass.resize(std::size_t{1} << n);
  for (std::uint64_t code = 0; code < q.mass.size(); ++code) {
    std::vector<LogValue> terms;
    terms.reserve(static_cast<std::size_t>(n - 1));
    for (int split = 1; split <= n - 1; ++split) {
      long long left = 0, right = 0;
      for (int i = 0; i < n; ++i) {
        ((i < split) ? left : right) +=
            static_cast<long long>((code >> i) & 1u);
      }
      const double lg =
          log_beta(static_cast<double>(left) + 1.0,
                   static_cast<double>(split - left) + 1.0) +
          log_beta(static_cast<double>(right) + 1.0,
                   static_cast<double>((n - split) - right) + 1.0);
      terms.push_back(LogValue::from_log(lg));
    }
    q.mass[code] = log_sum(terms) /
                   LogValue::from_linear(static_cast<double>(n - 1));
  }
  return q;
}

/// General-alphabet census: how many strings of the given length over
/// {0,...,m-1} realize each (first, last, transition-count) type.
struct GeneralType {
  int first = 0;
  int last = 0;
  std::vector<long long> counts;  // m*m row-major

  friend auto operator<=>(const GeneralType&, const GeneralType&) = default;
};

inline std::map<GeneralType, long long> string_type_census(int alphabet,
                                                           int length) {
  if (alphabet < 1 || alphabet > 4 || length < 2 || length > 12) {
    throw std::out_of_range("string_type_census: infeasible enumeration");
  }
  std::map<GeneralType, long long> census;
  std::vector<int> symbols(static_cast<std::size_t>(length), 0);
  std::uint64_t total = 1;
  for (int i = 0; i < length; ++i) total *= static_cast<std::uint64_t>(alphabet);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < length; ++i) {
      symbols[static_cast<std::size_t>(i)] =
          static_cast<int>(c % static_cast<std::uint64_t>(alphabet));
      c /= static_cast<std::uint64_t>(alphabet);
    }
    GeneralType t;
    t.first = symbols.front();
    t.last = symbols.back();
    t.counts.assign(
        static_cast<std::size_t>(alphabet) * static_cast<std::size_t>(alphabet),
        0);
    for (int i = 0; i + 1 < length; ++i) {
      ++t.counts[static_cast<std::size_t>(symbols[static_cast<std::size_t>(i)]) *
                     static_cast<std::size_t>(alphabet) +
                 static_cast<std::size_t>(
                     symbols[static_cast<std::size_t>(i + 1)])];
    }
    ++census[t];
  }
  return census;
}

/// Spanning out-trees from the source by direct enumeration of parent-dart
/// choices; only for tiny alphabets.
inline BigInt brute_spanning_out_trees(const MarkovGraph& g) {
  g.validate();
  const int m = g.alphabet_size;
  if (m > 4) {
    throw std::out_of_range("brute_spanning_out_trees: alphabet too large");
  }
  std::vector<int> verts;
  verts.push_back(g.source);
  for (int v = 0; v < m; ++v) {
    if (v != g.source && g.out_degree(v) + g.in_degree(v) > 0) {
      verts.push_back(v);
    }
  }
  const int k = static_cast<int>(verts.size());
  if (k == 1) return 1;

  // Each non-source vertex picks a parent; weight the choice by the number
  // of parallel darts parent -> child, then keep only acyclic assignments.
  BigInt total = 0;
  std::vector<int> parent(static_cast<std::size_t>(k), 0);
  const auto count_assignment = [&]() {
    BigInt w = 1;
    for (int i = 1; i < k; ++i) {
      const long long darts = g.at(verts[static_cast<std::size_t>(
                                       parent[static_cast<std::size_t>(i)])],
                                   verts[static_cast<std::size_t>(i)]);
      if (darts == 0) return BigInt(0);
      w *= darts;
    }
    // Root-reachability: follow parents upward from every vertex.
    for (int i = 1; i < k; ++i) {
      int cur = i, steps = 0;
      while (cur != 0 && steps <= k) {
        cur = parent[static_cast<std::size_t>(cur)];
        ++steps;
      }
      if (cur != 0) return BigInt(0);
    }
    return w;
  };
  std::vector<int> choice(static_cast<std::size_t>(k), 0);
  std::uint64_t assignments = 1;
  for (int i = 1; i < k; ++i) assignments *= static_cast<std::uint64_t>(k);
  for (std::uint64_t code = 0; code < assignments; ++code) {
    std::uint64_t c = code;
    for (int i = 1; i < k; ++i) {
      parent[static_cast<std::size_t>(i)] =
          static_cast<int>(c % static_cast<std::uint64_t>(k));
      c /= static_cast<std::uint64_t>(k);
    }
    total += count_assignment();
  }
  return total;
}

}  // namespace exeval::oracle
