#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

#include "exeval/sequence.hpp"

namespace exeval {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_factorial(long long n) {
  if (n < 0) throw std::domain_error("big_factorial: n must be nonnegative");
  BigInt r = 1;
  for (long long k = 2; k <= n; ++k) r *= k;
  return r;
}

/// A directed multigraph of transition counts over an m-letter alphabet,
/// with designated source and sink vertices. counts[u*m + v] is the number
/// of darts u -> v.
struct MarkovGraph {
  int alphabet_size = 0;
  std::vector<long long> counts;
  int source = 0;
  int sink = 0;

  long long at(int u, int v) const {
    return counts[static_cast<std::size_t>(u) *
                      static_cast<std::size_t>(alphabet_size) +
                  static_cast<std::size_t>(v)];
  }

  long long out_degree(int v) const {
    long long d = 0;
    for (int w = 0; w < alphabet_size; ++w) d += at(v, w);
    return d;
  }

  long long in_degree(int v) const {
    long long d = 0;
    for (int u = 0; u < alphabet_size; ++u) d += at(u, v);
    return d;
  }

  void validate() const {
    if (alphabet_size < 1) {
      throw std::invalid_argument("MarkovGraph: alphabet size must be >= 1");
    }
    if (counts.size() != static_cast<std::size_t>(alphabet_size) *
                             static_cast<std::size_t>(alphabet_size)) {
      throw std::invalid_argument("MarkovGraph: counts matrix has wrong size");
    }
    for (long long c : counts) {
      if (c < 0) throw std::invalid_argument("MarkovGraph: negative count");
    }
    if (source < 0 || source >= alphabet_size || sink < 0 ||
        sink >= alphabet_size) {
      throw std::invalid_argument("MarkovGraph: source/sink out of range");
    }
  }

  /// The two-vertex graph of a binary Markov type.
  static MarkovGraph from_markov_type(const MarkovType& t) {
    MarkovGraph g;
    g.alphabet_size = 2;
    g.counts = {t.n00, t.n01, t.n10, t.n11};
    g.source = t.first;
    g.sink = t.last;
    return g;
  }

  /// The graph of an arbitrary string over {0,...,m-1}.
  static MarkovGraph from_string(std::span<const int> symbols, int m) {
    if (symbols.size() < 2) {
      throw std::invalid_argument("MarkovGraph: need at least 2 symbols");
    }
    MarkovGraph g;
    g.alphabet_size = m;
    g.counts.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m),
                    0);
    for (int s : symbols) {
      if (s < 0 || s >= m) {
        throw std::invalid_argument("MarkovGraph: symbol out of alphabet");
      }
    }
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      ++g.counts[static_cast<std::size_t>(symbols[i]) *
                     static_cast<std::size_t>(m) +
                 static_cast<std::size_t>(symbols[i + 1])];
    }
    g.source = symbols.front();
    g.sink = symbols.back();
    return g;
  }
};

namespace detail {

// Determinant by fraction-free (Bareiss) elimination; every intermediate
// quotient is exact, so the result is the exact integer determinant.
inline BigInt integer_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (a[i][i] == 0) {
      std::size_t pivot = i;
      for (std::size_t r = i + 1; r < n; ++r) {
        if (a[r][i] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot == i) return 0;
      std::swap(a[i], a[pivot]);
      sign = -sign;
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      for (std::size_t c = i + 1; c < n; ++c) {
        a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
      }
      a[r][i] = 0;
    }
    prev = a[i][i];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace detail

/// Number of spanning out-trees of the underlying digraph rooted at the
/// source: arborescences in which every other active vertex has exactly one
/// incoming dart and is reachable from the source. Vertices with no darts
/// are ignored (the source itself always counts as active). Returns 0 for a
/// graph whose active part is not spanned by any such tree.
inline BigInt spanning_out_trees(const MarkovGraph& g) {
  g.validate();
  const int m = g.alphabet_size;

  // Active vertices, source first.
  std::vector<int> verts;
  verts.push_back(g.source);
  for (int v = 0; v < m; ++v) {
    if (v == g.source) continue;
    if (g.out_degree(v) + g.in_degree(v) > 0) verts.push_back(v);
  }
  const std::size_t k = verts.size();
  if (k == 1) return 1;

  // Kirchhoff matrix with columns summing to zero: off-diagonal entries are
  // -N_{u,v}, the diagonal entry of column v is its in-degree less self-loops.
  // The cofactor of the source's diagonal entry counts out-trees.
  std::vector<std::vector<BigInt>> minor(k - 1, std::vector<BigInt>(k - 1));
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = 1; j < k; ++j) {
      if (i == j) {
        long long diag = 0;
        for (std::size_t u = 0; u < k; ++u) {
          if (u != j) diag += g.at(verts[u], verts[j]);
        }
        minor[i - 1][j - 1] = diag;
      } else {
        minor[i - 1][j - 1] = -g.at(verts[i], verts[j]);
      }
    }
  }
  return detail::integer_determinant(std::move(minor));
}

/// Number of Eulerian paths from source to sink after identifying parallel
/// darts, i.e. the number of distinct strings realizing the graph's
/// transition counts with the given endpoints:
///
///   T * out(sink)! * prod_{v != sink} (out(v)-1)! / prod_{u,v} N_{u,v}!
///
/// where T counts spanning out-trees rooted at the source. Grouping
/// out(sink)*(out(sink)-1)! as out(sink)! makes the expression well defined
/// when the sink has no outgoing dart (equivalently, one can evaluate the
/// ungrouped form on the graph augmented with an extra closing dart).
/// Returns 0 when the degree-balance condition for an Eulerian path fails.
inline BigInt eulerian_path_count(const MarkovGraph& g) {
  g.validate();
  const int m = g.alphabet_size;

  for (int v = 0; v < m; ++v) {
    const long long balance = g.out_degree(v) - g.in_degree(v);
    const long long want = (v == g.source ? 1 : 0) - (v == g.sink ? 1 : 0);
    if (balance != want) return 0;
  }

  long long total_darts = 0;
  for (long long c : g.counts) total_darts += c;
  if (total_darts == 0) return g.source == g.sink ? 1 : 0;

  const BigInt trees = spanning_out_trees(g);
  if (trees == 0) return 0;

  BigInt numerator = trees * big_factorial(g.out_degree(g.sink));
  for (int v = 0; v < m; ++v) {
    if (v == g.sink) continue;
    const long long d = g.out_degree(v);
    if (d > 0) numerator *= big_factorial(d - 1);
  }
  BigInt denominator = 1;
  for (long long c : g.counts) {
    if (c > 1) denominator *= big_factorial(c);
  }
  BigInt quotient, remainder;
  boost::multiprecision::divide_qr(numerator, denominator, quotient,
                                   remainder);
  if (remainder != 0) {
    throw std::logic_error("eulerian_path_count: inexact division");
  }
  return quotient;
}

/// Closed form for the binary case: the number of binary sequences having
/// Markov type `t`. Equals eulerian_path_count of the two-vertex graph.
inline BigInt binary_type_count(const MarkovType& t) {
  if (!t.is_valid()) {
    throw std::invalid_argument("binary_type_count: invalid Markov type");
  }
  const long long n0 = t.n0();
  const long long n1 = t.n1();
  if (n0 == 0 || n1 == 0) return 1;
  const long long darts_to_other = t.first == 0 ? t.n01 : t.n10;
  BigInt numerator = BigInt(darts_to_other) * big_factorial(n0 - 1) *
                     big_factorial(n1 - 1);
  BigInt denominator = big_factorial(t.n00) * big_factorial(t.n01) *
                       big_factorial(t.n10) * big_factorial(t.n11);
  BigInt quotient, remainder;
  boost::multiprecision::divide_qr(numerator, denominator, quotient,
                                   remainder);
  if (remainder != 0) {
    throw std::logic_error("binary_type_count: inexact division");
  }
  return quotient;
}

}  // namespace exeval
