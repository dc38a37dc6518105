#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "exeval/markov_params.hpp"
#include "exeval/rng.hpp"
#include "exeval/sequence.hpp"

namespace exeval {

enum class GeneratorKind { fixed_markov, umm_mixture, iid_bernoulli };

/// Configuration of a data generator: what to sample, the horizon, and the
/// master seed. A (spec, replication index) pair determines the produced
/// sequence exactly.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::fixed_markov;
  MarkovParams params;    // fixed_markov only
  double bernoulli_p = 0.5;  // iid_bernoulli only
  long long horizon = 2;
  std::uint64_t seed = 0;

  static GeneratorSpec fixed_markov(MarkovParams p, long long n,
                                    std::uint64_t seed) {
    p.validate();
    GeneratorSpec s;
    s.kind = GeneratorKind::fixed_markov;
    s.params = p;
    s.horizon = n;
    s.seed = seed;
    s.validate();
    return s;
  }

  static GeneratorSpec umm_mixture(long long n, std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = GeneratorKind::umm_mixture;
    s.horizon = n;
    s.seed = seed;
    s.validate();
    return s;
  }

  static GeneratorSpec iid_bernoulli(double p, long long n,
                                     std::uint64_t seed) {
    GeneratorSpec s;
    s.kind = GeneratorKind::iid_bernoulli;
    s.bernoulli_p = p;
    s.horizon = n;
    s.seed = seed;
    s.validate();
    return s;
  }

  void validate() const {
    if (horizon < 2) {
      throw std::invalid_argument("GeneratorSpec: horizon must be >= 2");
    }
    params.validate();
    if (!(bernoulli_p >= 0.0 && bernoulli_p <= 1.0)) {
      throw std::invalid_argument("GeneratorSpec: p must lie in [0,1]");
    }
  }

  std::string description() const {
    std::ostringstream os;
    switch (kind) {
      case GeneratorKind::fixed_markov:
        os << "fixed_markov(pi01=" << params.pi01 << ",pi10=" << params.pi10
           << ")";
        break;
      case GeneratorKind::umm_mixture:
        os << "umm_mixture";
        break;
      case GeneratorKind::iid_bernoulli:
        os << "iid_bernoulli(p=" << bernoulli_p << ")";
        break;
    }
    return os.str();
  }
};

/// Draws one sequence. Draw order within a substream is fixed: mixture
/// parameters first (umm_mixture only: pi01 then pi10), then the first bit
/// (1 with probability 1/2 for the Markov kinds), then one uniform draw per
/// remaining position.
inline BinarySequence generate(const GeneratorSpec& spec,
                               std::uint64_t replication_index) {
  spec.validate();
  SplitMix64 rng(substream_seed(spec.seed, replication_index));
  const std::size_t n = static_cast<std::size_t>(spec.horizon);
  std::vector<std::uint8_t> bits(n);

  if (spec.kind == GeneratorKind::iid_bernoulli) {
    for (std::size_t i = 0; i < n; ++i) {
      bits[i] = rng.next_unit() < spec.bernoulli_p ? 1 : 0;
    }
    return BinarySequence(std::move(bits));
  }

  double pi01 = spec.params.pi01;
  double pi10 = spec.params.pi10;
  if (spec.kind == GeneratorKind::umm_mixture) {
    pi01 = rng.next_unit();
    pi10 = rng.next_unit();
  }
  bits[0] = rng.next_unit() < 0.5 ? 1 : 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double u = rng.next_unit();
    bits[i] = bits[i - 1] == 0 ? (u < pi01 ? 1 : 0) : (u < pi10 ? 0 : 1);
  }
  return BinarySequence(std::move(bits));
}

}  // namespace exeval
