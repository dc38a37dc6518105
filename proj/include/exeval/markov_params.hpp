#pragma once

#include <stdexcept>
#include <utility>

namespace exeval {

/// The chain cannot leave its initial state (pi01 = pi10 = 0), so no
/// stationary distribution is defined.
class ReducibleChainError : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Transition probabilities of a binary Markov chain.
struct MarkovParams {
  double pi01 = 0.0;  // P(next = 1 | current = 0)
  double pi10 = 0.0;  // P(next = 0 | current = 1)

  double pi00() const { return 1.0 - pi01; }
  double pi11() const { return 1.0 - pi10; }

  void validate() const {
    if (!(pi01 >= 0.0 && pi01 <= 1.0 && pi10 >= 0.0 && pi10 <= 1.0)) {
      throw std::invalid_argument(
          "MarkovParams: transition probabilities must lie in [0,1]");
    }
  }
};

/// Stationary probabilities (pi0, pi1) of the chain; they sum to 1.
inline std::pair<double, double> stationary(const MarkovParams& p) {
  p.validate();
  const double s = p.pi01 + p.pi10;
  if (s == 0.0) {
    throw ReducibleChainError(
        "stationary: chain with pi01 = pi10 = 0 has no unique stationary "
        "distribution");
  }
  return {p.pi10 / s, p.pi01 / s};
}

}  // namespace exeval
