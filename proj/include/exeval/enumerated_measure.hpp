#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "exeval/log_value.hpp"

namespace exeval {

/// A probability measure on {0,1}^horizon given by an explicit table,
/// indexed by sequence code (bit i of the code is observation z_{i+1}).
/// Only feasible for small horizons; the enumeration oracles produce these.
struct EnumeratedMeasure {
  int horizon = 0;
  std::vector<LogValue> mass;  // size 2^horizon

  LogValue total() const {
    return log_sum(std::span<const LogValue>(mass.data(), mass.size()));
  }

  void validate() const {
    if (horizon < 1 || horizon > 30) {
      throw std::invalid_argument("EnumeratedMeasure: bad horizon");
    }
    if (mass.size() != (std::size_t{1} << horizon)) {
      throw std::invalid_argument("EnumeratedMeasure: table size mismatch");
    }
  }
};

}  // namespace exeval
