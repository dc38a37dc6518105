#pragma once

// Umbrella header: e-values for testing exchangeability of binary sequences
// against Markov and changepoint alternatives.

#include "exeval/changepoint.hpp"
#include "exeval/enumerated_measure.hpp"
#include "exeval/evalues.hpp"
#include "exeval/experiments.hpp"
#include "exeval/log_value.hpp"
#include "exeval/markov_graph.hpp"
#include "exeval/markov_params.hpp"
#include "exeval/markov_sim.hpp"
#include "exeval/oracle.hpp"
#include "exeval/rng.hpp"
#include "exeval/sequence.hpp"
#include "exeval/version.hpp"
