#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "exeval/markov_params.hpp"
#include "exeval/markov_sim.hpp"
#include "exeval/sequence.hpp"

using exeval::BinarySequence;
using exeval::GeneratorSpec;
using exeval::MarkovParams;

TEST_CASE("stationary probabilities") {
  const auto [a0, a1] = exeval::stationary({0.1, 0.1});
  CHECK_THAT(a0, Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THAT(a1, Catch::Matchers::WithinAbs(0.5, 1e-15));

  const auto [b0, b1] = exeval::stationary({0.1, 0.3});
  CHECK_THAT(b0, Catch::Matchers::WithinAbs(0.75, 1e-15));
  CHECK_THAT(b1, Catch::Matchers::WithinAbs(0.25, 1e-15));

  const auto [c0, c1] = exeval::stationary({1.0, 1.0});
  CHECK_THAT(c0, Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK(c0 + c1 == 1.0);

  CHECK_THROWS_AS(exeval::stationary({0.0, 0.0}),
                  exeval::ReducibleChainError);
  CHECK_THROWS_AS(exeval::stationary({-0.1, 0.5}), std::invalid_argument);
}

TEST_CASE("absorbing and alternating chains") {
  const auto constant =
      GeneratorSpec::fixed_markov({0.0, 0.0}, 50, 123);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const BinarySequence z = exeval::generate(constant, i);
    for (std::size_t j = 0; j < z.size(); ++j) CHECK(z[j] == z[0]);
  }

  const auto alternating =
      GeneratorSpec::fixed_markov({1.0, 1.0}, 50, 123);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const BinarySequence z = exeval::generate(alternating, i);
    for (std::size_t j = 1; j < z.size(); ++j) CHECK(z[j] == 1 - z[j - 1]);
  }
}

TEST_CASE("generation is reproducible and order-independent") {
  const auto spec = GeneratorSpec::umm_mixture(200, 0xDEADBEEF);
  const BinarySequence a = exeval::generate(spec, 17);
  const BinarySequence b = exeval::generate(spec, 3);
  const BinarySequence a_again = exeval::generate(spec, 17);
  CHECK(a.bits() == a_again.bits());
  CHECK(a.bits() != b.bits());  // distinct substreams (overwhelmingly)

  // Frozen draws: any change to the generator algorithm must be deliberate,
  // since it invalidates recorded experiments.
  const auto frozen = GeneratorSpec::fixed_markov({0.3, 0.7}, 12, 42);
  CHECK(exeval::generate(frozen, 0).to_string() == "111101000000");
  CHECK(exeval::generate(frozen, 1).to_string() == "101010000110");
}

TEST_CASE("symmetric chain balances ones and zeros") {
  const auto spec = GeneratorSpec::fixed_markov({0.1, 0.1}, 20, 777);
  long long ones = 0;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) {
    ones += exch_type(exeval::generate(spec, static_cast<std::uint64_t>(i))).n1;
  }
  const double frac =
      static_cast<double>(ones) / (20.0 * static_cast<double>(reps));
  CHECK_THAT(frac, Catch::Matchers::WithinAbs(0.5, 0.01));
}

TEST_CASE("empirical transition frequency approaches pi01") {
  // Deterministic given the seed; with 1e5 transitions per replication the
  // 0.01 tolerance holds for essentially every substream.
  const auto spec = GeneratorSpec::fixed_markov({0.3, 0.7}, 100000, 2024);
  int within = 0;
  const int reps = 100;
  for (int i = 0; i < reps; ++i) {
    const auto t =
        markov_type(exeval::generate(spec, static_cast<std::uint64_t>(i)));
    const double freq01 =
        static_cast<double>(t.n01) / static_cast<double>(t.n0_star());
    if (std::abs(freq01 - 0.3) <= 0.01) ++within;
  }
  CHECK(within >= 99);
}

TEST_CASE("iid generator respects p") {
  const auto all_ones = GeneratorSpec::iid_bernoulli(1.0, 30, 5);
  CHECK(exch_type(exeval::generate(all_ones, 0)).n0 == 0);
  const auto all_zeros = GeneratorSpec::iid_bernoulli(0.0, 30, 5);
  CHECK(exch_type(exeval::generate(all_zeros, 0)).n1 == 0);

  const auto fair = GeneratorSpec::iid_bernoulli(0.5, 10000, 5);
  const double frac =
      static_cast<double>(exch_type(exeval::generate(fair, 0)).n1) / 10000.0;
  CHECK_THAT(frac, Catch::Matchers::WithinAbs(0.5, 0.03));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(GeneratorSpec::umm_mixture(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSpec::iid_bernoulli(1.5, 10, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSpec::fixed_markov({0.5, 1.0001}, 10, 0),
                  std::invalid_argument);
}
