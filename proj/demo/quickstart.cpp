// Minimal tour of the library: score a few sequences, then run a small
// Monte Carlo comparison under the mixture alternative.

#include <cstdio>

#include "exeval/exeval.hpp"

int main() {
  for (const char* text : {"0101101001", "0000011111", "0000000000"}) {
    const auto z = exeval::BinarySequence::parse(text);
    const auto report = exeval::evalue_report(z);
    std::printf("%s  umm=%8.4f  elb=%8.4f  lb=%8.4f  (log10)%s\n", text,
                report.log10_umm, report.log10_elb, report.log10_lb,
                report.degenerate ? "  [constant]" : "");
  }

  exeval::ExperimentSpec spec;
  spec.generator = exeval::GeneratorSpec::umm_mixture(500, 2024);
  spec.replications = 2000;
  const auto result = exeval::run_experiment(spec);
  const auto& umm = result.summary.per_statistic.at(exeval::Statistic::umm);
  std::printf("\nmixture experiment, n=500, k=2000:\n");
  std::printf("  mean log10 UMM  %.3f (asymptotic %.3f)\n", umm.mean,
              result.summary.asymptotic_log10);
  std::printf("  UMM quantiles   [%.2f, %.2f, %.2f, %.2f, %.2f]\n",
              umm.quantiles[0], umm.quantiles[1], umm.quantiles[2],
              umm.quantiles[3], umm.quantiles[4]);

  const auto z = exeval::BinarySequence::parse(
      "00000000000000000000111111111111111111");
  const auto region = exeval::cp_confidence_region(z, 0.1);
  std::printf("\nchangepoint region at alpha=0.1:");
  for (long long tau : region.members) std::printf(" %lld", tau);
  std::printf("\n");
  return 0;
}
