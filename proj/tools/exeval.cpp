// Command-line surface for the exchangeability e-value library: single-shot
// e-value reports, data simulation, Monte Carlo experiments, changepoint
// analysis, and the brute-force validation suite.
//
// Exit codes: 0 success, 1 validation failure, 2 input error, 3 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "exeval/exeval.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;
constexpr int kExitUsage = 3;

struct SequenceInput {
  std::string inline_text;
  std::string text_file;
  std::string raw_file;
};

void add_sequence_options(CLI::App* cmd, SequenceInput& in) {
  auto* seq = cmd->add_option("--seq", in.inline_text,
                              "Sequence as a string over {0,1}");
  auto* file = cmd->add_option("--file", in.text_file,
                               "Text file with the sequence (whitespace ok)");
  auto* raw = cmd->add_option(
      "--raw-file", in.raw_file,
      "Raw binary file, one observation per byte (0x00/0x01)");
  seq->excludes(file)->excludes(raw);
  file->excludes(raw);
}

exeval::BinarySequence load_sequence(const SequenceInput& in) {
  if (!in.raw_file.empty()) {
    std::ifstream f(in.raw_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + in.raw_file);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                     std::istreambuf_iterator<char>());
    return exeval::BinarySequence::from_bytes(bytes);
  }
  if (!in.text_file.empty()) {
    std::ifstream f(in.text_file);
    if (!f) throw std::runtime_error("cannot open " + in.text_file);
    std::stringstream ss;
    ss << f.rdbuf();
    return exeval::BinarySequence::parse(ss.str());
  }
  if (!in.inline_text.empty()) {
    return exeval::BinarySequence::parse(in.inline_text);
  }
  std::stringstream ss;
  ss << std::cin.rdbuf();
  return exeval::BinarySequence::parse(ss.str());
}

std::string fmt(double v, int precision = 6) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

void print_metadata(const std::string& command,
                    const std::optional<std::string>& generator,
                    std::optional<std::uint64_t> seed) {
  std::cout << "# exeval " << exeval::kVersion << "\n";
  std::cout << "# command: " << command << "\n";
  std::cout << "# seed: " << (seed ? std::to_string(*seed) : "n/a") << "\n";
  std::cout << "# generator: " << (generator ? *generator : "n/a")
            << " (rng: " << exeval::kRngName << ")\n";
}

nlohmann::json metadata_json(const std::string& command,
                             const std::optional<std::string>& generator,
                             std::optional<std::uint64_t> seed) {
  nlohmann::json j;
  j["version"] = exeval::kVersion;
  j["command"] = command;
  j["rng"] = exeval::kRngName;
  if (seed) j["seed"] = *seed;
  if (generator) j["generator"] = *generator;
  return j;
}

// ---------------------------------------------------------------------------
// evalue

struct EvalueArgs {
  SequenceInput input;
  std::vector<std::string> stats = {"umm", "elb", "lb"};
  double ub_pi0 = -1.0;
  double ub_pi1 = -1.0;
  std::string format = "text";
};

int run_evalue(const EvalueArgs& args) {
  bool wants_ub = false;
  for (const auto& s : args.stats) {
    if (s == "ub") {
      wants_ub = true;
    } else if (s != "umm" && s != "elb" && s != "lb") {
      std::cerr << "error: unknown statistic '" << s << "'\n";
      return kExitUsage;
    }
  }
  const exeval::BinarySequence z = load_sequence(args.input);
  std::optional<std::pair<double, double>> ub_pair;
  if (wants_ub) {
    if (args.ub_pi0 < 0.0 || args.ub_pi1 < 0.0) {
      std::cerr << "error: --stats ub requires --ub-pi0 and --ub-pi1\n";
      return kExitUsage;
    }
    ub_pair = {{args.ub_pi0, args.ub_pi1}};
  }
  const exeval::EValueReport report = exeval::evalue_report(z, ub_pair);

  const auto value_of = [&](const std::string& name) -> double {
    if (name == "umm") return report.log10_umm;
    if (name == "elb") return report.log10_elb;
    if (name == "lb") return report.log10_lb;
    if (name == "ub") return *report.log10_ub;
    throw std::invalid_argument("unknown statistic: " + name);
  };

  if (args.format == "json") {
    nlohmann::json j = metadata_json("evalue", std::nullopt, std::nullopt);
    j["n"] = z.horizon();
    j["exch"] = {{"n0", report.exch.n0}, {"n1", report.exch.n1}};
    j["markov"] = {{"first", report.markov.first},
                   {"n00", report.markov.n00},
                   {"n01", report.markov.n01},
                   {"n10", report.markov.n10},
                   {"n11", report.markov.n11},
                   {"last", report.markov.last}};
    nlohmann::json stats;
    for (const auto& name : args.stats) {
      const double l10 = value_of(name);
      nlohmann::json e;
      e["log10"] = l10;
      if (std::abs(l10) <= 300.0) e["linear"] = std::pow(10.0, l10);
      stats[name] = e;
    }
    j["statistics"] = stats;
    j["degenerate"] = report.degenerate;
    j["bounds"] = {{"ratio_log10", report.bounds.ratio_log10},
                   {"loose_ok", report.bounds.loose_ok},
                   {"tight_applicable", report.bounds.tight_applicable},
                   {"tight_ok", report.bounds.tight_ok}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  print_metadata("evalue", std::nullopt, std::nullopt);
  std::cout << "# input: N=" << z.horizon() << " N0=" << report.exch.n0
            << " N1=" << report.exch.n1 << " F=" << report.markov.first
            << " L=" << report.markov.last << " N00=" << report.markov.n00
            << " N01=" << report.markov.n01 << " N10=" << report.markov.n10
            << " N11=" << report.markov.n11 << "\n";
  for (const auto& name : args.stats) {
    const double l10 = value_of(name);
    std::cout << name << " log10=" << fmt(l10, 12);
    if (std::abs(l10) <= 300.0) {
      std::cout << " linear=" << fmt(std::pow(10.0, l10), 12);
    }
    std::cout << "\n";
  }
  std::cout << "# degenerate: " << (report.degenerate ? "yes" : "no") << "\n";
  std::cout << "# umm/elb ratio_log10: " << fmt(report.bounds.ratio_log10)
            << " (loose " << (report.bounds.loose_ok ? "ok" : "VIOLATED")
            << "; tight "
            << (report.bounds.tight_applicable
                    ? (report.bounds.tight_ok ? "ok" : "exceeded")
                    : "not applicable")
            << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate / experiment

struct GeneratorArgs {
  std::string gen = "umm";
  double pi01 = 0.5;
  double pi10 = 0.5;
  double p = 0.5;
  long long n = 100;
  std::uint64_t seed = 0;

  exeval::GeneratorSpec spec() const {
    if (gen == "markov") {
      return exeval::GeneratorSpec::fixed_markov({pi01, pi10}, n, seed);
    }
    if (gen == "umm") return exeval::GeneratorSpec::umm_mixture(n, seed);
    if (gen == "bernoulli") {
      return exeval::GeneratorSpec::iid_bernoulli(p, n, seed);
    }
    throw CLI::ValidationError("--gen must be markov, umm, or bernoulli");
  }
};

void add_generator_options(CLI::App* cmd, GeneratorArgs& g) {
  cmd->add_option("--gen", g.gen, "Generator: markov, umm, or bernoulli")
      ->check(CLI::IsMember({"markov", "umm", "bernoulli"}));
  cmd->add_option("--pi01", g.pi01, "P(next=1 | current=0) for --gen markov");
  cmd->add_option("--pi10", g.pi10, "P(next=0 | current=1) for --gen markov");
  cmd->add_option("--p", g.p, "Success probability for --gen bernoulli");
  cmd->add_option("--n", g.n, "Horizon (sequence length)")->required();
  cmd->add_option("--seed", g.seed, "Master seed");
}

struct SimulateArgs {
  GeneratorArgs gen;
  long long k = 1;
};

int run_simulate(const SimulateArgs& args) {
  const exeval::GeneratorSpec spec = args.gen.spec();
  print_metadata("simulate", spec.description(), spec.seed);
  for (long long i = 0; i < args.k; ++i) {
    std::cout << exeval::generate(spec, static_cast<std::uint64_t>(i))
                     .to_string()
              << "\n";
  }
  return kExitOk;
}

struct ExperimentArgs {
  GeneratorArgs gen;
  long long k = 1000;
  std::vector<std::string> stats;
  double ub_pi0 = -1.0;
  double ub_pi1 = -1.0;
  std::string out_prefix;
  std::string format = "text";
  int threads = 0;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  exeval::ExperimentSpec spec;
  spec.generator = args.gen.spec();
  spec.replications = args.k;
  spec.threads = args.threads;

  if (!args.stats.empty()) {
    spec.statistics.clear();
    for (const auto& name : args.stats) {
      if (name == "elb") spec.statistics.push_back(exeval::Statistic::elb);
      else if (name == "lb") spec.statistics.push_back(exeval::Statistic::lb);
      else if (name == "ub") spec.statistics.push_back(exeval::Statistic::ub);
      else if (name == "umm") spec.statistics.push_back(exeval::Statistic::umm);
      else {
        std::cerr << "error: unknown statistic '" << name << "'\n";
        return kExitUsage;
      }
    }
  } else {
    spec.statistics = {exeval::Statistic::elb, exeval::Statistic::lb,
                       exeval::Statistic::umm};
    if (spec.generator.kind == exeval::GeneratorKind::fixed_markov ||
        (args.ub_pi0 >= 0.0 && args.ub_pi1 >= 0.0)) {
      spec.statistics.push_back(exeval::Statistic::ub);
    }
  }
  if (args.ub_pi0 >= 0.0 || args.ub_pi1 >= 0.0) {
    if (args.ub_pi0 < 0.0 || args.ub_pi1 < 0.0) {
      std::cerr << "error: --ub-pi0 and --ub-pi1 must be given together\n";
      return kExitUsage;
    }
    spec.ub_stationary = {{args.ub_pi0, args.ub_pi1}};
  }

  const exeval::ExperimentResult result = exeval::run_experiment(spec);
  const nlohmann::json summary = exeval::summary_json(spec, result);

  if (!args.out_prefix.empty()) {
    const std::string csv_path = args.out_prefix + ".csv";
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    exeval::write_csv(csv, spec, result);
    const std::string json_path = args.out_prefix + ".json";
    std::ofstream js(json_path);
    if (!js) throw std::runtime_error("cannot write " + json_path);
    js << summary.dump(2) << "\n";
  }

  if (args.format == "json") {
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
  }

  print_metadata("experiment", spec.generator.description(),
                 spec.generator.seed);
  std::cout << "# n: " << spec.generator.horizon << ", k: " << spec.replications
            << "\n";
  const auto mean_of = [&](exeval::Statistic s) {
    const auto it = result.summary.per_statistic.find(s);
    return it == result.summary.per_statistic.end()
               ? std::numeric_limits<double>::quiet_NaN()
               : it->second.mean;
  };
  std::cout << "mean_log10:";
  for (exeval::Statistic s : spec.statistics) {
    std::cout << ' ' << exeval::statistic_name(s) << '=' << fmt(mean_of(s));
  }
  std::cout << "\n";
  if (spec.wants(exeval::Statistic::umm) &&
      spec.wants(exeval::Statistic::elb)) {
    std::cout << "diff_mean=" << fmt(result.summary.diff_mean)
              << " bound_log10=" << fmt(result.summary.bound_log10)
              << " loose_bound_log10=" << fmt(result.summary.loose_bound_log10)
              << " degenerate_count=" << result.summary.degenerate_count
              << "\n";
  }
  std::cout << "asymptotic_log10=" << fmt(result.summary.asymptotic_log10)
            << "\n";
  if (spec.wants(exeval::Statistic::umm)) {
    const auto& q =
        result.summary.per_statistic.at(exeval::Statistic::umm).quantiles;
    std::cout << "umm_quantiles_log10=[" << fmt(q[0]) << ", " << fmt(q[1])
              << ", " << fmt(q[2]) << ", " << fmt(q[3]) << ", " << fmt(q[4])
              << "]\n";
  }
  if (!args.out_prefix.empty()) {
    std::cout << "# wrote " << args.out_prefix << ".csv and "
              << args.out_prefix << ".json\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// changepoint

struct ChangepointArgs {
  SequenceInput input;
  double alpha = 0.05;
  std::string mode = "evalue";
  std::string format = "text";
};

int run_changepoint(const ChangepointArgs& args) {
  if (!(args.alpha > 0.0 && args.alpha <= 1.0)) {
    std::cerr << "error: --alpha must lie in (0,1]\n";
    return kExitUsage;
  }
  const exeval::BinarySequence z = load_sequence(args.input);

  if (args.mode == "evalue") {
    const double l10 = exeval::cp_evalue(z).log10();
    if (args.format == "json") {
      nlohmann::json j =
          metadata_json("changepoint", std::nullopt, std::nullopt);
      j["n"] = z.horizon();
      j["mode"] = "evalue";
      j["log10"] = l10;
      if (std::abs(l10) <= 300.0) j["linear"] = std::pow(10.0, l10);
      std::cout << j.dump(2) << "\n";
    } else {
      print_metadata("changepoint", std::nullopt, std::nullopt);
      std::cout << "cp_evalue log10=" << fmt(l10, 12);
      if (std::abs(l10) <= 300.0) {
        std::cout << " linear=" << fmt(std::pow(10.0, l10), 12);
      }
      std::cout << "\n";
    }
    return kExitOk;
  }

  const exeval::ConfidenceRegion region =
      exeval::cp_confidence_region(z, args.alpha);
  if (args.format == "json") {
    nlohmann::json j = metadata_json("changepoint", std::nullopt, std::nullopt);
    j["n"] = z.horizon();
    j["mode"] = "region";
    j["alpha"] = region.alpha;
    j["members"] = region.members;
    nlohmann::json per = nlohmann::json::array();
    for (std::size_t i = 0; i < region.log10_evalues.size(); ++i) {
      per.push_back({{"tau", i + 1}, {"log10", region.log10_evalues[i]}});
    }
    j["evalues"] = per;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  print_metadata("changepoint", std::nullopt, std::nullopt);
  std::cout << "# alpha: " << fmt(region.alpha) << "\n";
  std::cout << "tau\tlog10_evalue\tmember\n";
  std::size_t next_member = 0;
  for (std::size_t i = 0; i < region.log10_evalues.size(); ++i) {
    const long long tau = static_cast<long long>(i) + 1;
    const bool member = next_member < region.members.size() &&
                        region.members[next_member] == tau;
    if (member) ++next_member;
    std::cout << tau << '\t' << fmt(region.log10_evalues[i], 10) << '\t'
              << (member ? "yes" : "no") << "\n";
  }
  std::cout << "# region:";
  for (long long tau : region.members) std::cout << ' ' << tau;
  if (region.members.empty()) std::cout << " (empty)";
  std::cout << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  int max_n = 10;
  bool inject_fault = false;  // internal negative control
};

struct CheckOutcome {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

int run_oracle(const OracleArgs& args) {
  if (args.max_n > 16 || args.max_n < 2) {
    std::cerr << "error: --max-n must lie in [2, 16]\n";
    return kExitUsage;
  }
  print_metadata("oracle", std::nullopt, std::nullopt);
  std::vector<CheckOutcome> outcomes;
  const auto record = [&](const std::string& name, double worst, double tol) {
    CheckOutcome c;
    c.name = name;
    c.worst = worst;
    c.tolerance = tol;
    c.pass = worst <= tol;
    outcomes.push_back(c);
  };

  const double fault = args.inject_fault ? 1e-6 : 0.0;

  {
    double worst = fault;
    for (int n = 2; n <= args.max_n; ++n) {
      const auto table = exeval::oracle::brute_umm_table(n);
      for (std::uint64_t code = 0; code < table.size(); ++code) {
        const auto z = exeval::BinarySequence::from_code(n, code);
        const double expected =
            exeval::oracle::detail::rational_to_logvalue(table[code]).log();
        worst = std::max(worst, std::abs(exeval::umm(z).log() - expected));
      }
    }
    record("umm matches exact enumeration (log units)", worst, 1e-9);
  }

  {
    double worst = fault;
    const auto by_ones = [](const exeval::BinarySequence& z) {
      return exeval::exch_type(z).n1;
    };
    for (int n = 2; n <= args.max_n; ++n) {
      const auto umm_report = exeval::oracle::verify_evariable(
          [](const exeval::BinarySequence& z) { return exeval::umm(z); },
          by_ones, n);
      worst = std::max(worst, std::abs(umm_report.max_mean - 1.0));
      const auto elb_report = exeval::oracle::verify_evariable(
          [](const exeval::BinarySequence& z) { return exeval::elb(z); },
          by_ones, n);
      worst = std::max(worst, std::max(0.0, elb_report.max_mean - 1.0));
    }
    record("class means: umm = 1, elb <= 1", worst, 1e-9);
  }

  {
    double worst = fault;
    const int cap = std::min(args.max_n, 14);
    for (int n = 2; n <= cap; ++n) {
      std::map<exeval::MarkovType, long long> census;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        ++census[exeval::markov_type(exeval::BinarySequence::from_code(n, code))];
      }
      for (const auto& [t, expected] : census) {
        const auto closed = exeval::binary_type_count(t);
        const auto best = exeval::eulerian_path_count(
            exeval::MarkovGraph::from_markov_type(t));
        if (closed != expected || best != expected) worst = 1.0;
      }
    }
    record("binary type counts: closed form = BEST = enumeration", worst, 0.0);
  }

  {
    double worst = fault;
    const int cap = std::min(args.max_n, 9);
    for (int m = 1; m <= 3; ++m) {
      for (int len = 2; len <= cap; ++len) {
        const auto census = exeval::oracle::string_type_census(m, len);
        for (const auto& [t, expected] : census) {
          exeval::MarkovGraph g;
          g.alphabet_size = m;
          g.counts = t.counts;
          g.source = t.first;
          g.sink = t.last;
          if (exeval::eulerian_path_count(g) != expected) worst = 1.0;
          if (exeval::spanning_out_trees(g) !=
              exeval::oracle::brute_spanning_out_trees(g)) {
            worst = 1.0;
          }
        }
      }
    }
    record("general-alphabet Eulerian counts (m <= 3)", worst, 0.0);
  }

  {
    double worst = fault;
    for (int n = 2; n <= args.max_n; ++n) {
      const auto table = exeval::oracle::umm_rational_table(n);
      std::vector<exeval::oracle::Rational> push(
          static_cast<std::size_t>(n) + 1);
      for (std::uint64_t code = 0; code < table.size(); ++code) {
        int ones = 0;
        for (int i = 0; i < n; ++i) ones += static_cast<int>((code >> i) & 1u);
        push[static_cast<std::size_t>(ones)] += table[code];
      }
      for (long long n1 = 0; n1 <= n; ++n1) {
        const double expected =
            push[static_cast<std::size_t>(n1)].convert_to<double>();
        const double got = exeval::umm_summary_mass(n - n1, n1).linear();
        worst = std::max(worst, std::abs(got - expected) / expected);
      }
    }
    record("summary masses match enumerated pushforward (relative)", worst,
           1e-10);
  }

  {
    double worst = fault;
    const int cap = std::min(args.max_n, 12);
    for (int n = 2; n <= cap; ++n) {
      const auto q = exeval::oracle::enumerate_cp(n);
      worst = std::max(worst, std::abs(q.total().log()));
      for (std::uint64_t code = 0; code < q.mass.size(); ++code) {
        const auto z = exeval::BinarySequence::from_code(n, code);
        worst = std::max(worst, std::abs(exeval::cp_mixture_logprob(z).log() -
                                         q.mass[code].log()));
      }
      const auto report = exeval::oracle::verify_evariable(
          [](const exeval::BinarySequence& z) { return exeval::cp_evalue(z); },
          [](const exeval::BinarySequence& z) {
            return exeval::exch_type(z).n1;
          },
          n);
      worst = std::max(worst, std::abs(report.max_mean - 1.0));
    }
    record("changepoint mixture: normalization, agreement, class means",
           worst, 1e-9);
  }

  bool all_pass = true;
  for (const auto& c : outcomes) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
              << "  worst=" << fmt(c.worst, 3) << " tol=" << fmt(c.tolerance, 3)
              << "\n";
    all_pass = all_pass && c.pass;
  }
  std::cout << (all_pass ? "# all checks passed\n" : "# CHECKS FAILED\n");
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"e-values for testing exchangeability of binary sequences"};
  app.set_version_flag("--version", std::string("exeval ") + exeval::kVersion);
  app.require_subcommand(1);

  EvalueArgs evalue_args;
  auto* evalue_cmd =
      app.add_subcommand("evalue", "Compute e-values for one sequence");
  add_sequence_options(evalue_cmd, evalue_args.input);
  evalue_cmd->add_option("--stats", evalue_args.stats,
                         "Statistics to report (umm, elb, lb, ub)")
      ->delimiter(',');
  evalue_cmd->add_option("--ub-pi0", evalue_args.ub_pi0,
                         "Stationary probability of 0 for UB");
  evalue_cmd->add_option("--ub-pi1", evalue_args.ub_pi1,
                         "Stationary probability of 1 for UB");
  evalue_cmd->add_option("--format", evalue_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  SimulateArgs simulate_args;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Generate sequences from a model");
  add_generator_options(simulate_cmd, simulate_args.gen);
  simulate_cmd->add_option("--k", simulate_args.k, "Number of sequences");

  ExperimentArgs experiment_args;
  auto* experiment_cmd = app.add_subcommand(
      "experiment", "Monte Carlo comparison of the four statistics");
  add_generator_options(experiment_cmd, experiment_args.gen);
  experiment_cmd->add_option("--k", experiment_args.k, "Replications");
  experiment_cmd
      ->add_option("--stats", experiment_args.stats,
                   "Statistics to record (default: elb,lb,umm; plus ub when "
                   "derivable)")
      ->delimiter(',');
  experiment_cmd->add_option("--ub-pi0", experiment_args.ub_pi0,
                             "Stationary probability of 0 for UB");
  experiment_cmd->add_option("--ub-pi1", experiment_args.ub_pi1,
                             "Stationary probability of 1 for UB");
  experiment_cmd->add_option("--out", experiment_args.out_prefix,
                             "Write <prefix>.csv and <prefix>.json");
  experiment_cmd->add_option("--format", experiment_args.format,
                             "Stdout format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  experiment_cmd->add_option(
      "--threads", experiment_args.threads,
      "Worker threads (default: EXEVAL_THREADS or 1); results do not depend "
      "on this");

  ChangepointArgs changepoint_args;
  auto* changepoint_cmd = app.add_subcommand(
      "changepoint", "Changepoint e-values and confidence regions");
  add_sequence_options(changepoint_cmd, changepoint_args.input);
  changepoint_cmd->add_option("--alpha", changepoint_args.alpha,
                              "Significance level in (0,1]");
  changepoint_cmd
      ->add_option("--mode", changepoint_args.mode, "evalue or region")
      ->check(CLI::IsMember({"evalue", "region"}));
  changepoint_cmd
      ->add_option("--format", changepoint_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Validate the closed forms against brute-force enumeration");
  oracle_cmd->add_option("--max-n", oracle_args.max_n,
                         "Largest horizon to enumerate (2..16)");
  oracle_cmd
      ->add_flag("--inject-fault", oracle_args.inject_fault,
                 "Internal negative control: perturb the checks so they fail")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*evalue_cmd) return run_evalue(evalue_args);
    if (*simulate_cmd) return run_simulate(simulate_args);
    if (*experiment_cmd) return run_experiment_cmd(experiment_args);
    if (*changepoint_cmd) return run_changepoint(changepoint_args);
    if (*oracle_cmd) return run_oracle(oracle_args);
  } catch (const exeval::SymbolError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const exeval::LengthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const exeval::ReducibleChainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
