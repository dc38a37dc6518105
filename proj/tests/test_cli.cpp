// Integration tests for the command-line tool: spawns the real binary and
// checks outputs and the exit-code contract (0 ok, 1 validation failure,
// 2 input error, 3 usage error).

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int g_failures = 0;
std::string g_cli;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_command(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) {
    r.output.append(buf, got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run(const std::string& args) { return run_command(g_cli + " " + args); }

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

void expect_contains(const RunResult& r, const std::string& needle,
                     const std::string& what) {
  expect(r.output.find(needle) != std::string::npos,
         what + " (missing '" + needle + "' in output:\n" + r.output + ")");
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-exeval>\n";
    return 2;
  }
  g_cli = argv[1];

  {
    const auto r = run("evalue --seq 010 --format json");
    expect(r.exit_code == 0, "evalue exits 0");
    const auto j = nlohmann::json::parse(r.output);
    expect(std::abs(j["statistics"]["umm"]["linear"].get<double>() - 1.125) <
               1e-9,
           "umm(010) = 1.125");
    expect(std::abs(j["statistics"]["elb"]["linear"].get<double>() - 0.375) <
               1e-9,
           "elb(010) = 0.375");
    expect(j["exch"]["n1"].get<int>() == 1, "n1 of 010");
  }

  {
    const auto r = run("evalue --seq 01");
    expect(r.exit_code == 0, "evalue 01 exits 0");
    expect_contains(r, "umm log10=0", "umm(01) = 1");
    expect_contains(r, "# exeval", "metadata header present");
  }

  {
    const auto r = run("evalue --seq 012");
    expect(r.exit_code == 2, "bad symbol exits 2, got " +
                                 std::to_string(r.exit_code));
    expect_contains(r, "index 2", "error names the offending index");
  }

  {
    const auto r = run("evalue --seq 010 --stats ub");
    expect(r.exit_code == 3, "ub without stationary pair exits 3");
  }

  {
    const auto r = run("evalue --seq 010 --stats ub --ub-pi0 0.5 --ub-pi1 0.5 "
                       "--format json");
    expect(r.exit_code == 0, "ub with stationary pair exits 0");
    const auto j = nlohmann::json::parse(r.output);
    expect(std::abs(j["statistics"]["ub"]["linear"].get<double>() - 1.0) <
               1e-9,
           "ub(010, 1/2) = 1");
  }

  {
    const auto r = run("evalue --nonsense");
    expect(r.exit_code == 3, "unknown flag exits 3");
  }

  {
    const auto r = run_command("echo '01 10' | " + g_cli + " evalue");
    expect(r.exit_code == 0, "stdin input exits 0");
    expect_contains(r, "N=4", "stdin sequence parsed with whitespace");
  }

  {
    const std::string text_path = "/tmp/exeval_cli_seq.txt";
    std::ofstream(text_path) << "010\n";
    const auto r = run("evalue --file " + text_path);
    expect(r.exit_code == 0, "text file input exits 0");

    const std::string raw_path = "/tmp/exeval_cli_seq.bin";
    {
      std::ofstream raw(raw_path, std::ios::binary);
      const char bytes[4] = {0, 1, 1, 0};
      raw.write(bytes, 4);
    }
    const auto rr = run("evalue --raw-file " + raw_path + " --format json");
    expect(rr.exit_code == 0, "raw file input exits 0");
    const auto j = nlohmann::json::parse(rr.output);
    expect(j["n"].get<int>() == 4, "raw file horizon");

    {
      std::ofstream raw(raw_path, std::ios::binary);
      const char bytes[3] = {0, 7, 1};
      raw.write(bytes, 3);
    }
    const auto bad = run("evalue --raw-file " + raw_path);
    expect(bad.exit_code == 2, "bad raw byte exits 2");
    expect_contains(bad, "offset 1", "raw error names the offset");
  }

  {
    const auto r = run("simulate --gen markov --pi01 1 --pi10 1 --n 8 --k 2 "
                       "--seed 5");
    expect(r.exit_code == 0, "simulate exits 0");
    expect_contains(r, "# seed: 5", "simulate metadata seed");
    expect(r.output.find("0101") != std::string::npos ||
               r.output.find("1010") != std::string::npos,
           "alternating chain output");
  }

  {
    const std::string prefix = "/tmp/exeval_cli_test";
    std::remove((prefix + ".csv").c_str());
    std::remove((prefix + ".json").c_str());
    const auto r1 = run("experiment --gen umm --n 100 --k 50 --seed 7 --out " +
                        prefix);
    expect(r1.exit_code == 0, "experiment exits 0");
    const std::string csv_a = slurp(prefix + ".csv");
    expect(csv_a.find("replication_index,n1,log10_elb,log10_lb,log10_ub,"
                      "log10_umm") != std::string::npos,
           "csv header present");
    expect(csv_a.find("# rng: splitmix64") != std::string::npos,
           "csv names the generator algorithm");
    const auto j = nlohmann::json::parse(slurp(prefix + ".json"));
    expect(j["seed"].get<int>() == 7, "json seed");
    expect(j["per_statistic"].contains("umm"), "json per-statistic block");

    // Same seed, same files.
    const auto r2 = run("experiment --gen umm --n 100 --k 50 --seed 7 --out " +
                        prefix);
    expect(r2.exit_code == 0, "experiment rerun exits 0");
    expect(slurp(prefix + ".csv") == csv_a, "rerun produces identical csv");

    // Different thread count, same bytes.
    const auto r4 = run(
        "experiment --gen umm --n 100 --k 50 --seed 7 --threads 4 --out " +
        prefix);
    expect(r4.exit_code == 0, "threaded experiment exits 0");
    expect(slurp(prefix + ".csv") == csv_a,
           "thread count does not change the csv");

    // Thread count from the environment behaves the same.
    const auto renv = run_command(
        "EXEVAL_THREADS=3 " + g_cli +
        " experiment --gen umm --n 100 --k 50 --seed 7 --out " + prefix);
    expect(renv.exit_code == 0, "EXEVAL_THREADS experiment exits 0");
    expect(slurp(prefix + ".csv") == csv_a,
           "EXEVAL_THREADS does not change the csv");
  }

  {
    const auto r = run("experiment --gen umm --n 100 --k 10 --stats ub");
    expect(r.exit_code == 3,
           "ub under the mixture without a stationary pair exits 3");
  }

  {
    const auto r = run("changepoint --seq 01 --mode evalue");
    expect(r.exit_code == 0, "changepoint evalue exits 0");
    expect_contains(r, "log10=0", "cp_evalue(01) = 1");
  }

  {
    const auto r =
        run("changepoint --seq 000000111111 --mode region --alpha 1 "
            "--format json");
    expect(r.exit_code == 0, "region exits 0");
    const auto j = nlohmann::json::parse(r.output);
    expect(j["mode"] == "region", "region mode echoed");
    for (const auto& tau : j["members"]) {
      const auto& per = j["evalues"][tau.get<int>() - 1];
      expect(per["log10"].get<double>() <= 0.0 + 1e-12,
             "members have e-value <= 1 at alpha = 1");
    }
  }

  {
    const auto r = run("changepoint --seq 0101 --alpha 1.5");
    expect(r.exit_code == 3, "alpha out of range exits 3");
  }

  {
    const auto r = run("oracle --max-n 8");
    expect(r.exit_code == 0, "oracle suite passes");
    expect_contains(r, "all checks passed", "oracle summary line");
  }

  {
    const auto r = run("oracle --max-n 17");
    expect(r.exit_code == 3, "oracle horizon cap exits 3");
  }

  {
    const auto r = run("oracle --max-n 5 --inject-fault");
    expect(r.exit_code == 1, "injected fault exits 1");
    expect_contains(r, "FAIL", "injected fault is reported");
  }

  if (g_failures == 0) {
    std::cout << "cli: all checks passed\n";
    return 0;
  }
  std::cerr << "cli: " << g_failures << " checks failed\n";
  return 1;
}
