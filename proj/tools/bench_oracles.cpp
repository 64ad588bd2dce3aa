// Compares the serial reference implementations of the sampled oracles and
// the brute-force invariant-system search against their OpenMP lanes, and
// checks that both lanes produce identical results.
//
//   ./frobcat_bench [--samples N] [--repeat R]

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "frobcat/category.hpp"
#include "frobcat/invariant.hpp"
#include "frobcat/mod_oracle.hpp"
#include "frobcat/parallel.hpp"
#include "frobcat/set_oracle.hpp"

using namespace frobcat;

namespace {

double seconds_of(const std::function<void()>& fn, int repeat) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeat; ++r) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count() / repeat;
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-34s %10.3f ms %10.3f ms   %5.2fx   %s\n", name, serial * 1e3, parallel * 1e3,
              parallel > 0 ? serial / parallel : 0.0, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int samples = 400;
  int repeat = 3;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--samples" && i + 1 < argc) samples = std::stoi(argv[++i]);
    if (arg == "--repeat" && i + 1 < argc) repeat = std::stoi(argv[++i]);
  }
  std::printf("openmp: %s\n", openmp_enabled() ? "enabled" : "disabled (serial build)");
  std::printf("%-34s %13s %13s %8s\n", "workload", "serial", "openmp", "speedup");

  {
    const FinCategory cat = adjoin_unit(from_group_cyclic(4));
    SetOracleOptions opt;
    opt.n_samples = samples;
    opt.seed = 11;
    opt.max_size = 5;
    SetOracleReport serial_report, parallel_report;
    const double ts = seconds_of([&] { serial_report = sample_check_set(cat, opt); }, repeat);
    opt.mode = Exec::openmp;
    const double tp = seconds_of([&] { parallel_report = sample_check_set(cat, opt); }, repeat);
    const bool same = serial_report.consistent == parallel_report.consistent &&
                      serial_report.n_canonical_bijective == parallel_report.n_canonical_bijective &&
                      serial_report.n_transforms_checked == parallel_report.n_transforms_checked &&
                      serial_report.failures == parallel_report.failures;
    row("set oracle, adjoin-unit:cyclic:4", ts, tp, same);
  }

  {
    const FinCategory cat = from_group_cyclic(6);
    ModOracleOptions opt;
    opt.n_samples = samples;
    opt.seed = 11;
    opt.max_dim = 5;
    ModOracleReport serial_report, parallel_report;
    const double ts = seconds_of([&] { serial_report = sample_check_mod(cat, 5, opt); }, repeat);
    opt.mode = Exec::openmp;
    const double tp = seconds_of([&] { parallel_report = sample_check_mod(cat, 5, opt); }, repeat);
    const bool same = serial_report.consistent == parallel_report.consistent &&
                      serial_report.n_canonical_invertible == parallel_report.n_canonical_invertible &&
                      serial_report.n_norm_inverts == parallel_report.n_norm_inverts &&
                      serial_report.failures == parallel_report.failures;
    row("mod oracle, cyclic:6 over fp:5", ts, tp, same);
  }

  {
    const FinCategory cat = from_group_cyclic(16);
    std::vector<InvariantSystem> serial_found, parallel_found;
    const double ts = seconds_of([&] { serial_found = brute_force_find_is(cat, 16, Exec::serial); }, repeat);
    const double tp = seconds_of([&] { parallel_found = brute_force_find_is(cat, 16, Exec::openmp); }, repeat);
    row("brute-force search, cyclic:16", ts, tp, serial_found == parallel_found);
  }
  return 0;
}
