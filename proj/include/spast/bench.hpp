#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spast/generator.hpp"

namespace spast {

struct BenchParams {
  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};  // target m
  int repeats = 5;
  std::size_t pref_len = 5;
  double tie_probability = 0.3;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::size_t m = 0;
  double median_seconds = 0;
  double min_seconds = 0;
  double max_seconds = 0;
  int solvable = 0;  // how many of the repeats had a strongly stable matching
  int repeats = 0;
};

// Fixed density: every student lists pref_len projects, four students per
// project, three projects per lecturer.
GenParams bench_instance_params(std::size_t m, const BenchParams& params, std::uint64_t seed);

std::vector<BenchRow> run_bench(const BenchParams& params);

// Least-squares slope of log(median time) against log(m).
double loglog_slope(const std::vector<BenchRow>& rows);

}  // namespace spast
