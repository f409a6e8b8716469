#include "spast/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "spast/solver.hpp"

namespace spast {

GenParams bench_instance_params(std::size_t m, const BenchParams& params, std::uint64_t seed) {
  GenParams g;
  g.n1 = std::max<std::size_t>(1, m / params.pref_len);
  g.n2 = std::max(params.pref_len, g.n1 / 4);
  g.n3 = std::max<std::size_t>(1, g.n2 / 3);
  g.pref_len_min = g.pref_len_max = params.pref_len;
  g.tie_probability = params.tie_probability;
  g.capacity_min = 1;
  g.capacity_max = 3;
  g.seed = seed;
  return g;
}

std::vector<BenchRow> run_bench(const BenchParams& params) {
  std::vector<BenchRow> rows;
  for (std::size_t size : params.sizes) {
    BenchRow row;
    std::vector<double> times;
    for (int r = 0; r < params.repeats; ++r) {
      const Instance inst = generate(bench_instance_params(size, params, params.seed * 1000003 + size * 31 + r));
      row.m = inst.total_preference_length();
      const auto t0 = std::chrono::steady_clock::now();
      const SolveResult res = solve(inst);
      const auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
      row.solvable += res.solvable();
    }
    std::sort(times.begin(), times.end());
    row.repeats = params.repeats;
    if (!times.empty()) {
      const std::size_t n = times.size();
      row.median_seconds = n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
      row.min_seconds = times.front();
      row.max_seconds = times.back();
    }
    rows.push_back(row);
  }
  return rows;
}

double loglog_slope(const std::vector<BenchRow>& rows) {
  const double n = static_cast<double>(rows.size());
  if (rows.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.m));
    const double y = std::log(std::max(r.median_seconds, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace spast
