#include "spast/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace spast {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <class T>
TiedList<T> group_ties(const std::vector<T>& order, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution join(p);
  TiedList<T> out;
  for (const T& x : order) {
    if (!out.empty() && join(rng)) {
      out.back().push_back(x);
    } else {
      out.push_back({x});
    }
  }
  return out;
}

}  // namespace

Instance generate(const GenParams& g) {
  if (g.n3 > g.n2) throw GenError("n3 must not exceed n2: every lecturer needs a project");
  if (g.n3 == 0 && g.n2 > 0) throw GenError("projects need at least one lecturer");
  if (g.pref_len_min > g.pref_len_max) throw GenError("pref_len_min exceeds pref_len_max");
  if (g.pref_len_min > g.n2) throw GenError("pref_len_min exceeds the number of projects");
  if (!(g.tie_probability >= 0.0 && g.tie_probability <= 1.0)) throw GenError("tie_probability must be in [0, 1]");
  if (g.capacity_min < 1 || g.capacity_min > g.capacity_max) throw GenError("invalid capacity range");

  std::mt19937_64 rng(g.seed);
  Instance inst;

  // Ownership: one guaranteed project per lecturer, the rest at random.
  std::vector<std::size_t> proj(g.n2);
  std::iota(proj.begin(), proj.end(), 0);
  std::shuffle(proj.begin(), proj.end(), rng);
  inst.project_owner.assign(g.n2, LecturerId{});
  for (std::size_t t = 0; t < g.n2; ++t) {
    const std::size_t k = t < g.n3 ? t : uniform(rng, 0, g.n3 - 1);
    inst.project_owner[proj[t]] = LecturerId{k};
  }
  inst.project_capacity.resize(g.n2);
  for (auto& c : inst.project_capacity) {
    c = static_cast<int>(uniform(rng, static_cast<std::size_t>(g.capacity_min), static_cast<std::size_t>(g.capacity_max)));
  }

  inst.student_prefs.resize(g.n1);
  std::vector<ProjectId> all(g.n2);
  for (std::size_t j = 0; j < g.n2; ++j) all[j] = ProjectId{j};
  for (auto& list : inst.student_prefs) {
    const std::size_t len = uniform(rng, g.pref_len_min, std::min(g.pref_len_max, g.n2));
    std::vector<ProjectId> pick = all;
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(len);
    list = group_ties(pick, g.tie_probability, rng);
  }

  inst.lecturer_prefs.resize(g.n3);
  inst.lecturer_capacity.resize(g.n3);
  for (std::size_t k = 0; k < g.n3; ++k) {
    const LecturerId l{k};
    std::vector<StudentId> members;
    for (std::size_t i = 0; i < g.n1; ++i) {
      bool ranks_one = false;
      for (const auto& tie : inst.student_prefs[i]) {
        for (ProjectId p : tie) ranks_one |= inst.owner(p) == l;
      }
      if (ranks_one) members.emplace_back(i);
    }
    std::shuffle(members.begin(), members.end(), rng);
    inst.lecturer_prefs[k] = group_ties(members, g.tie_probability, rng);

    int max_c = 0, sum_c = 0;
    for (std::size_t j = 0; j < g.n2; ++j) {
      if (inst.project_owner[j] != l) continue;
      max_c = std::max(max_c, inst.project_capacity[j]);
      sum_c += inst.project_capacity[j];
    }
    inst.lecturer_capacity[k] =
        static_cast<int>(uniform(rng, static_cast<std::size_t>(max_c), static_cast<std::size_t>(sum_c)));
  }
  return inst;
}

}  // namespace spast
