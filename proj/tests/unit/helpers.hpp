#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spast/instance.hpp"
#include "spast/matching.hpp"

namespace test {

inline std::string read_data(const std::string& name) {
  std::ifstream f(std::string(SPAST_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline spast::Instance load(const std::string& name) { return spast::parse_instance(read_data(name)); }

using Pairs = std::set<std::pair<std::string, std::string>>;

inline Pairs pairs_of(const spast::Matching& m) {
  Pairs out;
  for (auto [s, p] : m.pairs()) out.emplace(to_string(s), to_string(p));
  return out;
}

inline Pairs pairs_of(const std::vector<std::pair<spast::StudentId, spast::ProjectId>>& v) {
  Pairs out;
  for (auto [s, p] : v) out.emplace(to_string(s), to_string(p));
  return out;
}

template <class IdT>
std::vector<std::string> names(const std::vector<IdT>& ids) {
  std::vector<std::string> out;
  for (IdT id : ids) out.push_back(to_string(id));
  return out;
}

inline spast::StudentId S(int i) { return spast::StudentId{i - 1}; }
inline spast::ProjectId P(int j) { return spast::ProjectId{j - 1}; }
inline spast::LecturerId L(int k) { return spast::LecturerId{k - 1}; }

}  // namespace test
