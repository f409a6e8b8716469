#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spast/ids.hpp"
#include "spast/instance.hpp"

namespace spast {

// Partial student -> project assignment. Capacity checks live in
// check_valid(); this type only enforces one project per student.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t num_students) : assignment_(num_students) {}

  void assign(StudentId s, ProjectId p) { assignment_.at(s.index()) = p; }
  void unassign(StudentId s) { assignment_.at(s.index()).reset(); }
  std::optional<ProjectId> project_of(StudentId s) const { return assignment_.at(s.index()); }
  bool assigned(StudentId s) const { return assignment_.at(s.index()).has_value(); }

  std::size_t num_students() const { return assignment_.size(); }
  std::size_t size() const;

  // Sorted by student index.
  std::vector<std::pair<StudentId, ProjectId>> pairs() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<std::optional<ProjectId>> assignment_;
};

// One "s<i> p<j>" pair per line; '#' starts a comment.
Matching parse_matching(std::string_view text, const Instance& inst);
// {"matching": [{"student": "s1", "project": "p1"}, ...]}
Matching parse_matching_json(const nlohmann::json& doc, const Instance& inst);
// Auto-detects JSON by a leading '{'.
Matching read_matching(std::string_view content, const Instance& inst);

std::string to_text(const Matching& m);
nlohmann::json to_json(const Matching& m);

}  // namespace spast
