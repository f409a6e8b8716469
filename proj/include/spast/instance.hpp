#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spast/ids.hpp"

namespace spast {

// A preference list is a strict ranking of ties. A single entry is a tie of
// length one.
template <class T>
using TiedList = std::vector<std::vector<T>>;

struct Instance {
  std::vector<TiedList<ProjectId>> student_prefs;
  std::vector<int> project_capacity;
  std::vector<LecturerId> project_owner;
  std::vector<int> lecturer_capacity;
  std::vector<TiedList<StudentId>> lecturer_prefs;

  std::size_t num_students() const { return student_prefs.size(); }
  std::size_t num_projects() const { return project_capacity.size(); }
  std::size_t num_lecturers() const { return lecturer_capacity.size(); }

  LecturerId owner(ProjectId p) const { return project_owner[p.index()]; }
  int capacity(ProjectId p) const { return project_capacity[p.index()]; }
  int capacity(LecturerId l) const { return lecturer_capacity[l.index()]; }

  // Projects offered by l, in index order.
  std::vector<ProjectId> offered_by(LecturerId l) const;

  // m: total length of the students' preference lists.
  std::size_t total_preference_length() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Violation {
  std::string code;
  std::string location;
  std::string message;
};

// Collects every broken model invariant; an empty result means valid.
std::vector<Violation> validate(const Instance& inst);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class InstanceFormat { Text, Json };

Instance parse_instance(std::string_view text);
Instance parse_instance_json(std::string_view text);
Instance parse_instance_json(const nlohmann::json& doc);
// Picks JSON when the first non-blank character is '{', text otherwise.
Instance read_instance(std::string_view content);

std::string to_text(const Instance& inst);
nlohmann::json to_json(const Instance& inst);

// Tie index lookups and projected lecturer lists. Immutable after
// construction.
class RankTable {
 public:
  explicit RankTable(const Instance& inst);

  std::optional<int> student_rank(StudentId s, ProjectId p) const;
  std::optional<int> lecturer_rank(LecturerId l, StudentId s) const;
  // Rank of s in the list of the lecturer offering p.
  std::optional<int> lecturer_rank_for(ProjectId p, StudentId s) const;

  // L_k^j for the owner of p: L_k restricted to students who find p
  // acceptable, tie order preserved.
  const TiedList<StudentId>& projected_list(ProjectId p) const { return projected_[p.index()]; }

  const std::vector<ProjectId>& offered_by(LecturerId l) const { return offered_[l.index()]; }

 private:
  using RankRow = std::vector<std::pair<std::int32_t, int>>;  // sorted by id

  static std::optional<int> lookup(const RankRow& row, std::int32_t key);

  std::vector<RankRow> student_rank_;
  std::vector<RankRow> lecturer_rank_;
  std::vector<LecturerId> owner_;
  std::vector<TiedList<StudentId>> projected_;
  std::vector<std::vector<ProjectId>> offered_;
};

}  // namespace spast
