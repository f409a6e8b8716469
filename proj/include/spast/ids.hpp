#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace spast {

// Dense 0-based index distinguished by agent kind. Files and reports use the
// 1-based spelling (s1, p1, l1).
template <class Tag>
struct Id {
  std::int32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::int32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::int32_t>(v)) {}

  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }

  friend constexpr auto operator<=>(Id, Id) = default;
};

struct StudentTag {
  static constexpr char prefix = 's';
};
struct ProjectTag {
  static constexpr char prefix = 'p';
};
struct LecturerTag {
  static constexpr char prefix = 'l';
};

using StudentId = Id<StudentTag>;
using ProjectId = Id<ProjectTag>;
using LecturerId = Id<LecturerTag>;

template <class Tag>
std::string to_string(Id<Tag> id) {
  return Tag::prefix + std::to_string(id.value + 1);
}

}  // namespace spast
