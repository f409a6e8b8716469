#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "spast/instance.hpp"

namespace spast {

struct GenParams {
  std::size_t n1 = 6;
  std::size_t n2 = 5;
  std::size_t n3 = 3;
  std::size_t pref_len_min = 1;
  std::size_t pref_len_max = 3;
  // Chance that a list item joins the tie of the item before it. Applies to
  // student and lecturer lists alike.
  double tie_probability = 0.0;
  int capacity_min = 1;
  int capacity_max = 2;
  std::uint64_t seed = 0;
};

class GenError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Deterministic in (params, seed); the result always passes validate().
Instance generate(const GenParams& params);

}  // namespace spast
