#pragma once

#include <cstddef>

namespace hmetric {

/// Enumeration bounds shared by the exhaustive procedures. The CLI
/// overrides these from its global flags.
struct Limits {
  std::size_t max_points = 64;
  std::size_t max_product_points = 4096;
  std::size_t max_word_len = 32;
  std::size_t max_enum = 1'000'000;
  std::size_t max_dfa_states = 1U << 16;
};

Limits& limits();

}  // namespace hmetric
