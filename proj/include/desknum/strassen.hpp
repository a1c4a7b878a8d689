#pragma once

#include <cstddef>

#include "desknum/ndcore.hpp"

namespace desknum {

/// Blocks at or below this size are multiplied with the triple loop.
inline constexpr std::size_t kStrassenCutoff = 32;

/// Strassen product with an explicit recursion cutoff. Operands are zero-padded
/// to the next power-of-two square and the result is cropped back.
Matrix strassen(const Matrix& a, const Matrix& b, std::size_t cutoff = kStrassenCutoff);

}  // namespace desknum
