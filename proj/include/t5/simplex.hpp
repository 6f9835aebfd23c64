#pragma once

#include <optional>
#include <vector>

#include "t5/rat_matrix.hpp"

namespace t5 {

/// Exact phase-1 simplex with Bland's rule: finds x >= 0 with E x = f, or
/// returns nullopt when no such x exists.
std::optional<std::vector<Rational>> find_nonnegative(const RatMatrix& E, std::span<const Rational> f);

}  // namespace t5
