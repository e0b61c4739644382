// Construction of spaces from the textual descriptors used by the file
// formats and the CLI.

#pragma once

#include <memory>
#include <string>

#include "geolog/space.hpp"

namespace geolog {

/// name is one of euclidean | spd | sphere | wasserstein1d; dim is the
/// Euclidean dimension, SPD matrix order, sphere intrinsic dimension, or
/// quantile grid size respectively. Throws std::invalid_argument for
/// unknown names.
[[nodiscard]] SpacePtr make_space(const std::string& name, int dim);

}  // namespace geolog
