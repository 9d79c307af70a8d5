#pragma once

#include "bclkit/closure.hpp"
#include "bclkit/conditions.hpp"
#include "bclkit/model.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace bclkit
{

// Random formula of depth at most `depth` over `vars`.
Formula random_formula( std::mt19937_64& rng, const std::vector<std::string>& vars, unsigned depth,
                        bool modal = true );

// Random access relation over `worlds`, closed until it has every property.
std::set<WorldPair> random_access( std::mt19937_64& rng, const std::vector<WorldId>& worlds,
                                   const std::set<Frame>& frames );

// Random model with `worlds` worlds whose relations lie in carrier^2 and
// which is admissible for `conds`; nothing when the conditions admit no
// relation over this frame.
std::optional<RelatingModel> random_model( std::mt19937_64& rng, const ClosureSet& carrier,
                                           const ConditionSet& conds, const std::vector<std::string>& vars,
                                           std::size_t worlds );

} // namespace bclkit
