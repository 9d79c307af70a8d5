#pragma once

#include "bclkit/closure.hpp"
#include "bclkit/formula.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bclkit
{

using WorldId = std::string;
using WorldPair = std::pair<WorldId, WorldId>;
using Relation = std::set<FormulaPair>;

class ModelError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Combined frame with valuation. A BCL model is one world with no access.
// `carrier` is always subformula-closed and contains every formula that
// occurs in a relating pair.
struct RelatingModel
{
    std::vector<WorldId> worlds;                   // sorted, nonempty
    std::set<WorldPair> access;
    std::map<WorldId, std::set<std::string>> valuation;
    std::map<WorldId, Relation> relating;
    ClosureSet carrier;

    [[nodiscard]] bool has_world( const WorldId& w ) const;
    [[nodiscard]] std::vector<WorldId> successors( const WorldId& w ) const;
    [[nodiscard]] const Relation& relation( const WorldId& w ) const;
    [[nodiscard]] bool related( const WorldId& w, const Formula& a, const Formula& b ) const;
    [[nodiscard]] bool assigns( const WorldId& w, const std::string& var ) const;
};

// Sorts worlds, checks the invariants and recomputes the carrier as the
// closure of `extra_carrier` and every relating formula.
RelatingModel make_model( std::vector<WorldId> worlds, std::set<WorldPair> access,
                          std::map<WorldId, std::set<std::string>> valuation,
                          std::map<WorldId, Relation> relating, const std::vector<Formula>& extra_carrier = {} );

bool eval( const RelatingModel& model, const WorldId& world, const Formula& f );
bool holds_in_model( const RelatingModel& model, const Formula& f );

} // namespace bclkit
