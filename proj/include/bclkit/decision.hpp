#pragma once

#include "bclkit/closure.hpp"
#include "bclkit/cnf.hpp"
#include "bclkit/conditions.hpp"
#include "bclkit/model.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bclkit
{

struct SearchConfig
{
    std::size_t max_worlds = 2;
    bool pad = true;                                   // gcun negation padding
    std::optional<std::vector<std::string>> variables; // defaults to the query's
    std::vector<Formula> extra_carrier;
    unsigned jobs = 1;
    bool deterministic = true;     // enumeration-least countermodel under --jobs
    unsigned budget_bits = 32;     // log2 cap on the enumerated space
};

// Reads BCLKIT_BUDGET (log2 of the enumeration budget) when set.
unsigned default_budget_bits();

enum class VerdictKind
{
    valid,
    countermodel,
    bounded_valid,
};

struct Verdict
{
    VerdictKind kind = VerdictKind::valid;
    std::optional<RelatingModel> model;   // countermodel only
    std::optional<WorldId> world;         // refuting world
    std::size_t searched_worlds = 0;
    std::optional<std::size_t> required_worlds;   // known world bound for the query
    std::string reason;
};

// Carrier the search works over: the query's subformulas and any extra
// formulas, padded with negations for gcun and extended with demodalized
// images when a demodalization condition is present.
ClosureSet search_carrier( const Formula& f, const ConditionSet& conds, const SearchConfig& cfg );

// Number of worlds after which no new countermodel can appear, when known.
std::optional<std::size_t> world_bound( const Formula& f, const ConditionSet& conds, std::string* why = nullptr );

Verdict decide( const Formula& f, const ConditionSet& conds, const SearchConfig& cfg = {} );

// Relations over the carrier passing every single-world condition.
Count count_admissible( const ClosureSet& carrier, const ConditionSet& conds, unsigned budget_bits = 32 );

std::string verdict_name( VerdictKind k );
nlohmann::json verdict_to_json( const Verdict& v, const Formula& f, const ConditionSet& conds,
                                const std::string& logic = {} );

} // namespace bclkit
