#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace bclkit
{

class BudgetError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Count = boost::multiprecision::cpp_int;

// Clauses over variables 0..vars-1. Literal +(v+1) asserts v, -(v+1) denies it.
struct Cnf
{
    std::size_t vars = 0;
    std::vector<std::vector<int>> clauses;

    void add( std::vector<int> clause ) { clauses.push_back( std::move( clause ) ); }
};

inline int pos( std::size_t v ) { return static_cast<int>( v ) + 1; }
inline int neg( std::size_t v ) { return -static_cast<int>( v ) - 1; }

// Backtracking search with unit propagation. Returns a total assignment
// extending `assumptions`, or nothing when none exists. With `rng` the
// branching polarity and the values of unconstrained variables are random.
// `node_budget` of 0 means unlimited; exceeding it throws BudgetError.
std::optional<std::vector<bool>> solve( const Cnf& cnf, const std::vector<int>& assumptions = {},
                                        std::mt19937_64* rng = nullptr, std::uint64_t node_budget = 0 );

// Exact number of total assignments satisfying every clause.
Count count_models( const Cnf& cnf, std::uint64_t node_budget = 0 );

} // namespace bclkit
