#pragma once

#include "bclkit/closure.hpp"
#include "bclkit/cnf.hpp"
#include "bclkit/conditions.hpp"

#include <map>
#include <utility>
#include <vector>

namespace bclkit
{

// Positional view of a carrier: for each member the positions of the
// formulas built from it that are also members (-1 when absent).
struct CarrierIndex
{
    explicit CarrierIndex( const ClosureSet& carrier );

    std::size_t n;
    std::vector<Op> op;
    std::vector<int> left, right;    // operand positions (unary: left)
    std::vector<int> neg, box, dia;  // position of ~X, []X, <>X
    std::vector<int> demod;          // position of d(X)
    std::vector<bool> modal_free;
    std::vector<std::size_t> negations;   // leading negation count
    std::map<std::pair<int, int>, int> arrow, conj;

    [[nodiscard]] int find_arrow( int a, int b ) const;
    [[nodiscard]] int find_conj( int a, int b ) const;
    [[nodiscard]] int negate( int i, std::size_t times ) const;

    [[nodiscard]] std::size_t var( std::size_t i, std::size_t j ) const { return i * n + j; }
};

// Clauses whose models are exactly the admissible relations over the carrier
// (variable i*n+j stands for the pair (carrier[i], carrier[j])). Cross-world
// conditions are ignored.
Cnf encode( const CarrierIndex& index, const ConditionSet& conds );

// Joint clauses for a frame of `successors.size()` worlds; world w owns the
// variables w*n*n .. (w+1)*n*n-1. Adds k2 and k2_d across worlds.
Cnf encode_frame( const CarrierIndex& index, const ConditionSet& conds,
                  const std::vector<std::vector<std::size_t>>& successors );

} // namespace bclkit
