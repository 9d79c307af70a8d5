#pragma once

#include "bclkit/formula.hpp"

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

namespace bclkit
{

// Finite subformula-closed set of formulas, kept in canonical order
// (node count, then printed text). Positions are stable for a given set.
class ClosureSet
{
public:
    ClosureSet() = default;

    [[nodiscard]] const std::vector<Formula>& members() const { return _members; }
    [[nodiscard]] std::size_t size() const { return _members.size(); }
    [[nodiscard]] bool empty() const { return _members.empty(); }
    [[nodiscard]] const Formula& operator[]( std::size_t i ) const { return _members[ i ]; }
    [[nodiscard]] bool contains( const Formula& f ) const { return _index.contains( f ); }
    [[nodiscard]] std::optional<std::size_t> index_of( const Formula& f ) const;

    auto begin() const { return _members.begin(); }
    auto end() const { return _members.end(); }

    friend bool operator==( const ClosureSet& a, const ClosureSet& b ) { return a._members == b._members; }

private:
    friend ClosureSet subformula_closure( const std::vector<Formula>& roots );

    std::vector<Formula> _members;
    std::unordered_map<Formula, std::size_t, FormulaHash> _index;
};

ClosureSet subformula_closure( const std::vector<Formula>& roots );

ClosureSet merge( const ClosureSet& a, const ClosureSet& b );

// Closure of carrier together with the demodalized image of each member.
ClosureSet demodal_extend( const ClosureSet& carrier );

// Adds ~^j c for j <= depth, for the negation-stripped core c of every member.
ClosureSet pad_negations( const ClosureSet& carrier, std::size_t depth );

} // namespace bclkit
