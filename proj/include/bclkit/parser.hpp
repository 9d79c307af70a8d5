#pragma once

#include "bclkit/formula.hpp"

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bclkit
{

// Thrown on malformed formula text. `offset` is a byte offset into the input.
class ParseError : public std::runtime_error
{
public:
    ParseError( std::size_t offset, std::set<std::string> expected, const std::string& found );

    [[nodiscard]] std::size_t offset() const { return _offset; }
    [[nodiscard]] const std::set<std::string>& expected() const { return _expected; }

private:
    std::size_t _offset;
    std::set<std::string> _expected;
};

// Grammar, loosest to tightest:
//   equiv   := material ( "<=>" material )*        left-assoc sugar
//   material:= arrow ( "=>" material )?             right-assoc sugar
//   arrow   := disj ( "->" arrow )?                 relating arrow, right-assoc
//   disj    := conj ( "|" conj )*
//   conj    := unary ( "&" unary )*
//   unary   := ( "~" | "[]" | "<>" ) unary | atom
//   atom    := identifier | "(" equiv ")"
// Identifiers are [a-z][a-z0-9_]*. The Unicode symbols ¬ ∧ ∨ → □ ◇ ◊ ⊃ ≡
// are accepted as aliases.
Formula parse( std::string_view text );

// Same as Formula::text(); never re-sugars.
inline std::string print( const Formula& f ) { return f.text(); }

} // namespace bclkit
