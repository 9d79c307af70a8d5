#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>

namespace bclkit
{

enum class Op : std::uint8_t
{
    var,
    neg,
    conj,
    disj,
    arrow,
    box,
    diamond,
};

// Immutable formula of the connexive modal language. Nodes are shared, so
// copies are cheap. Every node caches its printed text, which is the
// canonical form: two formulas are structurally equal iff their texts are
// equal (printing is injective; see parser tests).
class Formula
{
public:
    static Formula variable( std::string name );
    static Formula negation( Formula operand );
    static Formula conjunction( Formula left, Formula right );
    static Formula disjunction( Formula left, Formula right );
    static Formula arrow( Formula left, Formula right );
    static Formula box( Formula operand );
    static Formula diamond( Formula operand );

    // Material implication and equivalence exist only as abbreviations.
    static Formula material( Formula left, Formula right );
    static Formula equivalence( Formula left, Formula right );

    [[nodiscard]] Op op() const;
    [[nodiscard]] bool is( Op op ) const { return this->op() == op; }
    [[nodiscard]] bool is_unary() const;
    [[nodiscard]] bool is_binary() const;

    [[nodiscard]] const std::string& name() const;   // var only
    [[nodiscard]] const Formula& operand() const;    // neg, box, diamond
    [[nodiscard]] const Formula& left() const;       // conj, disj, arrow
    [[nodiscard]] const Formula& right() const;

    [[nodiscard]] std::size_t size() const;          // node count
    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] const std::string& text() const;   // minimal-parenthesis print
    [[nodiscard]] unsigned modal_depth() const;

    friend bool operator==( const Formula& a, const Formula& b );

    // Canonical order: by node count, then lexicographically on the text.
    friend std::strong_ordering operator<=>( const Formula& a, const Formula& b );

private:
    struct Node;
    explicit Formula( std::shared_ptr<const Node> node ) : _node{ std::move( node ) } {}
    static Formula make( Op op, std::string name, const Formula* a, const Formula* b );

    std::shared_ptr<const Node> _node;
};

struct FormulaHash
{
    std::size_t operator()( const Formula& f ) const noexcept { return f.hash(); }
};

using FormulaPair = std::pair<Formula, Formula>;

std::string to_string( const Formula& f );
std::string to_string( const FormulaPair& p );

// Leading-negation decomposition: f == apply_negations(depth, core).
struct NegPrefix
{
    std::size_t depth;
    Formula core;
};

NegPrefix strip_negations( const Formula& f );
Formula apply_negations( std::size_t depth, Formula core );

// Erases every modal operator, acting homomorphically on the rest.
Formula demodalize( const Formula& f );

bool is_modality_free( const Formula& f );
std::set<std::string> variables( const Formula& f );

} // namespace bclkit

template <>
struct std::hash<bclkit::Formula>
{
    std::size_t operator()( const bclkit::Formula& f ) const noexcept { return f.hash(); }
};
