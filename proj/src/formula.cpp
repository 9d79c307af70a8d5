#include "bclkit/formula.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>

namespace bclkit
{

struct Formula::Node
{
    Op op;
    std::string name;
    std::optional<Formula> first;
    std::optional<Formula> second;
    std::size_t size;
    std::size_t hash;
    unsigned modal_depth;
    std::string text;
};

namespace
{

// Binding strength used by the printer: prefix operators bind tightest,
// then &, |, and the relating arrow.
int precedence( Op op )
{
    switch ( op )
    {
    case Op::conj: return 3;
    case Op::disj: return 2;
    case Op::arrow: return 1;
    default: return 4;
    }
}

std::string wrap( const Formula& f, bool parens )
{
    return parens ? "(" + f.text() + ")" : f.text();
}

std::string render( Op op, const std::string& name, const Formula* a, const Formula* b )
{
    switch ( op )
    {
    case Op::var: return name;
    case Op::neg: return "~" + wrap( *a, precedence( a->op() ) < 4 );
    case Op::box: return "[]" + wrap( *a, precedence( a->op() ) < 4 );
    case Op::diamond: return "<>" + wrap( *a, precedence( a->op() ) < 4 );
    case Op::conj:
        return wrap( *a, precedence( a->op() ) < 3 ) + " & " + wrap( *b, precedence( b->op() ) <= 3 );
    case Op::disj:
        return wrap( *a, precedence( a->op() ) < 2 ) + " | " + wrap( *b, precedence( b->op() ) <= 2 );
    case Op::arrow:
        // right-associative
        return wrap( *a, precedence( a->op() ) <= 1 ) + " -> " + wrap( *b, precedence( b->op() ) < 1 );
    }
    return {};
}

} // namespace

Formula Formula::make( Op op, std::string name, const Formula* a, const Formula* b )
{
    auto node = std::make_shared<Node>();
    node->op = op;
    node->size = 1 + ( a ? a->size() : 0 ) + ( b ? b->size() : 0 );
    unsigned depth = std::max( a ? a->modal_depth() : 0u, b ? b->modal_depth() : 0u );
    node->modal_depth = ( op == Op::box || op == Op::diamond ) ? depth + 1 : depth;
    node->text = render( op, name, a, b );
    node->hash = std::hash<std::string>{}( node->text );
    node->name = std::move( name );
    if ( a )
        node->first = *a;
    if ( b )
        node->second = *b;
    return Formula{ std::move( node ) };
}

Formula Formula::variable( std::string name )
{
    if ( name.empty() )
        throw std::invalid_argument( "empty variable name" );
    return make( Op::var, std::move( name ), nullptr, nullptr );
}

Formula Formula::negation( Formula operand ) { return make( Op::neg, {}, &operand, nullptr ); }
Formula Formula::box( Formula operand ) { return make( Op::box, {}, &operand, nullptr ); }
Formula Formula::diamond( Formula operand ) { return make( Op::diamond, {}, &operand, nullptr ); }

Formula Formula::conjunction( Formula left, Formula right )
{
    return make( Op::conj, {}, &left, &right );
}

Formula Formula::disjunction( Formula left, Formula right )
{
    return make( Op::disj, {}, &left, &right );
}

Formula Formula::arrow( Formula left, Formula right )
{
    return make( Op::arrow, {}, &left, &right );
}

Formula Formula::material( Formula left, Formula right )
{
    return disjunction( negation( std::move( left ) ), std::move( right ) );
}

Formula Formula::equivalence( Formula left, Formula right )
{
    return conjunction( material( left, right ), material( right, left ) );
}

Op Formula::op() const { return _node->op; }

bool Formula::is_unary() const
{
    return _node->op == Op::neg || _node->op == Op::box || _node->op == Op::diamond;
}

bool Formula::is_binary() const
{
    return _node->op == Op::conj || _node->op == Op::disj || _node->op == Op::arrow;
}

const std::string& Formula::name() const
{
    assert( _node->op == Op::var );
    return _node->name;
}

const Formula& Formula::operand() const
{
    assert( is_unary() );
    return *_node->first;
}

const Formula& Formula::left() const
{
    assert( is_binary() );
    return *_node->first;
}

const Formula& Formula::right() const
{
    assert( is_binary() );
    return *_node->second;
}

std::size_t Formula::size() const { return _node->size; }
std::size_t Formula::hash() const { return _node->hash; }
const std::string& Formula::text() const { return _node->text; }
unsigned Formula::modal_depth() const { return _node->modal_depth; }

bool operator==( const Formula& a, const Formula& b )
{
    if ( a._node == b._node )
        return true;
    return a._node->hash == b._node->hash && a._node->text == b._node->text;
}

std::strong_ordering operator<=>( const Formula& a, const Formula& b )
{
    if ( a._node == b._node )
        return std::strong_ordering::equal;
    if ( auto c = a._node->size <=> b._node->size; c != 0 )
        return c;
    return a._node->text.compare( b._node->text ) <=> 0;
}

std::string to_string( const Formula& f ) { return f.text(); }

std::string to_string( const FormulaPair& p )
{
    return "(" + p.first.text() + ", " + p.second.text() + ")";
}

NegPrefix strip_negations( const Formula& f )
{
    std::size_t depth = 0;
    const Formula* core = &f;
    while ( core->is( Op::neg ) )
    {
        core = &core->operand();
        ++depth;
    }
    return { depth, *core };
}

Formula apply_negations( std::size_t depth, Formula core )
{
    for ( std::size_t i = 0; i < depth; ++i )
        core = Formula::negation( std::move( core ) );
    return core;
}

Formula demodalize( const Formula& f )
{
    if ( f.modal_depth() == 0 )
        return f;
    switch ( f.op() )
    {
    case Op::var: return f;
    case Op::neg: return Formula::negation( demodalize( f.operand() ) );
    case Op::box:
    case Op::diamond: return demodalize( f.operand() );
    case Op::conj: return Formula::conjunction( demodalize( f.left() ), demodalize( f.right() ) );
    case Op::disj: return Formula::disjunction( demodalize( f.left() ), demodalize( f.right() ) );
    case Op::arrow: return Formula::arrow( demodalize( f.left() ), demodalize( f.right() ) );
    }
    return f;
}

bool is_modality_free( const Formula& f ) { return f.modal_depth() == 0; }

namespace
{

void collect_variables( const Formula& f, std::set<std::string>& out )
{
    if ( f.is( Op::var ) )
        out.insert( f.name() );
    else if ( f.is_unary() )
        collect_variables( f.operand(), out );
    else
    {
        collect_variables( f.left(), out );
        collect_variables( f.right(), out );
    }
}

} // namespace

std::set<std::string> variables( const Formula& f )
{
    std::set<std::string> out;
    collect_variables( f, out );
    return out;
}

} // namespace bclkit
