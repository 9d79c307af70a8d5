#include "bclkit/closure.hpp"

#include <algorithm>
#include <set>

namespace bclkit
{

std::optional<std::size_t> ClosureSet::index_of( const Formula& f ) const
{
    auto it = _index.find( f );
    if ( it == _index.end() )
        return std::nullopt;
    return it->second;
}

namespace
{

void collect( const Formula& f, std::set<Formula>& out )
{
    if ( !out.insert( f ).second )
        return;
    if ( f.is_unary() )
        collect( f.operand(), out );
    else if ( f.is_binary() )
    {
        collect( f.left(), out );
        collect( f.right(), out );
    }
}

} // namespace

ClosureSet subformula_closure( const std::vector<Formula>& roots )
{
    std::set<Formula> all;
    for ( const auto& r : roots )
        collect( r, all );
    ClosureSet out;
    out._members.assign( all.begin(), all.end() );
    for ( std::size_t i = 0; i < out._members.size(); ++i )
        out._index.emplace( out._members[ i ], i );
    return out;
}

ClosureSet merge( const ClosureSet& a, const ClosureSet& b )
{
    std::vector<Formula> roots = a.members();
    roots.insert( roots.end(), b.begin(), b.end() );
    return subformula_closure( roots );
}

ClosureSet demodal_extend( const ClosureSet& carrier )
{
    std::vector<Formula> roots = carrier.members();
    for ( const auto& f : carrier )
        roots.push_back( demodalize( f ) );
    return subformula_closure( roots );
}

ClosureSet pad_negations( const ClosureSet& carrier, std::size_t depth )
{
    std::vector<Formula> roots = carrier.members();
    for ( const auto& f : carrier )
    {
        Formula core = strip_negations( f ).core;
        for ( std::size_t j = 0; j <= depth; ++j )
            roots.push_back( apply_negations( j, core ) );
    }
    return subformula_closure( roots );
}

} // namespace bclkit
