#include "bclkit/model.hpp"

#include <algorithm>

namespace bclkit
{

bool RelatingModel::has_world( const WorldId& w ) const
{
    return std::binary_search( worlds.begin(), worlds.end(), w );
}

std::vector<WorldId> RelatingModel::successors( const WorldId& w ) const
{
    std::vector<WorldId> out;
    for ( auto it = access.lower_bound( { w, {} } ); it != access.end() && it->first == w; ++it )
        out.push_back( it->second );
    return out;
}

const Relation& RelatingModel::relation( const WorldId& w ) const
{
    static const Relation empty;
    auto it = relating.find( w );
    return it == relating.end() ? empty : it->second;
}

bool RelatingModel::related( const WorldId& w, const Formula& a, const Formula& b ) const
{
    return relation( w ).contains( { a, b } );
}

bool RelatingModel::assigns( const WorldId& w, const std::string& var ) const
{
    auto it = valuation.find( w );
    return it != valuation.end() && it->second.contains( var );
}

RelatingModel make_model( std::vector<WorldId> worlds, std::set<WorldPair> access,
                          std::map<WorldId, std::set<std::string>> valuation,
                          std::map<WorldId, Relation> relating, const std::vector<Formula>& extra_carrier )
{
    if ( worlds.empty() )
        throw ModelError( "model has no worlds" );
    std::sort( worlds.begin(), worlds.end() );
    if ( std::adjacent_find( worlds.begin(), worlds.end() ) != worlds.end() )
        throw ModelError( "duplicate world id" );

    RelatingModel m;
    m.worlds = std::move( worlds );
    auto require = [ & ]( const WorldId& w, const char* where ) {
        if ( !m.has_world( w ) )
            throw ModelError( std::string( "unknown world '" ) + w + "' in " + where );
    };
    for ( const auto& [ u, v ] : access )
    {
        require( u, "access" );
        require( v, "access" );
    }
    for ( const auto& [ w, vars ] : valuation )
        require( w, "valuation" );
    std::vector<Formula> roots = extra_carrier;
    for ( const auto& [ w, rel ] : relating )
    {
        require( w, "relating" );
        for ( const auto& [ a, b ] : rel )
        {
            roots.push_back( a );
            roots.push_back( b );
        }
    }
    m.access = std::move( access );
    m.valuation = std::move( valuation );
    m.relating = std::move( relating );
    m.carrier = subformula_closure( roots );
    return m;
}

bool eval( const RelatingModel& model, const WorldId& world, const Formula& f )
{
    if ( !model.has_world( world ) )
        throw ModelError( "unknown world '" + world + "'" );
    switch ( f.op() )
    {
    case Op::var: return model.assigns( world, f.name() );
    case Op::neg: return !eval( model, world, f.operand() );
    case Op::conj: return eval( model, world, f.left() ) && eval( model, world, f.right() );
    case Op::disj: return eval( model, world, f.left() ) || eval( model, world, f.right() );
    case Op::arrow:
        return ( !eval( model, world, f.left() ) || eval( model, world, f.right() ) )
               && model.related( world, f.left(), f.right() );
    case Op::box:
        for ( const auto& u : model.successors( world ) )
            if ( !eval( model, u, f.operand() ) )
                return false;
        return true;
    case Op::diamond:
        for ( const auto& u : model.successors( world ) )
            if ( eval( model, u, f.operand() ) )
                return true;
        return false;
    }
    return false;
}

bool holds_in_model( const RelatingModel& model, const Formula& f )
{
    return std::all_of( model.worlds.begin(), model.worlds.end(),
                        [ & ]( const WorldId& w ) { return eval( model, w, f ); } );
}

} // namespace bclkit
