#include "bclkit/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>

namespace bclkit
{

namespace
{

std::size_t var_of( int lit ) { return static_cast<std::size_t>( std::abs( lit ) - 1 ); }

class Solver
{
public:
    Solver( const Cnf& cnf, std::mt19937_64* rng, std::uint64_t budget )
            : _cnf{ cnf }, _rng{ rng }, _budget{ budget }, _value( cnf.vars, 0 ), _occurs( 2 * cnf.vars )
    {
        for ( std::size_t c = 0; c < cnf.clauses.size(); ++c )
            for ( int lit : cnf.clauses[ c ] )
                _occurs[ slot( lit ) ].push_back( c );
    }

    std::optional<std::vector<bool>> run( const std::vector<int>& assumptions )
    {
        for ( const auto& clause : _cnf.clauses )
            if ( clause.empty() )
                return std::nullopt;
        for ( int lit : assumptions )
            if ( !assign( lit ) )
                return std::nullopt;
        // unit clauses of the formula itself
        for ( const auto& clause : _cnf.clauses )
            if ( clause.size() == 1 && !assign( clause[ 0 ] ) )
                return std::nullopt;
        if ( !propagate() || !search() )
            return std::nullopt;
        std::vector<bool> out( _cnf.vars );
        for ( std::size_t v = 0; v < _cnf.vars; ++v )
            out[ v ] = _value[ v ] > 0 || ( _value[ v ] == 0 && _rng && ( ( *_rng )() & 1 ) );
        return out;
    }

private:
    static std::size_t slot( int lit ) { return 2 * var_of( lit ) + ( lit < 0 ? 1 : 0 ); }

    int value_of( int lit ) const
    {
        int v = _value[ var_of( lit ) ];
        return lit > 0 ? v : -v;
    }

    bool assign( int lit )
    {
        int current = value_of( lit );
        if ( current != 0 )
            return current > 0;
        _value[ var_of( lit ) ] = lit > 0 ? 1 : -1;
        _trail.push_back( lit );
        return true;
    }

    // Processes trail entries from _head on; false on conflict.
    bool propagate()
    {
        while ( _head < _trail.size() )
        {
            int lit = _trail[ _head++ ];
            for ( std::size_t c : _occurs[ slot( -lit ) ] )
            {
                int unit = 0;
                std::size_t open = 0;
                bool satisfied = false;
                for ( int l : _cnf.clauses[ c ] )
                {
                    int val = value_of( l );
                    if ( val > 0 )
                    {
                        satisfied = true;
                        break;
                    }
                    if ( val == 0 )
                    {
                        ++open;
                        unit = l;
                    }
                }
                if ( satisfied )
                    continue;
                if ( open == 0 )
                    return false;
                if ( open == 1 )
                    assign( unit );
            }
        }
        return true;
    }

    void undo( std::size_t mark )
    {
        while ( _trail.size() > mark )
        {
            _value[ var_of( _trail.back() ) ] = 0;
            _trail.pop_back();
        }
        _head = mark;
    }

    // First open variable of the first clause not yet satisfied.
    std::optional<std::size_t> pick() const
    {
        for ( const auto& clause : _cnf.clauses )
        {
            bool satisfied = false;
            std::optional<std::size_t> open;
            for ( int l : clause )
            {
                int val = value_of( l );
                if ( val > 0 )
                {
                    satisfied = true;
                    break;
                }
                if ( val == 0 && !open )
                    open = var_of( l );
            }
            if ( !satisfied && open )
                return open;
        }
        return std::nullopt;
    }

    bool search()
    {
        if ( _budget && ++_nodes > _budget )
            throw BudgetError( "relation search exceeded its node budget" );
        auto v = pick();
        if ( !v )
            return true;
        bool first = _rng ? ( ( *_rng )() & 1 ) : true;
        for ( bool polarity : { first, !first } )
        {
            std::size_t mark = _trail.size();
            assign( polarity ? pos( *v ) : neg( *v ) );
            if ( propagate() && search() )
                return true;
            undo( mark );
        }
        return false;
    }

    const Cnf& _cnf;
    std::mt19937_64* _rng;
    std::uint64_t _budget;
    std::uint64_t _nodes = 0;
    std::vector<int> _value;
    std::vector<std::vector<std::size_t>> _occurs;
    std::vector<int> _trail;
    std::size_t _head = 0;
};

using Clauses = std::vector<std::vector<int>>;

class Counter
{
public:
    explicit Counter( std::uint64_t budget ) : _budget{ budget } {}

    // Models of `clauses` over exactly `scope` variables.
    Count count( Clauses clauses, std::vector<std::size_t> scope )
    {
        if ( _budget && ++_nodes > _budget )
            throw BudgetError( "relation count exceeded its node budget" );

        std::unordered_map<std::size_t, bool> fixed;
        if ( !simplify( clauses, fixed ) )
            return 0;

        std::vector<std::size_t> used;
        for ( const auto& c : clauses )
            for ( int l : c )
                used.push_back( var_of( l ) );
        std::sort( used.begin(), used.end() );
        used.erase( std::unique( used.begin(), used.end() ), used.end() );
        std::size_t free = scope.size() - fixed.size() - used.size();

        Count total = Count( 1 ) << free;
        for ( auto& [ comp, vars ] : components( clauses, used ) )
        {
            total *= count_component( std::move( comp ), std::move( vars ) );
            if ( total == 0 )
                return 0;
        }
        return total;
    }

private:
    // Unit propagation to fixpoint; false on conflict. Satisfied clauses and
    // false literals are removed.
    static bool simplify( Clauses& clauses, std::unordered_map<std::size_t, bool>& fixed )
    {
        while ( true )
        {
            int unit = 0;
            for ( const auto& c : clauses )
            {
                if ( c.empty() )
                    return false;
                if ( c.size() == 1 )
                {
                    unit = c[ 0 ];
                    break;
                }
            }
            if ( unit == 0 )
                return true;
            fixed[ var_of( unit ) ] = unit > 0;
            Clauses next;
            next.reserve( clauses.size() );
            for ( auto& c : clauses )
            {
                if ( std::find( c.begin(), c.end(), unit ) != c.end() )
                    continue;
                std::erase( c, -unit );
                if ( c.empty() )
                    return false;
                next.push_back( std::move( c ) );
            }
            clauses = std::move( next );
        }
    }

    static std::vector<std::pair<Clauses, std::vector<std::size_t>>> components( Clauses& clauses,
                                                                                const std::vector<std::size_t>& used )
    {
        std::unordered_map<std::size_t, std::size_t> parent;
        for ( auto v : used )
            parent[ v ] = v;
        auto find = [ & ]( std::size_t v ) {
            while ( parent[ v ] != v )
            {
                parent[ v ] = parent[ parent[ v ] ];
                v = parent[ v ];
            }
            return v;
        };
        for ( const auto& c : clauses )
            for ( std::size_t i = 1; i < c.size(); ++i )
                parent[ find( var_of( c[ i ] ) ) ] = find( var_of( c[ 0 ] ) );

        std::unordered_map<std::size_t, std::size_t> slot;
        std::vector<std::pair<Clauses, std::vector<std::size_t>>> out;
        for ( auto v : used )
        {
            auto root = find( v );
            auto [ it, fresh ] = slot.emplace( root, out.size() );
            if ( fresh )
                out.emplace_back();
            out[ it->second ].second.push_back( v );
        }
        for ( auto& c : clauses )
            out[ slot[ find( var_of( c[ 0 ] ) ) ] ].first.push_back( std::move( c ) );
        return out;
    }

    Count count_component( Clauses clauses, std::vector<std::size_t> vars )
    {
        for ( auto& c : clauses )
            std::sort( c.begin(), c.end() );
        std::sort( clauses.begin(), clauses.end() );
        std::string key;
        for ( const auto& c : clauses )
        {
            for ( int l : c )
                key += std::to_string( l ) + ' ';
            key += '|';
        }
        if ( auto it = _cache.find( key ); it != _cache.end() )
            return it->second;

        std::unordered_map<std::size_t, std::size_t> occurrences;
        for ( const auto& c : clauses )
            for ( int l : c )
                ++occurrences[ var_of( l ) ];
        std::size_t branch = vars.front();
        for ( auto v : vars )
            if ( occurrences[ v ] > occurrences[ branch ] )
                branch = v;

        Count total = 0;
        for ( int lit : { pos( branch ), neg( branch ) } )
        {
            Clauses next = clauses;
            next.push_back( { lit } );
            total += count( std::move( next ), vars );
        }
        _cache.emplace( std::move( key ), total );
        return total;
    }

    std::uint64_t _budget;
    std::uint64_t _nodes = 0;
    std::unordered_map<std::string, Count> _cache;
};

} // namespace

std::optional<std::vector<bool>> solve( const Cnf& cnf, const std::vector<int>& assumptions, std::mt19937_64* rng,
                                        std::uint64_t node_budget )
{
    return Solver{ cnf, rng, node_budget }.run( assumptions );
}

Count count_models( const Cnf& cnf, std::uint64_t node_budget )
{
    std::vector<std::size_t> scope( cnf.vars );
    std::iota( scope.begin(), scope.end(), 0 );
    Clauses clauses;
    for ( auto c : cnf.clauses )
    {
        std::sort( c.begin(), c.end() );
        c.erase( std::unique( c.begin(), c.end() ), c.end() );
        // tautological clauses constrain nothing
        bool taut = false;
        for ( int l : c )
            taut = taut || std::binary_search( c.begin(), c.end(), -l );
        if ( !taut )
            clauses.push_back( std::move( c ) );
    }
    return Counter{ node_budget }.count( std::move( clauses ), std::move( scope ) );
}

} // namespace bclkit
