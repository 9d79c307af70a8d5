#include "bclkit/sampling.hpp"

#include "bclkit/cnf.hpp"
#include "bclkit/encoding.hpp"

namespace bclkit
{

Formula random_formula( std::mt19937_64& rng, const std::vector<std::string>& vars, unsigned depth, bool modal )
{
    auto pick = [ & ]( std::size_t n ) { return std::uniform_int_distribution<std::size_t>( 0, n - 1 )( rng ); };
    if ( depth == 0 || pick( 4 ) == 0 )
        return Formula::variable( vars[ pick( vars.size() ) ] );
    switch ( pick( modal ? 6 : 4 ) )
    {
    case 0: return Formula::negation( random_formula( rng, vars, depth - 1, modal ) );
    case 1:
        return Formula::conjunction( random_formula( rng, vars, depth - 1, modal ),
                                     random_formula( rng, vars, depth - 1, modal ) );
    case 2:
        return Formula::disjunction( random_formula( rng, vars, depth - 1, modal ),
                                     random_formula( rng, vars, depth - 1, modal ) );
    case 3:
        return Formula::arrow( random_formula( rng, vars, depth - 1, modal ),
                               random_formula( rng, vars, depth - 1, modal ) );
    case 4: return Formula::box( random_formula( rng, vars, depth - 1, modal ) );
    default: return Formula::diamond( random_formula( rng, vars, depth - 1, modal ) );
    }
}

std::set<WorldPair> random_access( std::mt19937_64& rng, const std::vector<WorldId>& worlds,
                                   const std::set<Frame>& frames )
{
    std::bernoulli_distribution coin( 0.35 );
    std::set<WorldPair> access;
    for ( const auto& u : worlds )
        for ( const auto& v : worlds )
            if ( coin( rng ) )
                access.emplace( u, v );

    bool changed = true;
    while ( changed )
    {
        changed = false;
        auto add = [ & ]( const WorldId& a, const WorldId& b ) { changed |= access.emplace( a, b ).second; };
        if ( frames.contains( Frame::reflexive ) )
            for ( const auto& w : worlds )
                add( w, w );
        if ( frames.contains( Frame::serial ) )
            for ( const auto& w : worlds )
            {
                auto it = access.lower_bound( { w, {} } );
                if ( it == access.end() || it->first != w )
                    add( w, worlds[ std::uniform_int_distribution<std::size_t>( 0, worlds.size() - 1 )( rng ) ] );
            }
        auto snapshot = access;
        for ( const auto& [ a, b ] : snapshot )
        {
            if ( frames.contains( Frame::symmetric ) )
                add( b, a );
            for ( const auto& [ c, d ] : snapshot )
            {
                if ( frames.contains( Frame::transitive ) && b == c )
                    add( a, d );
                if ( frames.contains( Frame::euclidean ) && a == c )
                    add( b, d );
            }
        }
    }
    return access;
}

std::optional<RelatingModel> random_model( std::mt19937_64& rng, const ClosureSet& carrier,
                                           const ConditionSet& conds, const std::vector<std::string>& vars,
                                           std::size_t worlds )
{
    std::vector<WorldId> ids;
    for ( std::size_t w = 0; w < worlds; ++w )
        ids.push_back( "w" + std::to_string( w ) );
    auto access = random_access( rng, ids, conds.frames() );

    std::vector<std::vector<std::size_t>> succ( worlds );
    for ( std::size_t w = 0; w < worlds; ++w )
        for ( std::size_t u = 0; u < worlds; ++u )
            if ( access.contains( { ids[ w ], ids[ u ] } ) )
                succ[ w ].push_back( u );

    CarrierIndex ix{ carrier };
    auto solution = solve( encode_frame( ix, conds, succ ), {}, &rng );
    if ( !solution )
        return std::nullopt;

    std::bernoulli_distribution coin( 0.5 );
    std::map<WorldId, std::set<std::string>> valuation;
    std::map<WorldId, Relation> relating;
    const std::size_t n = carrier.size();
    for ( std::size_t w = 0; w < worlds; ++w )
    {
        auto& val = valuation[ ids[ w ] ];
        for ( const auto& v : vars )
            if ( coin( rng ) )
                val.insert( v );
        auto& rel = relating[ ids[ w ] ];
        for ( std::size_t i = 0; i < n; ++i )
            for ( std::size_t j = 0; j < n; ++j )
                if ( ( *solution )[ w * n * n + i * n + j ] )
                    rel.emplace( carrier[ i ], carrier[ j ] );
    }
    return make_model( std::move( ids ), std::move( access ), std::move( valuation ), std::move( relating ),
                       carrier.members() );
}

} // namespace bclkit
