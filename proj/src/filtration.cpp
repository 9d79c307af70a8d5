#include "bclkit/filtration.hpp"

namespace bclkit
{

Filtration filtrate( const RelatingModel& model, const ClosureSet& gamma )
{
    std::set<std::string> gamma_vars;
    for ( const auto& f : gamma )
        if ( f.is( Op::var ) )
            gamma_vars.insert( f.name() );

    std::map<std::vector<bool>, WorldId> rep_of_signature;
    Filtration out;
    for ( const auto& w : model.worlds )   // sorted, so the first member is the least
    {
        std::vector<bool> signature;
        signature.reserve( gamma.size() );
        for ( const auto& f : gamma )
            signature.push_back( eval( model, w, f ) );
        auto [ it, fresh ] = rep_of_signature.emplace( std::move( signature ), w );
        out.class_of[ w ] = it->second;
    }

    std::vector<WorldId> worlds;
    std::map<WorldId, std::set<std::string>> valuation;
    std::map<WorldId, Relation> relating;
    for ( const auto& [ sig, rep ] : rep_of_signature )
    {
        worlds.push_back( rep );
        auto& vars = valuation[ rep ];
        for ( const auto& v : gamma_vars )
            if ( model.assigns( rep, v ) )
                vars.insert( v );
        auto& rel = relating[ rep ];
        for ( const auto& [ a, b ] : model.relation( rep ) )
            if ( gamma.contains( a ) && gamma.contains( b ) )
                rel.emplace( a, b );
    }
    std::set<WorldPair> access;
    for ( const auto& [ u, v ] : model.access )
        access.emplace( out.class_of.at( u ), out.class_of.at( v ) );

    out.model = make_model( std::move( worlds ), std::move( access ), std::move( valuation ), std::move( relating ),
                            gamma.members() );
    return out;
}

RelatingModel demodal_complete( const RelatingModel& model )
{
    ClosureSet carrier = demodal_extend( model.carrier );
    std::vector<Formula> images;
    images.reserve( carrier.size() );
    for ( const auto& f : carrier )
        images.push_back( demodalize( f ) );

    std::map<WorldId, Relation> relating;
    for ( const auto& w : model.worlds )
    {
        const Relation& base = model.relation( w );
        Relation rel = base;
        for ( std::size_t i = 0; i < carrier.size(); ++i )
            for ( std::size_t j = 0; j < carrier.size(); ++j )
                if ( base.contains( { images[ i ], images[ j ] } ) )
                    rel.emplace( carrier[ i ], carrier[ j ] );
        relating[ w ] = std::move( rel );
    }
    return make_model( model.worlds, model.access, model.valuation, std::move( relating ), carrier.members() );
}

} // namespace bclkit
