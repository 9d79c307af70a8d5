#include "bclkit/model_json.hpp"

#include "bclkit/parser.hpp"

namespace bclkit
{

namespace
{

using nlohmann::json;

const json& field( const json& doc, const char* key )
{
    if ( !doc.contains( key ) )
        throw ModelError( std::string( "model document lacks \"" ) + key + "\"" );
    return doc.at( key );
}

std::string as_string( const json& j, const char* what )
{
    if ( !j.is_string() )
        throw ModelError( std::string( what ) + " must be a string" );
    return j.get<std::string>();
}

} // namespace

RelatingModel model_from_json( const json& doc )
{
    if ( !doc.is_object() )
        throw ModelError( "model document must be an object" );

    std::vector<WorldId> worlds;
    const json& jw = field( doc, "worlds" );
    if ( !jw.is_array() )
        throw ModelError( "\"worlds\" must be an array" );
    for ( const auto& w : jw )
        worlds.push_back( as_string( w, "world id" ) );

    std::set<WorldPair> access;
    if ( doc.contains( "access" ) )
    {
        for ( const auto& e : doc.at( "access" ) )
        {
            if ( !e.is_array() || e.size() != 2 )
                throw ModelError( "access edges must be two-element arrays" );
            access.emplace( as_string( e[ 0 ], "access endpoint" ), as_string( e[ 1 ], "access endpoint" ) );
        }
    }

    std::map<WorldId, std::set<std::string>> valuation;
    if ( doc.contains( "valuation" ) )
    {
        if ( !doc.at( "valuation" ).is_object() )
            throw ModelError( "\"valuation\" must be an object" );
        for ( const auto& [ w, vars ] : doc.at( "valuation" ).items() )
        {
            auto& set = valuation[ w ];
            for ( const auto& v : vars )
            {
                Formula f = parse( as_string( v, "variable" ) );
                if ( !f.is( Op::var ) )
                    throw ModelError( "valuation entry '" + v.get<std::string>() + "' is not a variable" );
                set.insert( f.name() );
            }
        }
    }

    std::map<WorldId, Relation> relating;
    if ( doc.contains( "relating" ) )
    {
        if ( !doc.at( "relating" ).is_object() )
            throw ModelError( "\"relating\" must be an object" );
        for ( const auto& [ w, pairs ] : doc.at( "relating" ).items() )
        {
            auto& rel = relating[ w ];
            for ( const auto& p : pairs )
            {
                if ( !p.is_array() || p.size() != 2 )
                    throw ModelError( "relating entries must be two-element arrays" );
                rel.emplace( parse( as_string( p[ 0 ], "formula" ) ), parse( as_string( p[ 1 ], "formula" ) ) );
            }
        }
    }

    std::vector<Formula> carrier;
    if ( doc.contains( "carrier" ) )
        for ( const auto& f : doc.at( "carrier" ) )
            carrier.push_back( parse( as_string( f, "carrier formula" ) ) );

    return make_model( std::move( worlds ), std::move( access ), std::move( valuation ), std::move( relating ),
                       carrier );
}

json model_to_json( const RelatingModel& model )
{
    json doc = json::object();
    doc[ "worlds" ] = model.worlds;
    json access = json::array();
    for ( const auto& [ u, v ] : model.access )
        access.push_back( { u, v } );
    doc[ "access" ] = access;
    json valuation = json::object();
    json relating = json::object();
    for ( const auto& w : model.worlds )
    {
        auto it = model.valuation.find( w );
        valuation[ w ] = it == model.valuation.end() ? json::array() : json( it->second );
        json pairs = json::array();
        for ( const auto& [ a, b ] : model.relation( w ) )
            pairs.push_back( { a.text(), b.text() } );
        relating[ w ] = pairs;
    }
    doc[ "valuation" ] = valuation;
    doc[ "relating" ] = relating;
    json carrier = json::array();
    for ( const auto& f : model.carrier )
        carrier.push_back( f.text() );
    doc[ "carrier" ] = carrier;
    return doc;
}

} // namespace bclkit
