#include "bclkit/decision.hpp"

#include "bclkit/encoding.hpp"
#include "bclkit/model_json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bclkit
{

unsigned default_budget_bits()
{
    if ( const char* env = std::getenv( "BCLKIT_BUDGET" ) )
    {
        char* end = nullptr;
        long bits = std::strtol( env, &end, 10 );
        if ( end != env && *end == '\0' && bits > 0 && bits < 63 )
            return static_cast<unsigned>( bits );
    }
    return 32;
}

ClosureSet search_carrier( const Formula& f, const ConditionSet& conds, const SearchConfig& cfg )
{
    std::vector<Formula> roots{ f };
    roots.insert( roots.end(), cfg.extra_carrier.begin(), cfg.extra_carrier.end() );
    ClosureSet carrier = subformula_closure( roots );
    if ( cfg.pad && !conds.gcun().empty() )
        carrier = pad_negations( carrier, conds.padding_depth() );
    if ( conds.demodalizing() )
        carrier = demodal_extend( carrier );
    return carrier;
}

std::optional<std::size_t> world_bound( const Formula& f, const ConditionSet& conds, std::string* why )
{
    auto say = [ & ]( const std::string& s ) {
        if ( why )
            *why = s;
    };
    if ( conds.cross_world() )
    {
        say( "k2 relates worlds to their successors; no world bound is known" );
        return std::nullopt;
    }
    if ( f.modal_depth() == 0 )
    {
        say( "modality-free query: a single looping world carries any refutation" );
        return 1;
    }
    ClosureSet gamma = subformula_closure( { f } );
    auto frames = conds.frames();
    if ( f.modal_depth() == 1 )
    {
        std::size_t modal = std::count_if( gamma.begin(), gamma.end(), []( const Formula& g ) {
            return g.is( Op::box ) || g.is( Op::diamond );
        } );
        std::size_t extra = std::max<std::size_t>( modal, frames.contains( Frame::serial ) ? 1 : 0 );
        say( "modal depth 1: the refuting world plus one witness per modal subformula" );
        return 1 + extra;
    }
    bool filtration_safe = std::all_of( frames.begin(), frames.end(), []( Frame fr ) {
        return fr == Frame::reflexive || fr == Frame::serial || fr == Frame::symmetric;
    } );
    if ( filtration_safe && gamma.size() < 63 )
    {
        say( "filtration through the subformulas of the query" );
        return std::size_t{ 1 } << gamma.size();
    }
    say( "transitive or euclidean frames are not preserved by the filtration used here" );
    return std::nullopt;
}

namespace
{

// Bottom-up evaluator over the query's subformulas for enumerated frames.
struct Evaluator
{
    struct Node
    {
        Op op;
        int a = -1, b = -1;   // operand positions
        int bit = -1;         // variable bit or relevant-pair bit
    };

    std::vector<Node> nodes;

    // truth[w * size + i]
    bool refutes( std::size_t worlds, const std::vector<std::uint8_t>& adj, const std::vector<std::uint64_t>& val,
                  const std::vector<std::uint64_t>& mask, std::vector<std::uint8_t>& truth ) const
    {
        const std::size_t size = nodes.size();
        truth.assign( worlds * size, 0 );
        for ( std::size_t i = 0; i < size; ++i )
        {
            const Node& nd = nodes[ i ];
            for ( std::size_t w = 0; w < worlds; ++w )
            {
                std::uint8_t* t = &truth[ w * size ];
                bool r = false;
                switch ( nd.op )
                {
                case Op::var: r = ( val[ w ] >> nd.bit ) & 1; break;
                case Op::neg: r = !t[ nd.a ]; break;
                case Op::conj: r = t[ nd.a ] && t[ nd.b ]; break;
                case Op::disj: r = t[ nd.a ] || t[ nd.b ]; break;
                case Op::arrow: r = ( !t[ nd.a ] || t[ nd.b ] ) && ( ( mask[ w ] >> nd.bit ) & 1 ); break;
                case Op::box:
                    r = true;
                    for ( std::size_t u = 0; u < worlds && r; ++u )
                        if ( adj[ w * worlds + u ] && !truth[ u * size + nd.a ] )
                            r = false;
                    break;
                case Op::diamond:
                    for ( std::size_t u = 0; u < worlds && !r; ++u )
                        if ( adj[ w * worlds + u ] && truth[ u * size + nd.a ] )
                            r = true;
                    break;
                }
                t[ i ] = r;
            }
        }
        return !truth[ size - 1 ];
    }
};

struct LocalMask
{
    std::uint64_t bits;
    std::vector<bool> witness;   // a full admissible relation realizing `bits`
};

std::string world_name( std::size_t w ) { return "w" + std::to_string( w ); }

class Search
{
public:
    Search( const Formula& f, const ConditionSet& conds, const SearchConfig& cfg )
            : _f{ f }, _conds{ conds }, _cfg{ cfg }, _carrier{ search_carrier( f, conds, cfg ) }, _ix{ _carrier },
              _base{ encode( _ix, conds ) }
    {
    }

    Verdict run();

private:
    void prepare();
    void enumerate_masks();
    std::uint64_t node_budget() const { return std::uint64_t{ 1 } << std::min( 62u, _cfg.budget_bits ); }
    std::optional<std::vector<std::size_t>> scan_level( std::size_t n, const std::vector<std::uint8_t>& adj );
    RelatingModel build( std::size_t n, const std::vector<std::uint8_t>& adj, const std::vector<std::size_t>& tuple,
                         const std::vector<bool>* joint );
    std::optional<std::vector<bool>> joint_witness( std::size_t n, const std::vector<std::uint8_t>& adj,
                                                    const std::vector<std::size_t>& tuple );

    const Formula& _f;
    const ConditionSet& _conds;
    const SearchConfig& _cfg;
    ClosureSet _carrier;
    CarrierIndex _ix;
    Cnf _base;

    std::vector<std::string> _vars;
    std::vector<std::size_t> _relevant;   // carrier pair variables the query reads
    Evaluator _eval;
    std::vector<LocalMask> _masks;
    std::size_t _states = 0;              // valuations x masks
};

void Search::prepare()
{
    if ( _cfg.variables )
        _vars = *_cfg.variables;
    else
    {
        auto vs = variables( _f );
        _vars.assign( vs.begin(), vs.end() );
    }
    if ( _vars.size() > 24 )
        throw BudgetError( "too many variables for enumeration" );

    ClosureSet gamma = subformula_closure( { _f } );
    std::map<std::size_t, int> pair_bit;
    for ( const auto& g : gamma )
    {
        Evaluator::Node nd{ g.op() };
        if ( g.is( Op::var ) )
        {
            auto it = std::find( _vars.begin(), _vars.end(), g.name() );
            if ( it == _vars.end() )
                throw ConfigError( "variable '" + g.name() + "' missing from the variable set" );
            nd.bit = static_cast<int>( it - _vars.begin() );
        }
        else if ( g.is_unary() )
            nd.a = static_cast<int>( *gamma.index_of( g.operand() ) );
        else
        {
            nd.a = static_cast<int>( *gamma.index_of( g.left() ) );
            nd.b = static_cast<int>( *gamma.index_of( g.right() ) );
            if ( g.is( Op::arrow ) )
            {
                std::size_t v = _ix.var( *_carrier.index_of( g.left() ), *_carrier.index_of( g.right() ) );
                auto [ it, fresh ] = pair_bit.emplace( v, static_cast<int>( _relevant.size() ) );
                if ( fresh )
                    _relevant.push_back( v );
                nd.bit = it->second;
            }
        }
        _eval.nodes.push_back( nd );
    }
    if ( _relevant.size() > 40 )
        throw BudgetError( "query has too many relating subformulas for enumeration" );
}

void Search::enumerate_masks()
{
    if ( static_cast<double>( _relevant.size() ) > _cfg.budget_bits )
        throw BudgetError( "relating-pair space 2^" + std::to_string( _relevant.size() ) + " exceeds budget 2^"
                           + std::to_string( _cfg.budget_bits ) );
    std::vector<int> assumptions;
    std::uint64_t bits = 0;
    auto dfs = [ & ]( auto&& self, std::size_t k, std::vector<bool> witness ) -> void {
        if ( k == _relevant.size() )
        {
            _masks.push_back( { bits, std::move( witness ) } );
            return;
        }
        for ( bool value : { false, true } )
        {
            assumptions.push_back( value ? pos( _relevant[ k ] ) : neg( _relevant[ k ] ) );
            if ( auto w = solve( _base, assumptions, nullptr, node_budget() ) )
            {
                if ( value )
                    bits |= std::uint64_t{ 1 } << k;
                self( self, k + 1, std::move( *w ) );
                bits &= ~( std::uint64_t{ 1 } << k );
            }
            assumptions.pop_back();
        }
    };
    if ( auto root = solve( _base, {}, nullptr, node_budget() ) )
        dfs( dfs, 0, std::move( *root ) );
}

std::optional<std::vector<bool>> Search::joint_witness( std::size_t n, const std::vector<std::uint8_t>& adj,
                                                        const std::vector<std::size_t>& tuple )
{
    std::vector<std::vector<std::size_t>> succ( n );
    for ( std::size_t w = 0; w < n; ++w )
        for ( std::size_t u = 0; u < n; ++u )
            if ( adj[ w * n + u ] )
                succ[ w ].push_back( u );
    Cnf joint = encode_frame( _ix, _conds, succ );
    std::vector<int> assumptions;
    const std::size_t block = _ix.n * _ix.n;
    for ( std::size_t w = 0; w < n; ++w )
    {
        std::uint64_t bits = _masks[ tuple[ w ] % _masks.size() ].bits;
        for ( std::size_t k = 0; k < _relevant.size(); ++k )
        {
            std::size_t v = w * block + _relevant[ k ];
            assumptions.push_back( ( bits >> k ) & 1 ? pos( v ) : neg( v ) );
        }
    }
    return solve( joint, assumptions, nullptr, node_budget() );
}

// Scans all state tuples for one frame; returns the least refuting tuple.
std::optional<std::vector<std::size_t>> Search::scan_level( std::size_t n, const std::vector<std::uint8_t>& adj )
{
    const std::size_t m = _masks.size();
    const unsigned jobs = std::max( 1u, _cfg.jobs );
    std::mutex lock;
    std::optional<std::vector<std::size_t>> best;
    std::atomic<bool> stop{ false };

    auto worker = [ & ]( unsigned job ) {
        std::vector<std::uint8_t> truth;
        std::vector<std::uint64_t> val( n ), mask( n );
        std::vector<std::size_t> tuple( n, 0 );
        for ( std::size_t first = job; first < _states; first += jobs )
        {
            if ( stop )
                return;
            tuple.assign( n, 0 );
            tuple[ 0 ] = first;
            while ( true )
            {
                for ( std::size_t w = 0; w < n; ++w )
                {
                    val[ w ] = tuple[ w ] / m;
                    mask[ w ] = _masks[ tuple[ w ] % m ].bits;
                }
                if ( _eval.refutes( n, adj, val, mask, truth )
                     && ( !_conds.cross_world() || joint_witness( n, adj, tuple ) ) )
                {
                    std::lock_guard guard{ lock };
                    if ( !best || tuple < *best )
                        best = tuple;
                    if ( !_cfg.deterministic )
                        stop = true;
                    return;   // later tuples of this job are larger
                }
                // odometer over worlds 1..n-1; world 0 is fixed per job slice
                bool wrapped = true;
                for ( std::size_t w = n; w > 1; )
                {
                    --w;
                    if ( ++tuple[ w ] < _states )
                    {
                        wrapped = false;
                        break;
                    }
                    tuple[ w ] = 0;
                }
                if ( wrapped )
                    break;
            }
        }
    };

    if ( jobs == 1 )
        worker( 0 );
    else
    {
        std::vector<std::thread> pool;
        for ( unsigned j = 0; j < jobs; ++j )
            pool.emplace_back( worker, j );
        for ( auto& t : pool )
            t.join();
    }
    return best;
}

RelatingModel Search::build( std::size_t n, const std::vector<std::uint8_t>& adj,
                             const std::vector<std::size_t>& tuple, const std::vector<bool>* joint )
{
    std::vector<WorldId> worlds;
    std::set<WorldPair> access;
    std::map<WorldId, std::set<std::string>> valuation;
    std::map<WorldId, Relation> relating;
    const std::size_t m = _masks.size(), size = _ix.n, block = size * size;
    for ( std::size_t w = 0; w < n; ++w )
        worlds.push_back( world_name( w ) );
    for ( std::size_t w = 0; w < n; ++w )
    {
        for ( std::size_t u = 0; u < n; ++u )
            if ( adj[ w * n + u ] )
                access.emplace( worlds[ w ], worlds[ u ] );
        auto& vars = valuation[ worlds[ w ] ];
        std::uint64_t val = tuple[ w ] / m;
        for ( std::size_t k = 0; k < _vars.size(); ++k )
            if ( ( val >> k ) & 1 )
                vars.insert( _vars[ k ] );
        const std::vector<bool>& local = _masks[ tuple[ w ] % m ].witness;
        auto& rel = relating[ worlds[ w ] ];
        for ( std::size_t i = 0; i < size; ++i )
            for ( std::size_t j = 0; j < size; ++j )
            {
                bool on = joint ? ( *joint )[ w * block + i * size + j ] : local[ i * size + j ];
                if ( on )
                    rel.emplace( _carrier[ i ], _carrier[ j ] );
            }
    }
    return make_model( std::move( worlds ), std::move( access ), std::move( valuation ), std::move( relating ),
                       _carrier.members() );
}

Verdict Search::run()
{
    prepare();
    enumerate_masks();

    Verdict verdict;
    std::string why;
    verdict.required_worlds = world_bound( _f, _conds, &why );
    std::size_t limit = std::max<std::size_t>( 1, _cfg.max_worlds );
    if ( verdict.required_worlds )
        limit = std::min( limit, *verdict.required_worlds );

    if ( _masks.empty() )
    {
        verdict.kind = VerdictKind::valid;
        verdict.reason = "no relation over the carrier satisfies the conditions, so there are no models";
        return verdict;
    }

    _states = _masks.size() << _vars.size();
    // raw space: sum over n of 2^(n*n) frames times states^n
    double raw = 0;
    for ( std::size_t n = 1; n <= limit; ++n )
        raw += std::pow( 2.0, static_cast<double>( n * n ) ) * std::pow( static_cast<double>( _states ), n );
    if ( std::log2( raw ) > _cfg.budget_bits )
    {
        std::ostringstream msg;
        msg << "search space of about 2^" << static_cast<int>( std::ceil( std::log2( raw ) ) )
            << " exceeds the budget 2^" << _cfg.budget_bits << "; lower --max-worlds or shrink the query";
        throw BudgetError( msg.str() );
    }

    const auto frames = _conds.frames();
    for ( std::size_t n = 1; n <= limit; ++n )
    {
        std::vector<WorldId> ids;
        for ( std::size_t w = 0; w < n; ++w )
            ids.push_back( world_name( w ) );
        const std::uint64_t frames_total = std::uint64_t{ 1 } << ( n * n );
        for ( std::uint64_t code = 0; code < frames_total; ++code )
        {
            std::vector<std::uint8_t> adj( n * n );
            std::set<WorldPair> edges;
            for ( std::size_t e = 0; e < n * n; ++e )
                if ( ( code >> e ) & 1 )
                {
                    adj[ e ] = 1;
                    edges.emplace( ids[ e / n ], ids[ e % n ] );
                }
            if ( !std::all_of( frames.begin(), frames.end(),
                               [ & ]( Frame fr ) { return frame_check( ids, edges, fr ); } ) )
                continue;
            auto tuple = scan_level( n, adj );
            if ( !tuple )
                continue;
            std::optional<std::vector<bool>> joint;
            if ( _conds.cross_world() )
                joint = joint_witness( n, adj, *tuple );
            RelatingModel model = build( n, adj, *tuple, joint ? &*joint : nullptr );
            if ( eval( model, "w0", _f ) || !admissible( model, _conds ).admissible )
                throw std::logic_error( "internal error: countermodel failed re-validation" );
            verdict.kind = VerdictKind::countermodel;
            verdict.model = std::move( model );
            verdict.world = "w0";
            verdict.searched_worlds = n;
            verdict.reason = "refuted at w0";
            return verdict;
        }
    }

    verdict.searched_worlds = limit;
    bool complete = verdict.required_worlds && limit >= *verdict.required_worlds;
    if ( complete && _conds.gcun().empty() )
    {
        verdict.kind = VerdictKind::valid;
        verdict.reason = why;
    }
    else
    {
        verdict.kind = VerdictKind::bounded_valid;
        if ( !_conds.gcun().empty() )
            verdict.reason = "no countermodel up to the searched bound; gcun logics have no explicit finite-model bound";
        else if ( !verdict.required_worlds )
            verdict.reason = "no countermodel up to the searched bound; " + why;
        else
            verdict.reason = "no countermodel up to the searched bound, which is below the required "
                             + std::to_string( *verdict.required_worlds ) + " worlds";
    }
    return verdict;
}

} // namespace

Verdict decide( const Formula& f, const ConditionSet& conds, const SearchConfig& cfg )
{
    return Search{ f, conds, cfg }.run();
}

Count count_admissible( const ClosureSet& carrier, const ConditionSet& conds, unsigned budget_bits )
{
    if ( conds.cross_world() )
        throw ConfigError( "k2 and k2_d relate several worlds; counting covers single relations only" );
    CarrierIndex ix{ carrier };
    unsigned bits = budget_bits > 12 ? budget_bits - 12 : 1;
    return count_models( encode( ix, conds ), std::uint64_t{ 1 } << std::min( 62u, bits ) );
}

std::string verdict_name( VerdictKind k )
{
    switch ( k )
    {
    case VerdictKind::valid: return "valid";
    case VerdictKind::countermodel: return "countermodel";
    case VerdictKind::bounded_valid: return "bounded_valid";
    }
    return "?";
}

nlohmann::json verdict_to_json( const Verdict& v, const Formula& f, const ConditionSet& conds,
                                const std::string& logic )
{
    nlohmann::json doc = nlohmann::json::object();
    doc[ "verdict" ] = verdict_name( v.kind );
    doc[ "formula" ] = f.text();
    if ( !logic.empty() )
        doc[ "logic" ] = logic;
    doc[ "conditions" ] = conds.to_string();
    doc[ "world" ] = v.world ? nlohmann::json( *v.world ) : nlohmann::json( nullptr );
    doc[ "model" ] = v.model ? model_to_json( *v.model ) : nlohmann::json( nullptr );
    doc[ "searched_worlds" ] = v.searched_worlds;
    doc[ "required_worlds" ] = v.required_worlds ? nlohmann::json( *v.required_worlds ) : nlohmann::json( nullptr );
    doc[ "reason" ] = v.reason;
    return doc;
}

} // namespace bclkit
