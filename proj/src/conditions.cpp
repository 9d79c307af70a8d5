#include "bclkit/conditions.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>

namespace bclkit
{

namespace
{

struct Named
{
    Cond kind;
    std::string_view name;
};

constexpr std::array names{
    Named{ Cond::a1, "a1" },     Named{ Cond::a2, "a2" },     Named{ Cond::b0, "b0" },
    Named{ Cond::b1, "b1" },     Named{ Cond::b2, "b2" },     Named{ Cond::cun, "cun" },
    Named{ Cond::gcun, "gcun" }, Named{ Cond::b0p, "b0'" },   Named{ Cond::b1p, "b1'" },
    Named{ Cond::b2p, "b2'" },   Named{ Cond::r1, "r1" },     Named{ Cond::r2, "r2" },
    Named{ Cond::r3, "r3" },     Named{ Cond::r4, "r4" },     Named{ Cond::r5, "r5" },
    Named{ Cond::demR, "demR" }, Named{ Cond::demL, "demL" }, Named{ Cond::demE, "demE" },
    Named{ Cond::d1, "d1" },     Named{ Cond::d2, "d2" },     Named{ Cond::k1, "k1" },
    Named{ Cond::k2, "k2" },     Named{ Cond::t, "t" },       Named{ Cond::d, "d" },
    Named{ Cond::b, "b" },       Named{ Cond::iv, "iv" },     Named{ Cond::v, "v" },
    Named{ Cond::d1_d, "d1_d" }, Named{ Cond::d2_d, "d2_d" }, Named{ Cond::k1_d, "k1_d" },
    Named{ Cond::k2_d, "k2_d" }, Named{ Cond::t_d, "t_d" },   Named{ Cond::d_d, "d_d" },
    Named{ Cond::b_d, "b_d" },   Named{ Cond::iv_d, "iv_d" }, Named{ Cond::v_d, "v_d" },
};

constexpr std::array frame_names{ "reflexive", "serial", "symmetric", "transitive", "euclidean" };

std::optional<Cond> cond_from_name( std::string_view name )
{
    for ( const auto& n : names )
        if ( n.name == name )
            return n.kind;
    // ASCII-friendly spellings of the primed conditions
    if ( name == "b0p" )
        return Cond::b0p;
    if ( name == "b1p" )
        return Cond::b1p;
    if ( name == "b2p" )
        return Cond::b2p;
    return std::nullopt;
}

std::string_view trim( std::string_view s )
{
    while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' ) )
        s.remove_prefix( 1 );
    while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' ) )
        s.remove_suffix( 1 );
    return s;
}

unsigned parse_natural( std::string_view s )
{
    s = trim( s );
    unsigned value = 0;
    auto [ ptr, ec ] = std::from_chars( s.data(), s.data() + s.size(), value );
    if ( s.empty() || ec != std::errc{} || ptr != s.data() + s.size() )
        throw ConfigError( "gcun parameter '" + std::string( s ) + "' is not a natural number" );
    return value;
}

std::vector<std::string_view> split( std::string_view text )
{
    std::vector<std::string_view> out;
    while ( true )
    {
        auto pos = text.find( ',' );
        out.push_back( trim( text.substr( 0, pos ) ) );
        if ( pos == std::string_view::npos )
            break;
        text.remove_prefix( pos + 1 );
    }
    return out;
}

} // namespace

std::string Condition::name() const
{
    for ( const auto& n : names )
    {
        if ( n.kind != kind )
            continue;
        if ( kind != Cond::gcun )
            return std::string( n.name );
        std::ostringstream s;
        s << "gcun:" << quad.k << ',' << quad.l << ',' << quad.m << ',' << quad.n;
        return s.str();
    }
    return "?";
}

std::string frame_name( Frame f ) { return frame_names[ static_cast<std::size_t>( f ) ]; }

std::optional<Frame> frame_from_name( std::string_view name )
{
    for ( std::size_t i = 0; i < frame_names.size(); ++i )
        if ( frame_names[ i ] == name )
            return static_cast<Frame>( i );
    return std::nullopt;
}

std::optional<Frame> frame_of( Cond c )
{
    switch ( c )
    {
    case Cond::t:
    case Cond::t_d: return Frame::reflexive;
    case Cond::d:
    case Cond::d_d: return Frame::serial;
    case Cond::b:
    case Cond::b_d: return Frame::symmetric;
    case Cond::iv:
    case Cond::iv_d: return Frame::transitive;
    case Cond::v:
    case Cond::v_d: return Frame::euclidean;
    default: return std::nullopt;
    }
}

ConditionSet ConditionSet::parse( std::string_view text )
{
    ConditionSet out;
    std::vector<std::string_view> removals;
    auto tokens = split( text );
    if ( tokens.size() == 1 && tokens[ 0 ].empty() )
        return out;
    for ( std::size_t i = 0; i < tokens.size(); ++i )
    {
        std::string_view tok = tokens[ i ];
        if ( tok.empty() )
            throw ConfigError( "empty condition name" );
        if ( tok.front() == '!' )
        {
            removals.push_back( trim( tok.substr( 1 ) ) );
            continue;
        }
        if ( tok.starts_with( "gcun:" ) )
        {
            if ( i + 3 >= tokens.size() )
                throw ConfigError( "gcun needs four parameters k,l,m,n" );
            Quad q{ parse_natural( tok.substr( 5 ) ), parse_natural( tokens[ i + 1 ] ),
                    parse_natural( tokens[ i + 2 ] ), parse_natural( tokens[ i + 3 ] ) };
            i += 3;
            out.add( Condition{ Cond::gcun, q } );
            continue;
        }
        if ( auto f = frame_from_name( tok ) )
        {
            out.add_frame( *f );
            continue;
        }
        auto c = cond_from_name( tok );
        if ( !c || *c == Cond::gcun )
            throw ConfigError( "unknown condition '" + std::string( tok ) + "'" );
        out.add( *c );
    }
    for ( auto r : removals )
    {
        if ( auto f = frame_from_name( r ) )
            out.remove_frame( *f );
        else if ( auto c = cond_from_name( r ) )
            out.remove( *c );
        else
            throw ConfigError( "unknown condition '" + std::string( r ) + "'" );
    }
    return out;
}

void ConditionSet::add( Condition c )
{
    if ( c.kind == Cond::gcun && ( c.quad.k > c.quad.m || c.quad.l > c.quad.n ) )
        throw ConfigError( "gcun parameters must satisfy k <= m and l <= n" );
    if ( c.kind != Cond::gcun )
        c.quad = {};
    _conds.insert( c );
    if ( auto f = frame_of( c.kind ) )
        _dropped.erase( *f );
}

void ConditionSet::remove( Cond c )
{
    std::erase_if( _conds, [ c ]( const Condition& x ) { return x.kind == c; } );
}

void ConditionSet::add_frame( Frame f )
{
    _frames.insert( f );
    _dropped.erase( f );
}

void ConditionSet::remove_frame( Frame f )
{
    _frames.erase( f );
    _dropped.insert( f );
}

void ConditionSet::merge( const ConditionSet& other )
{
    for ( const auto& c : other._conds )
        add( c );
    for ( auto f : other._frames )
        add_frame( f );
    for ( auto f : other._dropped )
        remove_frame( f );
}

bool ConditionSet::has( Cond c ) const
{
    return std::any_of( _conds.begin(), _conds.end(), [ c ]( const Condition& x ) { return x.kind == c; } );
}

std::vector<Quad> ConditionSet::gcun() const
{
    std::vector<Quad> out;
    for ( const auto& c : _conds )
        if ( c.kind == Cond::gcun )
            out.push_back( c.quad );
    return out;
}

std::set<Frame> ConditionSet::frames() const
{
    std::set<Frame> out = _frames;
    for ( const auto& c : _conds )
        if ( auto f = frame_of( c.kind ) )
            out.insert( *f );
    for ( auto f : _dropped )
        out.erase( f );
    return out;
}

bool ConditionSet::demodalizing() const
{
    for ( const auto& c : _conds )
    {
        switch ( c.kind )
        {
        case Cond::demR:
        case Cond::demL:
        case Cond::demE:
        case Cond::d1_d:
        case Cond::d2_d:
        case Cond::k1_d:
        case Cond::k2_d:
        case Cond::t_d:
        case Cond::d_d:
        case Cond::b_d:
        case Cond::iv_d:
        case Cond::v_d: return true;
        default: break;
        }
    }
    return false;
}

std::size_t ConditionSet::padding_depth() const
{
    std::size_t depth = 0;
    for ( const auto& q : gcun() )
        depth = std::max<std::size_t>( { depth, q.m, q.n, 2 * q.m - q.k, 2 * q.n - q.l } );
    return depth;
}

std::string ConditionSet::to_string() const
{
    std::string out;
    auto append = [ &out ]( const std::string& s ) {
        if ( !out.empty() )
            out += ',';
        out += s;
    };
    for ( const auto& c : _conds )
        append( c.name() );
    for ( auto f : _frames )
        append( frame_name( f ) );
    for ( auto f : _dropped )
        append( "!" + frame_name( f ) );
    return out;
}

// ---------------------------------------------------------------------------

namespace
{

Formula N( const Formula& f ) { return Formula::negation( f ); }
Formula Ar( const Formula& a, const Formula& b ) { return Formula::arrow( a, b ); }
Formula Bx( const Formula& f ) { return Formula::box( f ); }
Formula Di( const Formula& f ) { return Formula::diamond( f ); }

class Checker
{
public:
    Checker( const Relation& r, const ClosureSet& c, const Condition& cond )
            : _r{ r }, _c{ c }, _name{ cond.name() }
    {
    }

    std::vector<Violation> run( const Condition& cond );

private:
    bool in( const Formula& f ) const { return _c.contains( f ); }
    bool has( const Formula& a, const Formula& b ) const { return _r.contains( { a, b } ); }

    void require( const Formula& a, const Formula& b, std::vector<FormulaPair> premises = {},
                  std::vector<FormulaPair> absent = {} )
    {
        if ( has( a, b ) )
            return;
        report( { a, b }, true, std::move( premises ), std::move( absent ) );
    }

    void forbid( const Formula& a, const Formula& b, std::vector<FormulaPair> premises = {},
                 std::vector<FormulaPair> absent = {} )
    {
        if ( !has( a, b ) )
            return;
        report( { a, b }, false, std::move( premises ), std::move( absent ) );
    }

    void report( FormulaPair pair, bool required, std::vector<FormulaPair> premises, std::vector<FormulaPair> absent )
    {
        Violation v;
        v.condition = _name;
        v.reason = _name + ( required ? " requires R" : " forbids R" ) + to_string( pair );
        if ( !premises.empty() || !absent.empty() )
        {
            v.reason += " since";
            for ( const auto& p : premises )
                v.reason += " R" + to_string( p );
            for ( const auto& p : absent )
                v.reason += " ~R" + to_string( p );
        }
        v.pair = std::move( pair );
        v.required = required;
        v.premises = std::move( premises );
        v.absent = std::move( absent );
        _out.push_back( std::move( v ) );
    }

    // Pairs of the relation that lie inside the carrier.
    std::vector<FormulaPair> pairs() const
    {
        std::vector<FormulaPair> out;
        for ( const auto& p : _r )
            if ( in( p.first ) && in( p.second ) )
                out.push_back( p );
        return out;
    }

    void reflexive_on( bool ( *pick )( const Formula& ) )
    {
        for ( const auto& f : _c )
            if ( pick( f ) )
                require( f, f );
    }

    const Relation& _r;
    const ClosureSet& _c;
    std::string _name;
    std::vector<Violation> _out;
};

std::vector<Violation> Checker::run( const Condition& cond )
{
    switch ( cond.kind )
    {
    case Cond::a1:
        for ( const auto& [ a, b ] : pairs() )
            if ( b == N( a ) )
                forbid( a, b );
        break;
    case Cond::a2:
        for ( const auto& [ a, b ] : pairs() )
            if ( a == N( b ) )
                forbid( a, b );
        break;
    case Cond::b0:
        for ( const auto& [ a, b ] : pairs() )
            if ( in( N( b ) ) )
                forbid( a, N( b ), { { a, b } } );
        break;
    case Cond::b0p:
        for ( const auto& [ a, b ] : pairs() )
            if ( in( N( a ) ) )
                forbid( N( a ), b, { { a, b } } );
        break;
    case Cond::b1:
        for ( const auto& f : _c )
            if ( f.is( Op::arrow ) )
            {
                Formula target = N( Ar( f.left(), N( f.right() ) ) );
                if ( in( target ) )
                    require( f, target );
            }
        break;
    case Cond::b2:
        for ( const auto& f : _c )
            if ( f.is( Op::arrow ) && f.right().is( Op::neg ) )
            {
                Formula target = N( Ar( f.left(), f.right().operand() ) );
                if ( in( target ) )
                    require( f, target );
            }
        break;
    case Cond::b1p:
        for ( const auto& f : _c )
            if ( f.is( Op::arrow ) )
            {
                Formula target = N( Ar( N( f.left() ), f.right() ) );
                if ( in( target ) )
                    require( f, target );
            }
        break;
    case Cond::b2p:
        for ( const auto& f : _c )
            if ( f.is( Op::arrow ) && f.left().is( Op::neg ) )
            {
                Formula target = N( Ar( f.left().operand(), f.right() ) );
                if ( in( target ) )
                    require( f, target );
            }
        break;
    case Cond::cun:
        for ( const auto& [ a, b ] : pairs() )
            if ( in( N( a ) ) && in( N( b ) ) )
                require( N( a ), N( b ), { { a, b } } );
        break;
    case Cond::gcun:
    {
        const Quad& q = cond.quad;
        for ( const auto& [ a, b ] : pairs() )
        {
            if ( strip_negations( a ).depth < q.k || strip_negations( b ).depth < q.l )
                continue;
            Formula x = apply_negations( q.m - q.k, a );
            Formula y = apply_negations( q.n - q.l, b );
            if ( in( x ) && in( y ) )
                require( x, y, { { a, b } } );
        }
        break;
    }
    case Cond::r1:
        for ( const auto& [ a, b ] : pairs() )
        {
            if ( in( N( b ) ) )
                require( a, N( b ), { { a, b } } );
            if ( b.is( Op::neg ) )
                require( a, b.operand(), { { a, b } } );
        }
        break;
    case Cond::r2:
        for ( const auto& [ a, b ] : pairs() )
        {
            if ( b.is( Op::conj ) && in( Ar( b.left(), b.right() ) ) )
                require( a, Ar( b.left(), b.right() ), { { a, b } } );
            if ( b.is( Op::arrow ) && in( Formula::conjunction( b.left(), b.right() ) ) )
                require( a, Formula::conjunction( b.left(), b.right() ), { { a, b } } );
        }
        break;
    case Cond::r3:
        for ( const auto& [ a, b ] : pairs() )
            require( b, a, { { a, b } } );
        break;
    case Cond::r4: reflexive_on( []( const Formula& ) { return true; } ); break;
    case Cond::r5:
        for ( const auto& [ a, b ] : pairs() )
            if ( b.is( Op::conj ) && !has( a, b.left() ) && !has( a, b.right() ) )
                forbid( a, b, {}, { { a, b.left() }, { a, b.right() } } );
        for ( const auto& c : _c )
        {
            if ( !c.is( Op::conj ) )
                continue;
            for ( const auto& a : _c )
            {
                if ( has( a, c.left() ) )
                    require( a, c, { { a, c.left() } } );
                else if ( has( a, c.right() ) )
                    require( a, c, { { a, c.right() } } );
            }
        }
        break;
    case Cond::demR:
    case Cond::demE:
        for ( const auto& [ a, b ] : pairs() )
        {
            Formula da = demodalize( a ), db = demodalize( b );
            if ( in( da ) && in( db ) )
                require( da, db, { { a, b } } );
        }
        if ( cond.kind == Cond::demR )
            break;
        [[fallthrough]];
    case Cond::demL:
    {
        std::map<Formula, std::vector<Formula>> preimage;
        for ( const auto& f : _c )
            preimage[ demodalize( f ) ].push_back( f );
        for ( const auto& [ x, y ] : pairs() )
        {
            auto ix = preimage.find( x ), iy = preimage.find( y );
            if ( ix == preimage.end() || iy == preimage.end() )
                continue;
            for ( const auto& a : ix->second )
                for ( const auto& b : iy->second )
                    require( a, b, { { x, y } } );
        }
        break;
    }
    case Cond::d1:
    case Cond::d2:
        for ( const auto& f : _c )
        {
            if ( !f.is( Op::diamond ) )
                continue;
            Formula dual = N( Bx( N( f.operand() ) ) );
            if ( !in( dual ) )
                continue;
            if ( cond.kind == Cond::d1 )
                require( f, dual );
            else
                require( dual, f );
        }
        break;
    case Cond::k1:
        for ( const auto& f : _c )
        {
            if ( !f.is( Op::box ) || !f.operand().is( Op::arrow ) )
                continue;
            const Formula& inner = f.operand();
            Formula target = Ar( Bx( inner.left() ), Bx( inner.right() ) );
            if ( in( target ) )
                require( f, target );
        }
        break;
    case Cond::t:
        for ( const auto& f : _c )
            if ( f.is( Op::box ) )
                require( f, f.operand() );
        break;
    case Cond::d:
        for ( const auto& f : _c )
            if ( f.is( Op::box ) && in( Di( f.operand() ) ) )
                require( f, Di( f.operand() ) );
        break;
    case Cond::b:
        for ( const auto& f : _c )
            if ( f.is( Op::box ) && f.operand().is( Op::diamond ) )
                require( f.operand().operand(), f );
        break;
    case Cond::iv:
        for ( const auto& f : _c )
            if ( f.is( Op::box ) && f.operand().is( Op::box ) )
                require( f.operand(), f );
        break;
    case Cond::v:
        for ( const auto& f : _c )
            if ( f.is( Op::box ) && f.operand().is( Op::diamond ) )
                require( f.operand(), f );
        break;
    case Cond::d1_d:
    case Cond::d2_d:
        for ( const auto& f : _c )
        {
            if ( !is_modality_free( f ) || !in( N( N( f ) ) ) )
                continue;
            if ( cond.kind == Cond::d1_d )
                require( f, N( N( f ) ) );
            else
                require( N( N( f ) ), f );
        }
        break;
    case Cond::k1_d:
        reflexive_on( []( const Formula& f ) { return is_modality_free( f ) && f.is( Op::arrow ); } );
        break;
    case Cond::t_d:
    case Cond::d_d:
    case Cond::b_d:
    case Cond::iv_d:
    case Cond::v_d: reflexive_on( []( const Formula& f ) { return is_modality_free( f ); } ); break;
    case Cond::k2:
    case Cond::k2_d: break;
    }
    return std::move( _out );
}

// Consequences of one pair under the closure-shaped conditions.
class Closer
{
public:
    Closer( const ClosureSet& carrier, const ConditionSet& conds ) : _c{ carrier }, _conds{ conds }
    {
        for ( const auto& f : carrier )
            _preimage[ demodalize( f ) ].push_back( f );
    }

    template <class Emit>
    void step( const FormulaPair& p, Emit&& emit ) const
    {
        const auto& [ a, b ] = p;
        auto offer = [ & ]( const Formula& x, const Formula& y ) {
            if ( _c.contains( x ) && _c.contains( y ) )
                emit( FormulaPair{ x, y } );
        };
        if ( _conds.has( Cond::cun ) )
            offer( N( a ), N( b ) );
        for ( const auto& q : _conds.gcun() )
            if ( strip_negations( a ).depth >= q.k && strip_negations( b ).depth >= q.l )
                offer( apply_negations( q.m - q.k, a ), apply_negations( q.n - q.l, b ) );
        if ( _conds.has( Cond::r3 ) )
            offer( b, a );
        if ( _conds.has( Cond::demR ) || _conds.has( Cond::demE ) )
            offer( demodalize( a ), demodalize( b ) );
        if ( _conds.has( Cond::demL ) || _conds.has( Cond::demE ) )
        {
            auto ia = _preimage.find( a ), ib = _preimage.find( b );
            if ( ia != _preimage.end() && ib != _preimage.end() )
                for ( const auto& x : ia->second )
                    for ( const auto& y : ib->second )
                        offer( x, y );
        }
    }

private:
    const ClosureSet& _c;
    const ConditionSet& _conds;
    std::map<Formula, std::vector<Formula>> _preimage;
};

} // namespace

std::vector<Violation> check( const Relation& relation, const ClosureSet& carrier, const Condition& cond )
{
    return Checker{ relation, carrier, cond }.run( cond );
}

Relation forced_pairs( const ClosureSet& carrier, const ConditionSet& conds )
{
    static const Relation empty;
    Relation out;
    for ( const auto& c : conds.conditions() )
        for ( const auto& v : check( empty, carrier, c ) )
            if ( v.required && v.premises.empty() && v.absent.empty() )
                out.insert( *v.pair );
    return out;
}

Relation close( const Relation& relation, const ClosureSet& carrier, const ConditionSet& conds )
{
    Closer closer{ carrier, conds };
    Relation out = relation;
    std::deque<FormulaPair> work( relation.begin(), relation.end() );
    while ( !work.empty() )
    {
        FormulaPair p = std::move( work.front() );
        work.pop_front();
        closer.step( p, [ & ]( FormulaPair q ) {
            if ( out.insert( q ).second )
                work.push_back( std::move( q ) );
        } );
    }
    return out;
}

namespace
{

// Returns a missing edge that witnesses failure of `f`, or nothing.
std::optional<WorldPair> frame_witness( const std::vector<WorldId>& worlds, const std::set<WorldPair>& access,
                                        Frame f, bool& dead_end, WorldId& dead_world )
{
    dead_end = false;
    auto has = [ & ]( const WorldId& a, const WorldId& b ) { return access.contains( { a, b } ); };
    switch ( f )
    {
    case Frame::reflexive:
        for ( const auto& w : worlds )
            if ( !has( w, w ) )
                return WorldPair{ w, w };
        break;
    case Frame::serial:
        for ( const auto& w : worlds )
            if ( std::none_of( worlds.begin(), worlds.end(), [ & ]( const WorldId& u ) { return has( w, u ); } ) )
            {
                dead_end = true;
                dead_world = w;
                return std::nullopt;
            }
        break;
    case Frame::symmetric:
        for ( const auto& [ a, b ] : access )
            if ( !has( b, a ) )
                return WorldPair{ b, a };
        break;
    case Frame::transitive:
        for ( const auto& [ a, b ] : access )
            for ( const auto& [ c, d ] : access )
                if ( b == c && !has( a, d ) )
                    return WorldPair{ a, d };
        break;
    case Frame::euclidean:
        for ( const auto& [ a, b ] : access )
            for ( const auto& [ c, d ] : access )
                if ( a == c && !has( b, d ) )
                    return WorldPair{ b, d };
        break;
    }
    return std::nullopt;
}

} // namespace

bool frame_check( const std::vector<WorldId>& worlds, const std::set<WorldPair>& access, Frame f )
{
    bool dead_end = false;
    WorldId dead;
    return !frame_witness( worlds, access, f, dead_end, dead ) && !dead_end;
}

AdmissibilityReport admissible( const RelatingModel& model, const ConditionSet& conds )
{
    AdmissibilityReport report;
    const ClosureSet& carrier = model.carrier;

    for ( const auto& w : model.worlds )
    {
        for ( const auto& [ a, b ] : model.relation( w ) )
        {
            if ( carrier.contains( a ) && carrier.contains( b ) )
                continue;
            Violation v;
            v.condition = "carrier";
            v.world = w;
            v.pair = FormulaPair{ a, b };
            v.reason = "pair " + to_string( *v.pair ) + " lies outside the carrier";
            report.violations.push_back( std::move( v ) );
        }
        for ( const auto& c : conds.conditions() )
            for ( auto& v : check( model.relation( w ), carrier, c ) )
            {
                v.world = w;
                report.violations.push_back( std::move( v ) );
            }
    }

    // k2: if A~B related at every successor then []A, []B related here.
    // k2_d: same antecedent, consequent on the demodalized pair.
    for ( Cond c : { Cond::k2, Cond::k2_d } )
    {
        if ( !conds.has( c ) )
            continue;
        for ( const auto& w : model.worlds )
        {
            auto succ = model.successors( w );
            for ( const auto& a : carrier )
                for ( const auto& b : carrier )
                {
                    Formula x = c == Cond::k2 ? Bx( a ) : demodalize( a );
                    Formula y = c == Cond::k2 ? Bx( b ) : demodalize( b );
                    if ( !carrier.contains( x ) || !carrier.contains( y ) || model.related( w, x, y ) )
                        continue;
                    bool all = std::all_of( succ.begin(), succ.end(),
                                            [ & ]( const WorldId& u ) { return model.related( u, a, b ); } );
                    if ( !all )
                        continue;
                    Violation v;
                    v.condition = Condition{ c }.name();
                    v.world = w;
                    v.pair = FormulaPair{ x, y };
                    v.required = true;
                    v.reason = v.condition + " requires R" + to_string( *v.pair ) + " since every successor relates "
                               + to_string( FormulaPair{ a, b } );
                    report.violations.push_back( std::move( v ) );
                }
        }
    }

    for ( auto f : conds.frames() )
    {
        bool dead_end = false;
        WorldId dead;
        auto edge = frame_witness( model.worlds, model.access, f, dead_end, dead );
        if ( !edge && !dead_end )
            continue;
        Violation v;
        v.condition = frame_name( f );
        if ( edge )
        {
            v.edge = edge;
            v.required = true;
            v.reason = "frame is not " + frame_name( f ) + ": missing edge (" + edge->first + ", " + edge->second + ")";
        }
        else
        {
            v.world = dead;
            v.reason = "frame is not serial: world " + dead + " has no successor";
        }
        report.violations.push_back( std::move( v ) );
    }

    report.admissible = report.violations.empty();
    return report;
}

} // namespace bclkit
