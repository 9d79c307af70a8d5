#include "bclkit/schema.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

namespace bclkit
{

namespace
{

using K = Template::Kind;

Template M( std::string name ) { return { K::meta, std::move( name ), {} }; }
Template D( std::string name ) { return { K::dmeta, std::move( name ), {} }; }
Template un( K k, Template a ) { return { k, {}, { std::move( a ) } }; }
Template bin( K k, Template a, Template b ) { return { k, {}, { std::move( a ), std::move( b ) } }; }

Template N( Template a ) { return un( K::neg, std::move( a ) ); }
Template Bx( Template a ) { return un( K::box, std::move( a ) ); }
Template Di( Template a ) { return un( K::diamond, std::move( a ) ); }
Template And( Template a, Template b ) { return bin( K::conj, std::move( a ), std::move( b ) ); }
Template Or( Template a, Template b ) { return bin( K::disj, std::move( a ), std::move( b ) ); }
Template Ar( Template a, Template b ) { return bin( K::arrow, std::move( a ), std::move( b ) ); }
// sugar, stored desugared
Template Imp( Template a, Template b ) { return Or( N( std::move( a ) ), std::move( b ) ); }
Template Eqv( Template a, Template b ) { return And( Imp( a, b ), Imp( b, a ) ); }

Template Ns( unsigned k, Template a )
{
    for ( unsigned i = 0; i < k; ++i )
        a = N( std::move( a ) );
    return a;
}

AxiomSchema schema( std::string name, Template t ) { return { std::move( name ), std::move( t ), std::nullopt }; }

const Template A = M( "A" ), B = M( "B" ), dA = D( "A" ), dB = D( "B" );

std::vector<AxiomSchema> bcl_axioms()
{
    return {
        schema( "A1", N( Ar( A, N( A ) ) ) ),
        schema( "A2", N( Ar( N( A ), A ) ) ),
        schema( "B1", Ar( Ar( A, B ), N( Ar( A, N( B ) ) ) ) ),
        schema( "B2", Ar( Ar( A, N( B ) ), N( Ar( A, B ) ) ) ),
        schema( "Imp", Imp( Ar( A, B ), Imp( A, B ) ) ),
    };
}

std::vector<AxiomSchema> cun_axioms()
{
    return {
        schema( "CUN1", Imp( Ar( A, B ), Or( Ar( N( A ), N( B ) ), And( N( A ), B ) ) ) ),
        schema( "CUN2", Imp( Ar( A, B ), Ar( N( N( A ) ), N( N( B ) ) ) ) ),
    };
}

std::vector<AxiomSchema> gcun_axioms( Quad q )
{
    AxiomSchema g1 = schema( "GCUN", Imp( Ar( Ns( q.k, A ), Ns( q.l, B ) ),
                                          Or( Ar( Ns( q.m, A ), Ns( q.n, B ) ), And( Ns( q.m, A ), Ns( q.n + 1, B ) ) ) ) );
    AxiomSchema g2 = schema( "GCUN2", Imp( Ar( Ns( q.k, A ), Ns( q.l, B ) ),
                                           Ar( Ns( 2 * q.m - q.k, A ), Ns( 2 * q.n - q.l, B ) ) ) );
    g1.params = q;
    g2.params = q;
    return { g1, g2 };
}

std::vector<AxiomSchema> mbcl_axioms()
{
    return {
        schema( "Dual", Eqv( Di( A ), N( Bx( N( A ) ) ) ) ),
        schema( "K\xE2\x8A\x83", Imp( Bx( Imp( A, B ) ), Imp( Bx( A ), Bx( B ) ) ) ),
    };
}

Template cudr_body() { return Imp( Ar( A, B ), Or( Ar( dA, dB ), And( dA, N( dB ) ) ) ); }
Template cudl_body() { return Imp( Ar( dA, dB ), Or( Ar( A, B ), And( A, N( B ) ) ) ); }

AxiomSchema modal_axiom( const std::string& x )
{
    if ( x == "D1" )
        return schema( x, Ar( Di( A ), N( Bx( N( A ) ) ) ) );
    if ( x == "D2" )
        return schema( x, Ar( N( Bx( N( A ) ) ), Di( A ) ) );
    if ( x == "K" )
        return schema( x, Ar( Bx( Ar( A, B ) ), Ar( Bx( A ), Bx( B ) ) ) );
    if ( x == "T" )
        return schema( x, Ar( Bx( A ), A ) );
    if ( x == "D" )
        return schema( x, Ar( Bx( A ), Di( A ) ) );
    if ( x == "B" )
        return schema( x, Ar( A, Bx( Di( A ) ) ) );
    if ( x == "4" )
        return schema( x, Ar( Bx( A ), Bx( Bx( A ) ) ) );
    if ( x == "5" )
        return schema( x, Ar( Di( A ), Bx( Di( A ) ) ) );
    throw ConfigError( "unknown modal axiom '" + x + "'" );
}

std::vector<Cond> modal_conditions( const std::string& x )
{
    if ( x == "D1" )
        return { Cond::d1 };
    if ( x == "D2" )
        return { Cond::d2 };
    if ( x == "K" )
        return { Cond::k1, Cond::k2 };
    if ( x == "T" )
        return { Cond::t };
    if ( x == "D" )
        return { Cond::d };
    if ( x == "B" )
        return { Cond::b };
    if ( x == "4" )
        return { Cond::iv };
    return { Cond::v };
}

// ---------------------------------------------------------------------------

bool kind_matches( K k, Op op )
{
    switch ( k )
    {
    case K::neg: return op == Op::neg;
    case K::conj: return op == Op::conj;
    case K::disj: return op == Op::disj;
    case K::arrow: return op == Op::arrow;
    case K::box: return op == Op::box;
    case K::diamond: return op == Op::diamond;
    default: return false;
    }
}

struct Matcher
{
    std::map<std::string, Formula> metas;
    std::vector<std::pair<std::string, Formula>> demod;   // d(X) must equal the formula

    bool run( const Template& t, const Formula& f )
    {
        switch ( t.kind )
        {
        case K::meta:
        {
            auto [ it, fresh ] = metas.emplace( t.meta, f );
            return fresh || it->second == f;
        }
        case K::dmeta: demod.emplace_back( t.meta, f ); return true;
        default: break;
        }
        if ( !kind_matches( t.kind, f.op() ) )
            return false;
        if ( t.kids.size() == 1 )
            return run( t.kids[ 0 ], f.operand() );
        return run( t.kids[ 0 ], f.left() ) && run( t.kids[ 1 ], f.right() );
    }
};

Formula build( const Template& t, const std::map<std::string, Formula>& metas )
{
    auto lookup = [ & ]( const std::string& m ) -> const Formula& {
        auto it = metas.find( m );
        if ( it == metas.end() )
            throw std::invalid_argument( "metavariable " + m + " is unbound" );
        return it->second;
    };
    switch ( t.kind )
    {
    case K::meta: return lookup( t.meta );
    case K::dmeta: return demodalize( lookup( t.meta ) );
    case K::neg: return Formula::negation( build( t.kids[ 0 ], metas ) );
    case K::box: return Formula::box( build( t.kids[ 0 ], metas ) );
    case K::diamond: return Formula::diamond( build( t.kids[ 0 ], metas ) );
    case K::conj: return Formula::conjunction( build( t.kids[ 0 ], metas ), build( t.kids[ 1 ], metas ) );
    case K::disj: return Formula::disjunction( build( t.kids[ 0 ], metas ), build( t.kids[ 1 ], metas ) );
    case K::arrow: return Formula::arrow( build( t.kids[ 0 ], metas ), build( t.kids[ 1 ], metas ) );
    }
    throw std::logic_error( "bad template" );
}

void collect_metas( const Template& t, std::set<std::string>& out )
{
    if ( t.kind == K::meta || t.kind == K::dmeta )
        out.insert( t.meta );
    for ( const auto& k : t.kids )
        collect_metas( k, out );
}

int precedence( K k )
{
    switch ( k )
    {
    case K::conj: return 3;
    case K::disj: return 2;
    case K::arrow: return 1;
    default: return 4;
    }
}

} // namespace

std::string Template::text() const
{
    auto wrap = [ & ]( const Template& t, bool parens ) { return parens ? "(" + t.text() + ")" : t.text(); };
    switch ( kind )
    {
    case K::meta: return meta;
    case K::dmeta: return "d(" + meta + ")";
    case K::neg: return "~" + wrap( kids[ 0 ], precedence( kids[ 0 ].kind ) < 4 );
    case K::box: return "[]" + wrap( kids[ 0 ], precedence( kids[ 0 ].kind ) < 4 );
    case K::diamond: return "<>" + wrap( kids[ 0 ], precedence( kids[ 0 ].kind ) < 4 );
    case K::conj:
        return wrap( kids[ 0 ], precedence( kids[ 0 ].kind ) < 3 ) + " & "
               + wrap( kids[ 1 ], precedence( kids[ 1 ].kind ) <= 3 );
    case K::disj:
        return wrap( kids[ 0 ], precedence( kids[ 0 ].kind ) < 2 ) + " | "
               + wrap( kids[ 1 ], precedence( kids[ 1 ].kind ) <= 2 );
    case K::arrow:
        return wrap( kids[ 0 ], precedence( kids[ 0 ].kind ) <= 1 ) + " -> "
               + wrap( kids[ 1 ], precedence( kids[ 1 ].kind ) < 1 );
    }
    return {};
}

std::optional<Bindings> match_schema( const Formula& f, const AxiomSchema& schema )
{
    Matcher m;
    if ( !m.run( schema.tpl, f ) )
        return std::nullopt;
    for ( const auto& [ meta, target ] : m.demod )
    {
        auto it = m.metas.find( meta );
        if ( it == m.metas.end() || demodalize( it->second ) != target )
            return std::nullopt;
    }
    return Bindings{ std::move( m.metas ), schema.params };
}

Formula instantiate( const AxiomSchema& schema, const std::map<std::string, Formula>& metas )
{
    return build( schema.tpl, metas );
}

std::vector<std::string> metavariables( const AxiomSchema& schema )
{
    std::set<std::string> out;
    collect_metas( schema.tpl, out );
    return { out.begin(), out.end() };
}

const AxiomSchema* Calculus::find( const std::string& name ) const
{
    std::string key = name == "Kimp" ? "K\xE2\x8A\x83" : name;
    for ( const auto& a : axioms )
        if ( a.name == key )
            return &a;
    return nullptr;
}

namespace
{

std::vector<std::string> split_items( const std::string& text )
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while ( true )
    {
        auto pos = text.find( ',', start );
        out.push_back( text.substr( start, pos - start ) );
        if ( pos == std::string::npos )
            break;
        start = pos + 1;
    }
    return out;
}

unsigned natural( const std::string& s )
{
    unsigned v = 0;
    auto [ ptr, ec ] = std::from_chars( s.data(), s.data() + s.size(), v );
    if ( s.empty() || ec != std::errc{} || ptr != s.data() + s.size() )
        throw ConfigError( "gcun parameter '" + s + "' is not a natural number" );
    return v;
}

void add_unique( std::vector<AxiomSchema>& axioms, std::vector<AxiomSchema> more )
{
    for ( auto& a : more )
        if ( std::none_of( axioms.begin(), axioms.end(), [ & ]( const AxiomSchema& x ) { return x.name == a.name; } ) )
            axioms.push_back( std::move( a ) );
}

} // namespace

Logic logic( const std::string& name )
{
    Logic out;
    out.name = name;
    std::string base = name.substr( 0, name.find( '+' ) );
    if ( base != "BCL" && base != "MBCL" )
        throw ConfigError( "unknown logic '" + name + "'" );
    out.modal = base == "MBCL";
    out.conditions = ConditionSet::parse( "a1,a2,b0,b1,b2" );
    out.calculus.name = name;
    out.calculus.axioms = bcl_axioms();
    if ( out.modal )
    {
        add_unique( out.calculus.axioms, mbcl_axioms() );
        out.calculus.necessitation = true;
    }
    if ( name.size() == base.size() )
        return out;

    std::string rest = name.substr( base.size() + 1 );
    if ( rest.empty() )
        throw ConfigError( "empty extension list in '" + name + "'" );
    auto items = split_items( rest );
    bool gcun_added = false;
    for ( std::size_t i = 0; i < items.size(); ++i )
    {
        const std::string& item = items[ i ];
        auto add_cun = [ & ] {
            out.conditions.add( Cond::cun );
            add_unique( out.calculus.axioms, cun_axioms() );
        };
        if ( item == "cun" )
            add_cun();
        else if ( item.starts_with( "gcun:" ) )
        {
            if ( gcun_added )
                throw ConfigError( "one gcun quadruple per logic" );
            if ( i + 3 >= items.size() )
                throw ConfigError( "gcun needs four parameters k,l,m,n" );
            Quad q{ natural( item.substr( 5 ) ), natural( items[ i + 1 ] ), natural( items[ i + 2 ] ),
                    natural( items[ i + 3 ] ) };
            i += 3;
            if ( q.k > q.m || q.l > q.n )
                throw ConfigError( "gcun calculi need k <= m and l <= n" );
            if ( q.k % 2 != 0 || q.l % 2 != 0 )
                throw ConfigError( "gcun calculi need k and l even" );
            add_cun();
            out.conditions.add( Condition{ Cond::gcun, q } );
            add_unique( out.calculus.axioms, gcun_axioms( q ) );
            gcun_added = true;
        }
        else if ( item == "CUDR" || item == "CUDL" || item == "CUDE" )
        {
            if ( !out.modal )
                throw ConfigError( item + " extends MBCL only" );
            Cond c = item == "CUDR" ? Cond::demR : item == "CUDL" ? Cond::demL : Cond::demE;
            out.conditions.add( c );
            // CUDE is the conjunction of the two one-directional schemata
            Template t = item == "CUDR" ? cudr_body() : item == "CUDL" ? cudl_body() : And( cudr_body(), cudl_body() );
            add_unique( out.calculus.axioms, { schema( item, t ) } );
        }
        else if ( item == "D1" || item == "D2" || item == "K" || item == "T" || item == "D" || item == "B"
                  || item == "4" || item == "5" )
        {
            if ( !out.modal )
                throw ConfigError( "modal axiom " + item + " extends MBCL only" );
            for ( Cond c : modal_conditions( item ) )
                out.conditions.add( c );
            add_unique( out.calculus.axioms, { modal_axiom( item ) } );
        }
        else
            throw ConfigError( "unknown extension '" + item + "' in '" + name + "'" );
    }
    return out;
}

Calculus calculus( const std::string& name ) { return logic( name ).calculus; }

std::vector<std::string> sample_logic_names()
{
    return { "BCL",         "BCL+cun",   "BCL+gcun:0,0,1,1", "BCL+gcun:0,2,1,3", "MBCL",
             "MBCL+D1,D2",  "MBCL+K",    "MBCL+T",           "MBCL+D",           "MBCL+B",
             "MBCL+4",      "MBCL+5",    "MBCL+gcun:2,0,2,1", "MBCL+CUDR",       "MBCL+CUDL",
             "MBCL+CUDE" };
}

} // namespace bclkit
