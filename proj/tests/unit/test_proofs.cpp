#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bclkit/decision.hpp"
#include "bclkit/parser.hpp"
#include "bclkit/proof.hpp"
#include "bclkit/sampling.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace bclkit;

namespace
{

Formula P( const char* s ) { return parse( s ); }

Proof proof( const std::string& calc, std::vector<std::pair<const char*, Justification>> steps )
{
    Proof out{ calc, {} };
    for ( auto& [ f, why ] : steps )
        out.steps.push_back( { parse( f ), why } );
    return out;
}

Justification ax( const char* name ) { return { Justification::Kind::axiom, name, std::nullopt, 0, 0 }; }
Justification cpl() { return { Justification::Kind::cpl, {}, std::nullopt, 0, 0 }; }
Justification ds( std::size_t i, std::size_t j ) { return { Justification::Kind::ds, {}, std::nullopt, i, j }; }
Justification nec( std::size_t i ) { return { Justification::Kind::nec, {}, std::nullopt, i, 0 }; }

// Own instantiation, independent of the library's.
std::optional<Formula> build( const Template& t, const std::map<std::string, Formula>& metas )
{
    using K = Template::Kind;
    auto kid = [ & ]( std::size_t i ) { return build( t.kids[ i ], metas ); };
    switch ( t.kind )
    {
    case K::meta:
    case K::dmeta:
    {
        auto it = metas.find( t.meta );
        if ( it == metas.end() )
            return std::nullopt;
        return t.kind == K::meta ? it->second : demodalize( it->second );
    }
    case K::neg:
    case K::box:
    case K::diamond:
    {
        auto a = kid( 0 );
        if ( !a )
            return std::nullopt;
        return t.kind == K::neg ? Formula::negation( *a ) : t.kind == K::box ? Formula::box( *a ) : Formula::diamond( *a );
    }
    default:
    {
        auto a = kid( 0 ), b = kid( 1 );
        if ( !a || !b )
            return std::nullopt;
        if ( t.kind == K::conj )
            return Formula::conjunction( *a, *b );
        if ( t.kind == K::disj )
            return Formula::disjunction( *a, *b );
        return Formula::arrow( *a, *b );
    }
    }
}

void subformulas( const Formula& f, std::vector<Formula>& out )
{
    out.push_back( f );
    if ( f.is_unary() )
        subformulas( f.operand(), out );
    else if ( f.is_binary() )
    {
        subformulas( f.left(), out );
        subformulas( f.right(), out );
    }
}

// Tries every assignment of subformulas of f to the metavariables.
bool brute_match( const Formula& f, const AxiomSchema& schema )
{
    std::vector<Formula> subs;
    subformulas( f, subs );
    auto metas = metavariables( schema );
    std::vector<std::size_t> pick( metas.size(), 0 );
    while ( true )
    {
        std::map<std::string, Formula> b;
        for ( std::size_t i = 0; i < metas.size(); ++i )
            b.emplace( metas[ i ], subs[ pick[ i ] ] );
        auto g = build( schema.tpl, b );
        if ( g && *g == f )
            return true;
        std::size_t i = 0;
        while ( i < pick.size() && ++pick[ i ] == subs.size() )
            pick[ i++ ] = 0;
        if ( i == pick.size() )
            return false;
    }
}

// Tautology by labelling every subformula: Boolean connectives must be
// respected, everything else is free.
bool labelling_tautology( const Formula& f )
{
    ClosureSet c = subformula_closure( { f } );
    std::size_t n = c.size();
    REQUIRE( n <= 22 );
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << n ); ++bits )
    {
        auto val = [ & ]( const Formula& g ) { return ( bits >> *c.index_of( g ) & 1 ) != 0; };
        bool consistent = true;
        for ( const auto& g : c )
        {
            bool expected;
            if ( g.is( Op::neg ) )
                expected = !val( g.operand() );
            else if ( g.is( Op::conj ) )
                expected = val( g.left() ) && val( g.right() );
            else if ( g.is( Op::disj ) )
                expected = val( g.left() ) || val( g.right() );
            else
                continue;
            if ( expected != val( g ) )
            {
                consistent = false;
                break;
            }
        }
        if ( consistent && !val( f ) )
            return false;
    }
    return true;
}

std::vector<Proof> corpus()
{
    std::vector<Proof> out;
    for ( const auto& entry : std::filesystem::directory_iterator( BCLKIT_DATA_DIR "/proofs" ) )
    {
        std::ifstream in( entry.path() );
        out.push_back( proof_from_json( nlohmann::json::parse( in ) ) );
    }
    return out;
}

} // namespace

TEST_CASE( "schema matching examples" )
{
    Calculus cun = calculus( "BCL+cun" );
    auto b = match_schema( P( "(p -> q) => (~~p -> ~~q)" ), *cun.find( "CUN2" ) );
    REQUIRE( b );
    CHECK( b->metas.at( "A" ) == P( "p" ) );
    CHECK( b->metas.at( "B" ) == P( "q" ) );
    auto a1 = match_schema( P( "~(p -> ~p)" ), *cun.find( "A1" ) );
    REQUIRE( a1 );
    CHECK( a1->metas.at( "A" ) == P( "p" ) );
    CHECK_FALSE( match_schema( P( "~(~p -> p)" ), *cun.find( "A1" ) ) );
    CHECK( match_schema( P( "~(~p -> p)" ), *cun.find( "A2" ) ) );
}

TEST_CASE( "d-metavariables are evaluated at match time" )
{
    Calculus cudl = calculus( "MBCL+CUDL" );
    const AxiomSchema& s = *cudl.find( "CUDL" );
    auto b = match_schema( P( "(p -> q) => ([]p -> <>q) | []p & ~<>q" ), s );
    REQUIRE( b );
    CHECK( b->metas.at( "A" ) == P( "[]p" ) );
    CHECK_FALSE( match_schema( P( "(p -> <>q) => ([]p -> <>q) | []p & ~<>q" ), s ) );
}

TEST_CASE( "match_schema agrees with brute force" )
{
    std::mt19937_64 rng( 89 );
    std::vector<std::string> vars{ "p", "q" };
    int positives = 0, compared = 0;
    for ( const auto& name : sample_logic_names() )
    {
        Calculus calc = logic( name ).calculus;
        for ( const auto& schema : calc.axioms )
        {
            for ( int i = 0; i < 40; ++i )
            {
                Formula f = random_formula( rng, vars, 3 );
                if ( i % 2 == 0 )
                {
                    std::map<std::string, Formula> b;
                    for ( const auto& m : metavariables( schema ) )
                        b.emplace( m, random_formula( rng, vars, 1 + i % 3 ) );
                    f = instantiate( schema, b );
                    CHECK( build( schema.tpl, b ) == f );
                }
                if ( f.size() > 12 && i % 2 == 1 )
                    continue;
                bool expected = brute_match( f, schema );
                auto got = match_schema( f, schema );
                CHECK_MESSAGE( got.has_value() == expected, schema.name, " on ", f.text() );
                if ( got )
                {
                    CHECK( instantiate( schema, got->metas ) == f );
                    ++positives;
                }
                ++compared;
            }
        }
    }
    CHECK( positives > compared / 3 );
}

TEST_CASE( "demodalization schemata commute with d" )
{
    std::mt19937_64 rng( 97 );
    std::vector<std::string> vars{ "p", "q" };
    for ( const char* name : { "MBCL+CUDR", "MBCL+CUDL", "MBCL+CUDE" } )
    {
        Calculus calc = calculus( name );
        const AxiomSchema& s = *calc.find( std::string( name ).substr( 5 ) );
        for ( int i = 0; i < 100; ++i )
        {
            std::map<std::string, Formula> b{ { "A", random_formula( rng, vars, 3 ) }, { "B", random_formula( rng, vars, 3 ) } };
            Formula f = instantiate( s, b );
            auto m = match_schema( f, s );
            REQUIRE( m );
            CHECK( m->metas == b );
            // every d-position holds the demodalized binding
            std::map<std::string, Formula> flat{ { "A", demodalize( b.at( "A" ) ) }, { "B", demodalize( b.at( "B" ) ) } };
            CHECK( build( s.tpl, b ) == f );
            CHECK( demodalize( f ) == demodalize( instantiate( s, flat ) ) );
        }
    }
}

TEST_CASE( "CPL instances" )
{
    CHECK( is_cpl_instance( P( "(p -> q) | ~(p -> q)" ) ) );
    CHECK_FALSE( is_cpl_instance( P( "~(p -> ~p)" ) ) );
    CHECK( is_cpl_instance( P( "p => (q => p)" ) ) );
    CHECK( is_cpl_instance( P( "[]p | ~[]p" ) ) );
    CHECK_FALSE( is_cpl_instance( P( "[]p => p" ) ) );
    CHECK_FALSE( is_cpl_instance( P( "(p -> q) => (p => q)" ) ) );
}

TEST_CASE( "CPL agrees with the labelling oracle" )
{
    std::mt19937_64 rng( 101 );
    std::vector<std::string> vars{ "p", "q" };
    std::vector<Formula> corpus_formulas;
    // tautology shapes over random parts, plus random formulas
    for ( int i = 0; i < 25; ++i )
    {
        Formula a = random_formula( rng, vars, 2 ), b = random_formula( rng, vars, 2 );
        switch ( i % 5 )
        {
        case 0: corpus_formulas.push_back( Formula::disjunction( a, Formula::negation( a ) ) ); break;
        case 1: corpus_formulas.push_back( Formula::material( a, Formula::material( b, a ) ) ); break;
        case 2: corpus_formulas.push_back( Formula::material( Formula::conjunction( a, b ), b ) ); break;
        case 3: corpus_formulas.push_back( Formula::material( a, Formula::conjunction( a, b ) ) ); break;
        default: corpus_formulas.push_back( Formula::equivalence( Formula::negation( Formula::conjunction( a, b ) ),
                                                                  Formula::disjunction( Formula::negation( a ), Formula::negation( b ) ) ) );
        }
    }
    while ( corpus_formulas.size() < 50 )
        corpus_formulas.push_back( random_formula( rng, vars, 3 ) );
    int tautologies = 0;
    for ( const auto& f : corpus_formulas )
    {
        bool expected = labelling_tautology( f );
        tautologies += expected;
        CHECK_MESSAGE( is_cpl_instance( f ) == expected, f.text() );
    }
    CHECK( tautologies >= 20 );
}

TEST_CASE( "CPL budget" )
{
    Formula f = P( "p0" );
    for ( int i = 1; i <= 21; ++i )
        f = Formula::disjunction( f, Formula::variable( "p" + std::to_string( i ) ) );
    CHECK_THROWS_AS( (void)is_cpl_instance( f ), BudgetError );
}

TEST_CASE( "verify examples" )
{
    CHECK( verify( proof( "BCL", { { "~(p -> ~p)", ax( "A1" ) } } ) ).ok );
    CHECK( verify( proof( "BCL", { { "~(p -> ~p)", ax( "A1" ) },
                                   { "~(p -> ~p) => (~(p -> ~p) | q)", cpl() },
                                   { "~(p -> ~p) | q", ds( 1, 2 ) } } ) )
                   .ok );
    VerifyResult bad = verify( proof( "BCL", { { "~(p -> q)", ax( "A1" ) } } ) );
    CHECK_FALSE( bad.ok );
    CHECK( bad.step == 1 );
    CHECK( bad.reason == "no A1 bindings" );
}

TEST_CASE( "verify rejections" )
{
    auto rejected_at = []( const Proof& p ) {
        VerifyResult r = verify( p );
        return r.ok ? std::size_t{ 0 } : r.step;
    };
    CHECK( rejected_at( proof( "BCL", { { "p | ~p", cpl() }, { "[](p | ~p)", nec( 1 ) } } ) ) == 2 );
    CHECK( rejected_at( proof( "MBCL", { { "p | ~p", cpl() }, { "[](p | ~p)", nec( 1 ) } } ) ) == 0 );
    CHECK( rejected_at( proof( "MBCL", { { "p | ~p", cpl() }, { "[](p & ~p)", nec( 1 ) } } ) ) == 2 );
    CHECK( rejected_at( proof( "MBCL", { { "[](p | ~p)", nec( 1 ) } } ) ) == 1 );
    CHECK( rejected_at( proof( "BCL", { { "~(p -> ~p)", ax( "A1" ) },
                                        { "~(p -> ~p) | q", ds( 1, 3 ) },
                                        { "~(p -> ~p) => (~(p -> ~p) | q)", cpl() } } ) )
           == 2 );
    CHECK( rejected_at( proof( "BCL", { { "~(p -> ~p)", ax( "A1" ) },
                                        { "~(p -> ~p) => (~(p -> ~p) | q)", cpl() },
                                        { "~(p -> ~p) | q", ds( 2, 1 ) } } ) )
           == 3 );
    CHECK( rejected_at( proof( "BCL", { { "[]p -> p", ax( "T" ) } } ) ) == 1 );
    CHECK( rejected_at( proof( "BCL", { { "p => q", cpl() } } ) ) == 1 );
    VerifyResult unknown = verify( proof( "XYZ", { { "p | ~p", cpl() } } ) );
    CHECK_FALSE( unknown.ok );
    CHECK( unknown.step == 0 );

    Justification wrong = ax( "B1" );
    wrong.bindings = std::map<std::string, Formula>{ { "A", P( "q" ) }, { "B", P( "q" ) } };
    CHECK( rejected_at( proof( "BCL", { { "(p -> q) -> ~(p -> ~q)", wrong } } ) ) == 1 );
    Justification unbound = ax( "B1" );
    unbound.bindings = std::map<std::string, Formula>{ { "A", P( "p" ) } };
    CHECK( rejected_at( proof( "BCL", { { "(p -> q) -> ~(p -> ~q)", unbound } } ) ) == 1 );
}

TEST_CASE( "calculus registry" )
{
    auto names = []( const Calculus& c ) {
        std::set<std::string> out;
        for ( const auto& a : c.axioms )
            out.insert( a.name );
        return out;
    };
    CHECK( names( calculus( "BCL" ) ) == std::set<std::string>{ "A1", "A2", "B1", "B2", "Imp" } );
    CHECK_FALSE( calculus( "BCL" ).necessitation );
    CHECK( names( calculus( "BCL+cun" ) ) == std::set<std::string>{ "A1", "A2", "B1", "B2", "Imp", "CUN1", "CUN2" } );
    auto cudl = names( calculus( "MBCL+CUDL" ) );
    CHECK( cudl == std::set<std::string>{ "A1", "A2", "B1", "B2", "Imp", "Dual", "K\xE2\x8A\x83", "CUDL" } );
    CHECK( calculus( "MBCL" ).necessitation );
    CHECK( calculus( "MBCL+T,4" ).find( "4" ) );
    CHECK( logic( "MBCL+K" ).conditions.cross_world() );
    CHECK( logic( "MBCL+T" ).conditions.frames() == std::set<Frame>{ Frame::reflexive } );
    CHECK_THROWS_AS( calculus( "CL" ), ConfigError );
    CHECK_THROWS_AS( calculus( "BCL+T" ), ConfigError );
    CHECK_THROWS_AS( calculus( "BCL+gcun:1,0,1,0" ), ConfigError );
    CHECK_THROWS_AS( calculus( "BCL+gcun:2,0,1,0" ), ConfigError );
    CHECK_THROWS_AS( calculus( "MBCL+X" ), ConfigError );
}

TEST_CASE( "proof JSON round trip" )
{
    for ( const auto& p : corpus() )
    {
        Proof back = proof_from_json( nlohmann::json::parse( proof_to_json( p ).dump() ) );
        REQUIRE( back.steps.size() == p.steps.size() );
        for ( std::size_t i = 0; i < p.steps.size(); ++i )
            CHECK( back.steps[ i ].formula == p.steps[ i ].formula );
        CHECK( verify( back ).ok == verify( p ).ok );
    }
    CHECK_THROWS_AS( proof_from_json( nlohmann::json::parse( R"({"steps":[]})" ) ), ProofFormatError );
    CHECK_THROWS_AS( proof_from_json( nlohmann::json::parse( R"({"calculus":"BCL","steps":[{"formula":"p","rule":{"ds":[0,1]}}]})" ) ),
                     ProofFormatError );
}

TEST_CASE( "corpus theorems are semantically valid" )
{
    auto proofs = corpus();
    CHECK( proofs.size() >= 10 );
    for ( const auto& p : proofs )
    {
        REQUIRE_MESSAGE( verify( p ).ok, p.calculus );
        ConditionSet conds = logic( p.calculus ).conditions;
        for ( const auto& s : p.steps )
            CHECK_MESSAGE( decide( s.formula, conds ).kind != VerdictKind::countermodel, s.formula.text(), " in ",
                           p.calculus );
    }
}
