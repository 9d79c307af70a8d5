#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bclkit/closure.hpp"
#include "bclkit/parser.hpp"
#include "bclkit/sampling.hpp"

#include <random>

using namespace bclkit;

namespace
{

Formula P( const char* s ) { return parse( s ); }
const Formula p = Formula::variable( "p" );
const Formula q = Formula::variable( "q" );

std::set<std::string> texts( const ClosureSet& c )
{
    std::set<std::string> out;
    for ( const auto& f : c )
        out.insert( f.text() );
    return out;
}

} // namespace

TEST_CASE( "parse builds the expected trees" )
{
    CHECK( P( "~(p -> ~p)" ) == Formula::negation( Formula::arrow( p, Formula::negation( p ) ) ) );
    CHECK( P( "p => q" ) == Formula::disjunction( Formula::negation( p ), q ) );
    CHECK( P( "[]p -> <>p" ) == Formula::arrow( Formula::box( p ), Formula::diamond( p ) ) );
    CHECK( P( "p <=> q" ) == P( "(p => q) & (q => p)" ) );
}

TEST_CASE( "binding strength and associativity" )
{
    CHECK( P( "p -> q -> r" ) == P( "p -> (q -> r)" ) );
    CHECK( P( "p & q | r" ) == P( "(p & q) | r" ) );
    CHECK( P( "p | q -> r" ) == P( "(p | q) -> r" ) );
    CHECK( P( "~[]p" ) == Formula::negation( Formula::box( p ) ) );
    CHECK( P( "p & q & r" ) == P( "(p & q) & r" ) );
    CHECK( P( "p => q => r" ) == P( "p => (q => r)" ) );
}

TEST_CASE( "unicode aliases" )
{
    CHECK( P( "\xC2\xAC(p \xE2\x86\x92 \xC2\xACp)" ) == P( "~(p -> ~p)" ) );
    CHECK( P( "\xE2\x96\xA1p \xE2\x8A\x83 \xE2\x97\x87p" ) == P( "[]p => <>p" ) );
    CHECK( P( "p \xE2\x88\xA7 q \xE2\x88\xA8 \xE2\x97\x8Ar" ) == P( "p & q | <>r" ) );
}

TEST_CASE( "print uses minimal parentheses" )
{
    CHECK( print( P( "~(p -> ~p)" ) ) == "~(p -> ~p)" );
    CHECK( print( P( "~p | q" ) ) == "~p | q" );
    CHECK( print( P( "[](p -> q)" ) ) == "[](p -> q)" );
    CHECK( print( P( "(p -> q) -> r" ) ) == "(p -> q) -> r" );
    CHECK( print( P( "p -> (q -> r)" ) ) == "p -> q -> r" );
    CHECK( print( P( "p & (q & r)" ) ) == "p & (q & r)" );
}

TEST_CASE( "parse errors report offset and expected tokens" )
{
    try
    {
        (void)parse( "p ->" );
        FAIL( "no error" );
    }
    catch ( const ParseError& e )
    {
        CHECK( e.offset() == 4 );
        CHECK( e.expected().contains( "identifier" ) );
        CHECK( e.expected().contains( "(" ) );
    }
    CHECK_THROWS_AS( (void)parse( "(p" ), ParseError );
    CHECK_THROWS_AS( (void)parse( "p q" ), ParseError );
    CHECK_THROWS_AS( (void)parse( "P" ), ParseError );
    CHECK_THROWS_AS( (void)parse( "" ), ParseError );
    CHECK_THROWS_AS( (void)parse( "p $ q" ), ParseError );
}

TEST_CASE( "parse(print(f)) == f on random trees" )
{
    std::mt19937_64 rng( 17 );
    std::vector<std::string> vars{ "p", "q", "r", "s1" };
    for ( int i = 0; i < 2000; ++i )
    {
        Formula f = random_formula( rng, vars, 1 + i % 8 );
        Formula g = parse( print( f ) );
        REQUIRE_MESSAGE( g == f, print( f ) );
    }
}

TEST_CASE( "subformula closure" )
{
    CHECK( texts( subformula_closure( { P( "p -> q" ) } ) ) == std::set<std::string>{ "p", "q", "p -> q" } );
    CHECK( texts( subformula_closure( { P( "[]p" ) } ) ) == std::set<std::string>{ "p", "[]p" } );
    CHECK( texts( subformula_closure( { P( "~(p -> ~p)" ) } ) )
           == std::set<std::string>{ "p", "~p", "p -> ~p", "~(p -> ~p)" } );
}

TEST_CASE( "closure is idempotent and monotone" )
{
    std::mt19937_64 rng( 5 );
    std::vector<std::string> vars{ "p", "q", "r" };
    for ( int i = 0; i < 300; ++i )
    {
        std::vector<Formula> small{ random_formula( rng, vars, 3 ) };
        std::vector<Formula> big = small;
        big.push_back( random_formula( rng, vars, 3 ) );
        ClosureSet c = subformula_closure( small );
        CHECK( subformula_closure( c.members() ) == c );
        ClosureSet d = subformula_closure( big );
        for ( const auto& f : c )
            CHECK( d.contains( f ) );
        for ( const auto& f : c )
        {
            if ( f.is_unary() )
                CHECK( c.contains( f.operand() ) );
            else if ( f.is_binary() )
            {
                CHECK( c.contains( f.left() ) );
                CHECK( c.contains( f.right() ) );
            }
        }
    }
}

TEST_CASE( "canonical order: node count then text" )
{
    ClosureSet c = subformula_closure( { P( "(q -> p) & ~p" ) } );
    for ( std::size_t i = 1; i < c.size(); ++i )
        CHECK( c[ i - 1 ] < c[ i ] );
    CHECK( c[ 0 ] == p );
    CHECK( c.index_of( q ) == std::size_t{ 1 } );
    CHECK_FALSE( c.index_of( P( "r" ) ).has_value() );
}

TEST_CASE( "negation prefixes" )
{
    auto s = strip_negations( P( "~~p" ) );
    CHECK( s.depth == 2 );
    CHECK( s.core == p );
    CHECK( apply_negations( 0, P( "p -> q" ) ) == P( "p -> q" ) );
    auto t = strip_negations( P( "~(p & q)" ) );
    CHECK( t.depth == 1 );
    CHECK( t.core == P( "p & q" ) );
    for ( std::size_t k = 0; k < 4; ++k )
        for ( std::size_t j = 0; j < 4; ++j )
            CHECK( apply_negations( k + j, q ) == apply_negations( k, apply_negations( j, q ) ) );
}

TEST_CASE( "padding adds negated cores" )
{
    ClosureSet c = pad_negations( subformula_closure( { P( "~p -> q" ) } ), 2 );
    for ( const char* s : { "~~p", "~q", "~~q", "~(~p -> q)", "~~(~p -> q)" } )
        CHECK_MESSAGE( c.contains( P( s ) ), s );
    CHECK_FALSE( c.contains( P( "~~~p" ) ) );
}

TEST_CASE( "demodalization" )
{
    CHECK( demodalize( p ) == p );
    CHECK( demodalize( P( "~[]p" ) ) == P( "~p" ) );
    CHECK( demodalize( P( "[][]p" ) ) == p );
    CHECK( demodalize( demodalize( P( "[][]p" ) ) ) == demodalize( P( "[][]p" ) ) );
    CHECK( demodalize( P( "[](p -> <>q) & ~<>r" ) ) == P( "(p -> q) & ~r" ) );

    std::mt19937_64 rng( 99 );
    std::vector<std::string> vars{ "p", "q" };
    for ( int i = 0; i < 500; ++i )
    {
        Formula f = random_formula( rng, vars, 5 );
        Formula d = demodalize( f );
        CHECK( is_modality_free( d ) );
        CHECK( demodalize( d ) == d );
        CHECK( variables( d ) == variables( f ) );
        Formula g = random_formula( rng, vars, 4, false );
        CHECK( demodalize( g ) == g );
    }
}

TEST_CASE( "demodal_extend adds demodalized images" )
{
    ClosureSet c = demodal_extend( subformula_closure( { P( "[]p -> <>q" ) } ) );
    CHECK( c.contains( P( "p -> q" ) ) );
    for ( const auto& f : c )
        CHECK( c.contains( demodalize( f ) ) );
}
