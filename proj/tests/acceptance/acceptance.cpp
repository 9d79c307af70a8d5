#include "bclkit/decision.hpp"
#include "bclkit/filtration.hpp"
#include "bclkit/model_json.hpp"
#include "bclkit/parser.hpp"
#include "bclkit/proof.hpp"
#include "bclkit/sampling.hpp"
#include "bclkit/schema.hpp"
#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace bclkit;
using nlohmann::json;

namespace
{

Formula P( const std::string& s ) { return parse( s ); }

// Collects failure notes for one criterion.
struct Outcome
{
    bool ok = true;
    std::vector<std::string> notes;

    void expect( bool cond, const std::string& what )
    {
        if ( !cond )
        {
            ok = false;
            if ( notes.size() < 5 )
                notes.push_back( what );
        }
    }
};

struct CliResult
{
    int code;
    std::string out;
};

CliResult cli( const std::vector<std::string>& args, const std::string& input = {} )
{
    std::istringstream in( input );
    std::ostringstream out, err;
    int code = cli::run( args, in, out, err );
    return { code, out.str() + err.str() };
}

json load( const std::string& path )
{
    std::ifstream in( path );
    return json::parse( in );
}

const std::string data_dir = BCLKIT_DATA_DIR;
const char* bcl_conds = "a1,a2,b0,b1,b2";

Outcome connexive_theses()
{
    Outcome o;
    ConditionSet conds = ConditionSet::parse( bcl_conds );
    for ( const char* s : { "~(p -> ~p)", "~(~p -> p)", "(p -> q) -> ~(p -> ~q)", "(p -> ~q) -> ~(p -> q)" } )
    {
        Verdict v = decide( P( s ), conds );
        o.expect( v.kind == VerdictKind::valid, std::string( s ) + " is " + verdict_name( v.kind ) );
    }
    return o;
}

Outcome missing_theorems()
{
    Outcome o;
    ConditionSet conds = ConditionSet::parse( bcl_conds );
    for ( const char* s : { "(p -> q) => (q -> p)", "p -> p", "((p -> q) & (q -> r)) => (p -> r)" } )
    {
        Verdict v = decide( P( s ), conds );
        if ( v.kind != VerdictKind::countermodel || !v.model || !v.world )
        {
            o.expect( false, std::string( s ) + " is " + verdict_name( v.kind ) );
            continue;
        }
        std::string model = model_to_json( *v.model ).dump();
        auto r = cli( { "check", "--model", "-", "--world", *v.world, "--conditions", bcl_conds, s }, model );
        o.expect( r.code == 1 && r.out.find( "fails" ) != std::string::npos
                          && r.out.find( "\nadmissible" ) != std::string::npos,
                  std::string( "check does not confirm the countermodel for " ) + s );
    }
    return o;
}

Outcome gcun_inconsistency()
{
    Outcome o;
    auto expect_zero = [ & ]( const ClosureSet& carrier, const std::string& conds ) {
        Count n = count_admissible( carrier, ConditionSet::parse( conds ) );
        o.expect( n == 0, "{" + conds + "} admits " + n.str() + " relations" );
    };
    // control: every set minus its last flag is satisfiable on the same carrier
    auto expect_some = [ & ]( const ClosureSet& carrier, const std::string& conds ) {
        Count n = count_admissible( carrier, ConditionSet::parse( conds ) );
        o.expect( n > 0, "control {" + conds + "} admits nothing" );
    };

    ConditionSet gc = ConditionSet::parse( "b0,b1,gcun:0,1,0,2" );
    ClosureSet witness = pad_negations(
            subformula_closure( { P( "(p -> q) -> ~(p -> ~q)" ), P( "~~(p -> ~q)" ) } ), gc.padding_depth() );
    expect_zero( witness, "b0,b1,gcun:0,1,0,2" );
    expect_some( witness, "b0,b1" );
    ClosureSet witness2 = pad_negations(
            subformula_closure( { P( "(p -> ~q) -> ~(p -> q)" ), P( "~~(p -> q)" ) } ), gc.padding_depth() );
    expect_zero( witness2, "b0,b2,gcun:0,1,0,2" );

    ClosureSet lit = subformula_closure( { P( "~p" ) } );
    expect_zero( lit, "a1,r1,r4" );
    expect_some( lit, "a1,r1" );
    expect_zero( lit, "a2,r1,r3,r4" );
    expect_some( lit, "a2,r1,r3" );
    ClosureSet boethius1 = subformula_closure( { P( "(p -> q) -> ~(p -> ~q)" ) } );
    expect_zero( boethius1, "b0,b1,r1" );
    expect_some( boethius1, "b0,b1" );
    ClosureSet boethius2 = subformula_closure( { P( "(p -> ~q) -> ~(p -> q)" ) } );
    expect_zero( boethius2, "b0,b2,r1" );
    expect_some( boethius2, "b0,b2" );
    return o;
}

Outcome gcun_triviality( std::mt19937_64& rng )
{
    Outcome o;
    std::vector<std::string> vars{ "p", "q" };
    int carriers = 0;
    while ( carriers < 20 )
    {
        ClosureSet c = subformula_closure( { random_formula( rng, vars, 2, carriers % 2 == 0 ) } );
        if ( c.size() > 4 )
            continue;
        ++carriers;
        for ( const char* base : { "", "a1,a2,b0,b1,b2" } )
        {
            ConditionSet without = ConditionSet::parse( base );
            Count plain = count_admissible( c, without );
            for ( unsigned k = 0; k <= 2; ++k )
            {
                ConditionSet with = without;
                with.add( Condition{ Cond::gcun, Quad{ k, k, k, k } } );
                Count n = count_admissible( c, with );
                o.expect( n == plain, "gcun:" + std::to_string( k ) + " changes the count over " + c[ c.size() - 1 ].text() );
            }
        }
    }
    return o;
}

Outcome filtration_lemma( std::mt19937_64& rng )
{
    Outcome o;
    std::vector<std::string> vars{ "p", "q", "r" };
    int models = 0;
    while ( models < 100 )
    {
        Formula root = random_formula( rng, vars, 3 );
        ClosureSet gamma = subformula_closure( { root } );
        if ( gamma.size() > 6 )
            continue;
        ClosureSet carrier = subformula_closure( { root, random_formula( rng, vars, 3 ) } );
        auto m = random_model( rng, carrier, ConditionSet::parse( bcl_conds ), vars, 1 + rng() % 4 );
        if ( !m )
            continue;
        ++models;
        Filtration f = filtrate( *m, gamma );
        o.expect( f.model.worlds.size() <= ( std::size_t{ 1 } << gamma.size() ), "filtration too large" );
        for ( const auto& w : m->worlds )
            for ( const auto& a : gamma )
                o.expect( eval( *m, w, a ) == eval( f.model, f.class_of.at( w ), a ),
                          a.text() + " changes truth at " + w );
    }
    return o;
}

Outcome demodal_equivalence( std::mt19937_64& rng )
{
    Outcome o;
    ConditionSet conds = logic( "MBCL+CUDL" ).conditions;
    ConditionSet dem = ConditionSet::parse( "demL" );
    std::vector<std::string> vars{ "p", "q" };
    int models = 0, attempts = 0;
    while ( models < 100 && attempts < 2000 )
    {
        ++attempts;
        Formula root = random_formula( rng, vars, 3 );
        ClosureSet carrier = demodal_extend( subformula_closure( { root, random_formula( rng, vars, 2 ) } ) );
        auto m = random_model( rng, carrier, conds, vars, 1 + rng() % 4 );
        if ( !m )
            continue;
        ++models;
        o.expect( admissible( *m, conds ).admissible, "sampled model is not CUDL-admissible" );
        Filtration f = filtrate( *m, subformula_closure( { root } ) );
        RelatingModel plus = demodal_complete( f.model );
        o.expect( admissible( plus, dem ).admissible, "completion violates demL" );
        for ( const auto& w : f.model.worlds )
            for ( const auto& a : f.model.carrier )
                o.expect( eval( f.model, w, a ) == eval( plus, w, a ), a.text() + " changes truth in the completion" );
    }
    o.expect( models == 100, "only " + std::to_string( models ) + " admissible models sampled" );
    return o;
}

Outcome soundness( std::mt19937_64& rng, std::string& detail )
{
    Outcome o;
    std::vector<std::string> vars{ "p", "q" };
    const int instances = 200, groups = 50, models_per_group = 50;
    std::size_t total_models = 0;
    // each group's own closure is the carrier; every gcun pair an instance needs is already a subformula
    for ( const auto& name : sample_logic_names() )
    {
        Logic lg = logic( name );
        const auto& axioms = lg.calculus.axioms;
        for ( int g = 0; g < groups; ++g )
        {
            std::vector<Formula> group;
            for ( int i = 0; i < instances / groups; ++i )
            {
                const AxiomSchema& s = axioms[ rng() % axioms.size() ];
                std::map<std::string, Formula> b;
                for ( const auto& meta : metavariables( s ) )
                    b.emplace( meta, random_formula( rng, vars, rng() % 2, lg.modal ) );
                group.push_back( instantiate( s, b ) );
            }
            ClosureSet carrier = subformula_closure( group );
            if ( lg.conditions.demodalizing() )
                carrier = demodal_extend( carrier );
            int built = 0;
            for ( int attempt = 0; built < models_per_group && attempt < 4 * models_per_group; ++attempt )
            {
                std::size_t worlds = lg.modal ? 1 + rng() % 3 : 1;
                auto m = random_model( rng, carrier, lg.conditions, vars, worlds );
                if ( !m )
                    continue;
                ++built;
                for ( const auto& f : group )
                    o.expect( holds_in_model( *m, f ), name + ": " + f.text() + " fails in a sampled model" );
            }
            total_models += built;
            o.expect( built == models_per_group, name + ": only " + std::to_string( built ) + " models sampled" );
        }
    }
    detail = std::to_string( sample_logic_names().size() ) + " calculi, " + std::to_string( total_models ) + " models";
    return o;
}

Outcome modal_reduction()
{
    Outcome o;
    Formula law = P( "[]p -> p" );
    auto kind = [ & ]( const std::string& conds ) { return decide( law, ConditionSet::parse( conds ) ).kind; };
    o.expect( kind( "t" ) == VerdictKind::valid, "[]p -> p under t" );
    o.expect( kind( "t,!reflexive" ) == VerdictKind::countermodel, "[]p -> p without reflexivity" );
    o.expect( kind( "reflexive" ) == VerdictKind::countermodel, "[]p -> p without the forced pair" );
    ConditionSet cudl = logic( "MBCL+CUDL" ).conditions;
    cudl.add( Cond::t_d );
    o.expect( decide( law, cudl ).kind == VerdictKind::valid, "[]p -> p under CUDL with t_d" );
    ConditionSet cudl_no_frame = cudl;
    cudl_no_frame.remove_frame( Frame::reflexive );
    o.expect( decide( law, cudl_no_frame ).kind == VerdictKind::countermodel, "[]p -> p under CUDL, t_d only" );
    return o;
}

Outcome independence()
{
    Outcome o;
    std::string m = data_dir + "/models/independence_m.json";
    std::string mp = data_dir + "/models/independence_m_prime.json";
    std::string rep = data_dir + "/models/replacement.json";
    auto at = [ & ]( const std::string& model, const std::string& f ) {
        return cli( { "check", "--model", model, "--world", "w", f } ).code;
    };
    for ( const auto& model : { m, mp } )
        o.expect( cli( { "conditions", "--model", model, "--logic", "MBCL" } ).code == 0, model + " is not admissible" );
    o.expect( at( m, "[]p" ) == 0 && at( mp, "[]p" ) == 1, "[]p does not separate M and M'" );
    for ( const char* f : { "p", "p -> p", "~(p -> ~p)", "p & ~q | q", "(p -> p) -> p" } )
    {
        int a = at( m, f ), b = at( mp, f );
        o.expect( a == b && a != 2, std::string( f ) + " separates M and M'" );
    }
    o.expect( cli( { "conditions", "--model", rep, "--logic", "MBCL" } ).code == 0, "replacement model is not admissible" );
    o.expect( at( rep, "(p -> q) & (r | ~r) -> ~(p -> ~q)" ) == 1, "replacement instance holds" );
    o.expect( at( rep, "(p -> q) -> ~(p -> ~q)" ) == 0, "Boethius instance fails" );
    o.expect( at( rep, "(p -> q) <=> (p -> q) & (r | ~r)" ) == 0, "material equivalence fails" );
    return o;
}

struct Mutation
{
    Proof proof;
    std::size_t step;   // 1-based
    std::string what;
};

std::vector<Mutation> mutations( const Proof& p, std::mt19937_64& rng )
{
    std::vector<Mutation> out;
    Calculus calc = calculus( p.calculus );
    const std::size_t n = p.steps.size();
    for ( std::size_t s = 0; s < n; ++s )
    {
        const ProofStep& step = p.steps[ s ];
        auto with = [ & ]( const std::string& what, auto change ) {
            Mutation m{ p, s + 1, what };
            change( m.proof.steps[ s ] );
            out.push_back( std::move( m ) );
        };
        with( "negated formula", []( ProofStep& x ) { x.formula = Formula::negation( x.formula ); } );
        with( "boxed formula", []( ProofStep& x ) { x.formula = Formula::box( x.formula ); } );
        with( "conjoined formula", []( ProofStep& x ) {
            x.formula = Formula::conjunction( x.formula, Formula::variable( "zz" ) );
        } );
        with( "forward citation", [ & ]( ProofStep& x ) {
            x.why = Justification{ Justification::Kind::ds, {}, std::nullopt, s + 1, s + 2 };
        } );
        switch ( step.why.kind )
        {
        case Justification::Kind::axiom:
            for ( const auto& a : calc.axioms )
            {
                const AxiomSchema* own = calc.find( step.why.axiom );
                if ( own && a.name != own->name && a.tpl.text() != own->tpl.text() )
                    with( "axiom renamed to " + a.name, [ & ]( ProofStep& x ) {
                        x.why.axiom = a.name;
                        x.why.bindings.reset();
                    } );
            }
            break;
        case Justification::Kind::ds:
            with( "DS premises swapped", []( ProofStep& x ) { std::swap( x.why.i, x.why.j ); } );
            break;
        case Justification::Kind::nec:
            with( "Nec retargeted", [ & ]( ProofStep& x ) { x.why.i = s + 1; } );
            break;
        case Justification::Kind::cpl:
            with( "CPL replaced by A1", []( ProofStep& x ) {
                x.why = Justification{ Justification::Kind::axiom, "A1", std::nullopt, 0, 0 };
            } );
            break;
        }
    }
    std::shuffle( out.begin(), out.end(), rng );
    if ( out.size() > 10 )
        out.resize( 10 );
    return out;
}

Outcome proof_corpus( std::mt19937_64& rng, std::string& detail )
{
    Outcome o;
    std::vector<std::filesystem::path> files;
    for ( const auto& e : std::filesystem::directory_iterator( data_dir + "/proofs" ) )
        files.push_back( e.path() );
    std::sort( files.begin(), files.end() );
    o.expect( files.size() >= 10, "corpus has fewer than 10 proofs" );

    std::set<std::string> schemas_used;
    std::set<Justification::Kind> rules_used;
    std::size_t mutants = 0;
    for ( const auto& path : files )
    {
        Proof p = proof_from_json( load( path.string() ) );
        VerifyResult r = verify( p );
        o.expect( r.ok, path.filename().string() + " rejected at step " + std::to_string( r.step ) + ": " + r.reason );
        auto cli_ok = cli( { "verify", "--proof", path.string() } ).code == 0;
        o.expect( cli_ok, path.filename().string() + " rejected by the command line" );
        Calculus calc = calculus( p.calculus );
        for ( const auto& s : p.steps )
        {
            rules_used.insert( s.why.kind );
            if ( s.why.kind == Justification::Kind::axiom )
                schemas_used.insert( calc.find( s.why.axiom )->name );
        }
        auto ms = mutations( p, rng );
        o.expect( ms.size() == 10, path.filename().string() + ": fewer than 10 mutations" );
        for ( const auto& m : ms )
        {
            ++mutants;
            VerifyResult mr = verify( m.proof );
            o.expect( !mr.ok && mr.step == m.step, path.filename().string() + ": " + m.what + " at step "
                                                           + std::to_string( m.step ) + " not rejected there" );
        }
    }
    for ( const char* name : { "A1", "A2", "B1", "B2", "Imp", "CUN1", "CUN2", "GCUN", "GCUN2", "Dual", "K\xE2\x8A\x83",
                               "D1", "D2", "K", "T", "D", "B", "4", "5", "CUDR", "CUDL", "CUDE" } )
        o.expect( schemas_used.contains( name ), std::string( "corpus never uses " ) + name );
    for ( auto k : { Justification::Kind::cpl, Justification::Kind::ds, Justification::Kind::nec } )
        o.expect( rules_used.contains( k ), "corpus misses a rule" );
    detail = std::to_string( files.size() ) + " proofs, " + std::to_string( mutants ) + " mutants";
    return o;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Acceptance criteria" };
    std::uint64_t seed = 20261016;
    app.add_option( "--seed", seed, "Seed for the randomized criteria" );
    CLI11_PARSE( app, argc, argv );

    std::mt19937_64 rng( seed );
    std::cout << "seed " << seed << '\n';
    int failed = 0;
    auto report = [ & ]( int id, const std::string& title, auto run ) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        Outcome o;
        try
        {
            o = run( detail );
        }
        catch ( const std::exception& e )
        {
            o.expect( false, std::string( "exception: " ) + e.what() );
        }
        double secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
        std::cout << "criterion " << id << ": " << ( o.ok ? "PASS" : "FAIL" ) << "  " << title;
        if ( !detail.empty() )
            std::cout << " (" << detail << ")";
        std::cout << " [" << std::fixed << std::setprecision( 1 ) << secs << "s]" << std::endl;
        for ( const auto& n : o.notes )
            std::cout << "    " << n << '\n';
        failed += !o.ok;
    };

    report( 1, "connexive theses are valid", []( std::string& ) { return connexive_theses(); } );
    report( 2, "symmetry, reflexivity and transitivity fail", []( std::string& ) { return missing_theorems(); } );
    report( 3, "inconsistent condition sets admit no relation", []( std::string& ) { return gcun_inconsistency(); } );
    report( 4, "gcun(k,k,k,k) leaves counts unchanged", [ & ]( std::string& ) { return gcun_triviality( rng ); } );
    report( 5, "filtration preserves truth and stays small", [ & ]( std::string& ) { return filtration_lemma( rng ); } );
    report( 6, "demodal completion preserves truth", [ & ]( std::string& ) { return demodal_equivalence( rng ); } );
    report( 7, "axiom instances hold in admissible models", [ & ]( std::string& d ) { return soundness( rng, d ); } );
    report( 8, "[]p -> p reduces to t or to t_d", []( std::string& ) { return modal_reduction(); } );
    report( 9, "independence and replacement failure", []( std::string& ) { return independence(); } );
    report( 10, "proof corpus verifies and mutants are rejected", [ & ]( std::string& d ) { return proof_corpus( rng, d ); } );

    std::cout << ( failed == 0 ? "all criteria passed" : std::to_string( failed ) + " criteria failed" ) << '\n';
    return failed == 0 ? 0 : 1;
}
