#include "cli.hpp"

#include "bclkit/conditions.hpp"
#include "bclkit/decision.hpp"
#include "bclkit/filtration.hpp"
#include "bclkit/model_json.hpp"
#include "bclkit/parser.hpp"
#include "bclkit/proof.hpp"
#include "bclkit/schema.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bclkit::cli
{

namespace
{

using nlohmann::json;

class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

json read_json( const std::string& path, std::istream& in )
{
    try
    {
        if ( path == "-" )
            return json::parse( in );
        std::ifstream file( path );
        if ( !file )
            throw InputError( "cannot open '" + path + "'" );
        return json::parse( file );
    }
    catch ( const json::parse_error& e )
    {
        throw InputError( "malformed JSON in '" + path + "': " + e.what() );
    }
}

// Accepts a bare model or a decide report that embeds one.
RelatingModel read_model( const std::string& path, std::istream& in )
{
    json doc = read_json( path, in );
    if ( doc.is_object() && !doc.contains( "worlds" ) && doc.contains( "model" ) && doc.at( "model" ).is_object() )
        return model_from_json( doc.at( "model" ) );
    return model_from_json( doc );
}

json violations_json( const std::vector<Violation>& vs )
{
    json out = json::array();
    for ( const auto& v : vs )
    {
        json j = { { "condition", v.condition }, { "reason", v.reason } };
        j[ "world" ] = v.world ? json( *v.world ) : json( nullptr );
        if ( v.pair )
        {
            j[ "pair" ] = { v.pair->first.text(), v.pair->second.text() };
            j[ "required" ] = v.required;
        }
        if ( v.edge )
        {
            j[ "edge" ] = { v.edge->first, v.edge->second };
            j[ "required" ] = true;
        }
        json prem = json::array(), abs = json::array();
        for ( const auto& p : v.premises )
            prem.push_back( { p.first.text(), p.second.text() } );
        for ( const auto& p : v.absent )
            abs.push_back( { p.first.text(), p.second.text() } );
        j[ "premises" ] = prem;
        j[ "absent" ] = abs;
        out.push_back( j );
    }
    return out;
}

// Resolves --logic / --conditions into one condition set; both may be given.
struct Semantics
{
    std::string logic;
    std::string conditions;

    void attach( CLI::App* cmd )
    {
        cmd->add_option( "--logic", logic, "Logic name, e.g. BCL, MBCL+T, MBCL+CUDL" );
        cmd->add_option( "--conditions", conditions, "Comma-separated condition flags" );
    }

    [[nodiscard]] bool given() const { return !logic.empty() || !conditions.empty(); }

    [[nodiscard]] ConditionSet resolve() const
    {
        ConditionSet out;
        if ( !logic.empty() )
            out = bclkit::logic( logic ).conditions;
        if ( !conditions.empty() )
            out.merge( ConditionSet::parse( conditions ) );
        return out;
    }
};

std::string dump( const json& j, bool pretty ) { return pretty ? j.dump( 2 ) : j.dump(); }

} // namespace

int run( const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Boolean connexive logics over relating semantics", "bclkit" };
    app.require_subcommand( 1, 1 );
    bool as_json = false;
    app.add_flag( "--json", as_json, "Machine-readable JSON output" );

    // parse
    std::string parse_text;
    auto* parse_cmd = app.add_subcommand( "parse", "Parse and print a formula" );
    parse_cmd->add_option( "formula", parse_text, "Formula" )->required();
    parse_cmd->add_flag( "--json", as_json );

    // check
    std::string model_path, check_text, world;
    Semantics check_sem;
    auto* check_cmd = app.add_subcommand( "check", "Evaluate a formula on a model" );
    check_cmd->add_option( "--model", model_path, "Model JSON file ('-' for stdin)" )->required();
    check_cmd->add_option( "formula", check_text, "Formula" );
    check_cmd->add_option( "--world", world, "Evaluate at this world only" );
    check_sem.attach( check_cmd );
    check_cmd->add_flag( "--json", as_json );

    // conditions
    std::string cond_model;
    std::vector<std::string> cond_carrier;
    bool list_names = false;
    Semantics cond_sem;
    auto* cond_cmd = app.add_subcommand( "conditions", "Admissibility report or forced pairs" );
    cond_cmd->add_option( "--model", cond_model, "Model JSON file ('-' for stdin)" );
    cond_cmd->add_option( "--carrier", cond_carrier, "Carrier formulas; prints the forced pairs" );
    cond_cmd->add_flag( "--list", list_names, "List condition and logic names" );
    cond_sem.attach( cond_cmd );
    cond_cmd->add_flag( "--json", as_json );

    // decide
    std::string decide_text, vars;
    Semantics decide_sem;
    SearchConfig cfg;
    cfg.budget_bits = default_budget_bits();
    bool no_pad = false, deterministic = false;
    auto* decide_cmd = app.add_subcommand( "decide", "Bounded validity by countermodel search" );
    decide_cmd->add_option( "formula", decide_text, "Formula" )->required();
    decide_sem.attach( decide_cmd );
    decide_cmd->add_option( "--max-worlds", cfg.max_worlds, "Largest frame searched" )
            ->check( CLI::Range( 1, 6 ) );
    decide_cmd->add_flag( "--no-pad", no_pad, "Do not pad the carrier with negations for gcun" );
    decide_cmd->add_option( "--jobs", cfg.jobs, "Worker threads" )->check( CLI::Range( 1, 256 ) );
    decide_cmd->add_flag( "--deterministic", deterministic, "Report the enumeration-least countermodel" );
    decide_cmd->add_option( "--budget", cfg.budget_bits, "log2 of the enumeration budget" )
            ->check( CLI::Range( 1, 62 ) );
    decide_cmd->add_option( "--vars", vars, "Comma-separated variable set" );
    decide_cmd->add_flag( "--json", as_json );

    // count
    std::vector<std::string> count_carrier;
    Semantics count_sem;
    bool count_no_pad = false;
    unsigned count_budget = default_budget_bits();
    auto* count_cmd = app.add_subcommand( "count", "Count admissible relations over a carrier" );
    count_cmd->add_option( "--carrier", count_carrier, "Carrier formulas (closed under subformulas)" )->required();
    count_sem.attach( count_cmd );
    count_cmd->add_flag( "--no-pad", count_no_pad, "Do not pad the carrier with negations for gcun" );
    count_cmd->add_option( "--budget", count_budget, "log2 of the search budget" )->check( CLI::Range( 13, 62 ) );
    count_cmd->add_flag( "--json", as_json );

    // filtrate
    std::string filt_model;
    std::vector<std::string> gamma_text;
    bool complete = false;
    auto* filt_cmd = app.add_subcommand( "filtrate", "Filtration through a formula set" );
    filt_cmd->add_option( "--model", filt_model, "Model JSON file ('-' for stdin)" )->required();
    filt_cmd->add_option( "--gamma", gamma_text, "Formulas; their subformula closure is used" )->required();
    filt_cmd->add_flag( "--complete", complete, "Also close the result under demodalization" );
    filt_cmd->add_flag( "--json", as_json );

    // verify
    std::string proof_path;
    auto* verify_cmd = app.add_subcommand( "verify", "Check a Hilbert-style proof" );
    verify_cmd->add_option( "--proof", proof_path, "Proof JSON file ('-' for stdin)" )->required();
    verify_cmd->add_flag( "--json", as_json );

    try
    {
        std::vector<std::string> reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& )
    {
        out << app.help();
        return 0;
    }
    catch ( const CLI::ParseError& e )
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try
    {
        if ( *parse_cmd )
        {
            Formula f = parse( parse_text );
            if ( as_json )
            {
                auto vs = variables( f );
                out << json{ { "formula", f.text() },
                             { "variables", std::vector<std::string>( vs.begin(), vs.end() ) },
                             { "modal_depth", f.modal_depth() } }
                               .dump()
                    << '\n';
            }
            else
                out << f.text() << '\n';
            return 0;
        }

        if ( *check_cmd )
        {
            RelatingModel model = read_model( model_path, in );
            std::optional<Formula> f;
            if ( !check_text.empty() )
                f = parse( check_text );
            if ( !world.empty() && !model.has_world( world ) )
                throw InputError( "unknown world '" + world + "'" );
            json doc = json::object();
            bool ok = true;
            if ( f )
            {
                json truth = json::object();
                bool holds = true;
                for ( const auto& w : model.worlds )
                {
                    if ( !world.empty() && w != world )
                        continue;
                    bool t = eval( model, w, *f );
                    truth[ w ] = t;
                    holds = holds && t;
                }
                doc[ "formula" ] = f->text();
                doc[ "truth" ] = truth;
                doc[ "holds" ] = holds;
                ok = holds;
            }
            if ( check_sem.given() )
            {
                auto report = admissible( model, check_sem.resolve() );
                doc[ "admissible" ] = report.admissible;
                doc[ "violations" ] = violations_json( report.violations );
                ok = ok && report.admissible;
            }
            if ( as_json )
                out << doc.dump() << '\n';
            else
            {
                if ( f )
                {
                    for ( const auto& [ w, t ] : doc[ "truth" ].items() )
                        out << w << ": " << ( t.get<bool>() ? "true" : "false" ) << '\n';
                    out << ( doc[ "holds" ].get<bool>() ? "holds" : "fails" ) << '\n';
                }
                if ( check_sem.given() )
                {
                    out << ( doc[ "admissible" ].get<bool>() ? "admissible" : "not admissible" ) << '\n';
                    for ( const auto& v : doc[ "violations" ] )
                        out << "  " << v[ "reason" ].get<std::string>() << '\n';
                }
            }
            return ok ? 0 : 1;
        }

        if ( *cond_cmd )
        {
            if ( list_names )
            {
                out << "conditions: a1 a2 b0 b1 b2 cun gcun:k,l,m,n b0' b1' b2' r1 r2 r3 r4 r5 demR demL demE\n"
                       "            d1 d2 k1 k2 t d b iv v d1_d d2_d k1_d k2_d t_d d_d b_d iv_d v_d\n"
                       "frames:     reflexive serial symmetric transitive euclidean (prefix ! to drop)\n"
                       "logics:     BCL BCL+cun BCL+gcun:k,l,m,n MBCL MBCL+X1,...,Xn (X in D1 D2 K T D B 4 5)\n"
                       "            MBCL+gcun:k,l,m,n MBCL+CUDR MBCL+CUDL MBCL+CUDE\n";
                return 0;
            }
            ConditionSet conds = cond_sem.resolve();
            if ( !cond_model.empty() )
            {
                RelatingModel model = read_model( cond_model, in );
                auto report = admissible( model, conds );
                if ( as_json )
                    out << json{ { "admissible", report.admissible },
                                 { "violations", violations_json( report.violations ) } }
                                   .dump()
                        << '\n';
                else
                {
                    out << ( report.admissible ? "admissible" : "not admissible" ) << '\n';
                    for ( const auto& v : report.violations )
                        out << "  " << ( v.world ? *v.world + ": " : std::string() ) << v.reason << '\n';
                }
                return report.admissible ? 0 : 1;
            }
            if ( cond_carrier.empty() )
                throw InputError( "conditions needs --model, --carrier or --list" );
            std::vector<Formula> roots;
            for ( const auto& t : cond_carrier )
                roots.push_back( parse( t ) );
            Relation forced = forced_pairs( subformula_closure( roots ), conds );
            json pairs = json::array();
            for ( const auto& [ a, b ] : forced )
                pairs.push_back( { a.text(), b.text() } );
            if ( as_json )
                out << json{ { "forced", pairs } }.dump() << '\n';
            else
                for ( const auto& [ a, b ] : forced )
                    out << to_string( FormulaPair{ a, b } ) << '\n';
            return 0;
        }

        if ( *decide_cmd )
        {
            if ( !decide_sem.given() )
                throw InputError( "decide needs --logic or --conditions" );
            Formula f = parse( decide_text );
            ConditionSet conds = decide_sem.resolve();
            cfg.pad = !no_pad;
            cfg.deterministic = deterministic || cfg.jobs == 1;
            if ( !vars.empty() )
            {
                std::vector<std::string> vs;
                std::stringstream ss( vars );
                for ( std::string v; std::getline( ss, v, ',' ); )
                    vs.push_back( v );
                cfg.variables = vs;
            }
            Verdict v = decide( f, conds, cfg );
            json doc = verdict_to_json( v, f, conds, decide_sem.logic );
            if ( as_json )
                out << doc.dump() << '\n';
            else
            {
                out << verdict_name( v.kind ) << ": " << v.reason << '\n';
                if ( v.model )
                    out << model_to_json( *v.model ).dump( 2 ) << '\n';
            }
            return v.kind == VerdictKind::countermodel ? 1 : 0;
        }

        if ( *count_cmd )
        {
            if ( !count_sem.given() )
                throw InputError( "count needs --logic or --conditions" );
            ConditionSet conds = count_sem.resolve();
            std::vector<Formula> roots;
            for ( const auto& t : count_carrier )
                roots.push_back( parse( t ) );
            ClosureSet carrier = subformula_closure( roots );
            if ( !count_no_pad && !conds.gcun().empty() )
                carrier = pad_negations( carrier, conds.padding_depth() );
            Count n = count_admissible( carrier, conds, count_budget );
            if ( as_json )
            {
                json members = json::array();
                for ( const auto& f : carrier )
                    members.push_back( f.text() );
                out << json{ { "count", n.str() }, { "carrier", members } }.dump() << '\n';
            }
            else
                out << n.str() << '\n';
            return 0;
        }

        if ( *filt_cmd )
        {
            RelatingModel model = read_model( filt_model, in );
            std::vector<Formula> roots;
            for ( const auto& t : gamma_text )
                roots.push_back( parse( t ) );
            Filtration f = filtrate( model, subformula_closure( roots ) );
            RelatingModel result = complete ? demodal_complete( f.model ) : f.model;
            json doc = model_to_json( result );
            if ( as_json )
                out << json{ { "model", doc }, { "class_of", f.class_of } }.dump() << '\n';
            else
                out << doc.dump( 2 ) << '\n';
            return 0;
        }

        if ( *verify_cmd )
        {
            Proof proof = proof_from_json( read_json( proof_path, in ) );
            VerifyResult r = verify( proof );
            if ( as_json )
            {
                json doc = { { "ok", r.ok } };
                doc[ "step" ] = r.ok ? json( nullptr ) : json( r.step );
                doc[ "reason" ] = r.reason;
                out << doc.dump() << '\n';
            }
            else if ( r.ok )
                out << "verified: " << proof.steps.size() << " steps in " << proof.calculus << '\n';
            else
                out << "rejected at step " << r.step << ": " << r.reason << '\n';
            return r.ok ? 0 : 1;
        }
    }
    catch ( const ParseError& e )
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    catch ( const ModelError& e )
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    catch ( const ConfigError& e )
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    catch ( const BudgetError& e )
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    catch ( const ProofFormatError& e )
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    catch ( const InputError& e )
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    catch ( const nlohmann::json::exception& e )
    {
        err << "error: malformed document: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace bclkit::cli
