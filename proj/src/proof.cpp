#include "bclkit/proof.hpp"

#include "bclkit/cnf.hpp"
#include "bclkit/parser.hpp"

#include <unordered_map>

namespace bclkit
{

namespace
{

void abstract( const Formula& f, std::unordered_map<Formula, std::size_t, FormulaHash>& atoms )
{
    switch ( f.op() )
    {
    case Op::neg: abstract( f.operand(), atoms ); break;
    case Op::conj:
    case Op::disj:
        abstract( f.left(), atoms );
        abstract( f.right(), atoms );
        break;
    default: atoms.emplace( f, atoms.size() ); break;
    }
}

bool skeleton( const Formula& f, const std::unordered_map<Formula, std::size_t, FormulaHash>& atoms,
               std::uint32_t row )
{
    switch ( f.op() )
    {
    case Op::neg: return !skeleton( f.operand(), atoms, row );
    case Op::conj: return skeleton( f.left(), atoms, row ) && skeleton( f.right(), atoms, row );
    case Op::disj: return skeleton( f.left(), atoms, row ) || skeleton( f.right(), atoms, row );
    default: return ( row >> atoms.at( f ) ) & 1;
    }
}

} // namespace

bool is_cpl_instance( const Formula& f )
{
    std::unordered_map<Formula, std::size_t, FormulaHash> atoms;
    abstract( f, atoms );
    if ( atoms.size() > 20 )
        throw BudgetError( "classical skeleton has more than 20 atoms" );
    const std::uint32_t rows = std::uint32_t{ 1 } << atoms.size();
    for ( std::uint32_t row = 0; row < rows; ++row )
        if ( !skeleton( f, atoms, row ) )
            return false;
    return true;
}

VerifyResult verify( const Proof& proof )
{
    Calculus calc;
    try
    {
        calc = calculus( proof.calculus );
    }
    catch ( const ConfigError& e )
    {
        return { false, 0, e.what() };
    }

    auto reject = []( std::size_t step, std::string reason ) { return VerifyResult{ false, step, std::move( reason ) }; };

    for ( std::size_t s = 0; s < proof.steps.size(); ++s )
    {
        const std::size_t index = s + 1;
        const ProofStep& step = proof.steps[ s ];
        const Justification& why = step.why;
        auto earlier = [ & ]( std::size_t k ) { return k >= 1 && k < index; };
        switch ( why.kind )
        {
        case Justification::Kind::axiom:
        {
            const AxiomSchema* schema = calc.find( why.axiom );
            if ( !schema )
                return reject( index, "calculus " + proof.calculus + " has no axiom " + why.axiom );
            if ( why.bindings )
            {
                Formula expected = step.formula;
                try
                {
                    expected = instantiate( *schema, *why.bindings );
                }
                catch ( const std::invalid_argument& e )
                {
                    return reject( index, why.axiom + ": " + e.what() );
                }
                if ( expected != step.formula )
                    return reject( index, "bindings instantiate " + why.axiom + " to " + expected.text()
                                              + ", not to the step formula" );
            }
            else if ( !match_schema( step.formula, *schema ) )
                return reject( index, "no " + why.axiom + " bindings" );
            break;
        }
        case Justification::Kind::cpl:
            try
            {
                if ( !is_cpl_instance( step.formula ) )
                    return reject( index, "not a substitution instance of a classical tautology" );
            }
            catch ( const BudgetError& e )
            {
                return reject( index, e.what() );
            }
            break;
        case Justification::Kind::ds:
        {
            if ( !earlier( why.i ) || !earlier( why.j ) )
                return reject( index, "DS must cite earlier steps" );
            const Formula& minor = proof.steps[ why.i - 1 ].formula;
            const Formula& major = proof.steps[ why.j - 1 ].formula;
            if ( major != Formula::material( minor, step.formula ) )
                return reject( index, "step " + std::to_string( why.j ) + " is not step " + std::to_string( why.i )
                                          + " => this formula" );
            break;
        }
        case Justification::Kind::nec:
            if ( !calc.necessitation )
                return reject( index, "Nec is not a rule of " + proof.calculus );
            if ( !earlier( why.i ) )
                return reject( index, "Nec must cite an earlier step" );
            if ( step.formula != Formula::box( proof.steps[ why.i - 1 ].formula ) )
                return reject( index, "formula is not [] of step " + std::to_string( why.i ) );
            break;
        }
    }
    return {};
}

namespace
{

using nlohmann::json;

std::size_t step_index( const json& j )
{
    if ( !j.is_number_integer() || j.get<long long>() < 1 )
        throw ProofFormatError( "step references must be positive integers" );
    return j.get<std::size_t>();
}

} // namespace

Proof proof_from_json( const json& doc )
{
    if ( !doc.is_object() || !doc.contains( "calculus" ) || !doc.contains( "steps" ) )
        throw ProofFormatError( "proof document needs \"calculus\" and \"steps\"" );
    if ( !doc.at( "calculus" ).is_string() || !doc.at( "steps" ).is_array() )
        throw ProofFormatError( "\"calculus\" must be a string and \"steps\" an array" );
    Proof proof;
    proof.calculus = doc.at( "calculus" ).get<std::string>();
    for ( const auto& s : doc.at( "steps" ) )
    {
        if ( !s.is_object() || !s.contains( "formula" ) || !s.contains( "rule" ) || !s.at( "formula" ).is_string() )
            throw ProofFormatError( "each step needs a \"formula\" string and a \"rule\"" );
        Justification why;
        const json& rule = s.at( "rule" );
        if ( rule.is_string() )
        {
            std::string name = rule.get<std::string>();
            if ( name == "CPL" )
                why.kind = Justification::Kind::cpl;
            else
            {
                why.kind = Justification::Kind::axiom;
                why.axiom = name;
            }
        }
        else if ( rule.is_object() && rule.contains( "ds" ) )
        {
            const json& ds = rule.at( "ds" );
            if ( !ds.is_array() || ds.size() != 2 )
                throw ProofFormatError( "\"ds\" takes two step numbers" );
            why.kind = Justification::Kind::ds;
            why.i = step_index( ds[ 0 ] );
            why.j = step_index( ds[ 1 ] );
        }
        else if ( rule.is_object() && rule.contains( "nec" ) )
        {
            why.kind = Justification::Kind::nec;
            why.i = step_index( rule.at( "nec" ) );
        }
        else if ( rule.is_object() && rule.contains( "axiom" ) && rule.at( "axiom" ).is_string() )
        {
            why.kind = Justification::Kind::axiom;
            why.axiom = rule.at( "axiom" ).get<std::string>();
            if ( rule.contains( "bindings" ) )
            {
                std::map<std::string, Formula> metas;
                for ( const auto& [ k, v ] : rule.at( "bindings" ).items() )
                {
                    if ( !v.is_string() )
                        throw ProofFormatError( "bindings map metavariables to formula strings" );
                    metas.emplace( k, parse( v.get<std::string>() ) );
                }
                why.bindings = std::move( metas );
            }
        }
        else
            throw ProofFormatError( "unrecognized rule" );
        proof.steps.push_back( { parse( s.at( "formula" ).get<std::string>() ), std::move( why ) } );
    }
    return proof;
}

json proof_to_json( const Proof& proof )
{
    json steps = json::array();
    for ( const auto& s : proof.steps )
    {
        json rule;
        switch ( s.why.kind )
        {
        case Justification::Kind::cpl: rule = "CPL"; break;
        case Justification::Kind::ds: rule = { { "ds", { s.why.i, s.why.j } } }; break;
        case Justification::Kind::nec: rule = { { "nec", s.why.i } }; break;
        case Justification::Kind::axiom:
            if ( s.why.bindings )
            {
                json b = json::object();
                for ( const auto& [ k, v ] : *s.why.bindings )
                    b[ k ] = v.text();
                rule = { { "axiom", s.why.axiom }, { "bindings", b } };
            }
            else
                rule = s.why.axiom;
            break;
        }
        steps.push_back( { { "formula", s.formula.text() }, { "rule", rule } } );
    }
    return { { "calculus", proof.calculus }, { "steps", steps } };
}

} // namespace bclkit
