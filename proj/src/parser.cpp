#include "bclkit/parser.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace bclkit
{

namespace
{

std::string describe( const std::set<std::string>& expected )
{
    std::string out;
    for ( const auto& e : expected )
    {
        if ( !out.empty() )
            out += ", ";
        out += e;
    }
    return out;
}

} // namespace

ParseError::ParseError( std::size_t offset, std::set<std::string> expected, const std::string& found )
        : std::runtime_error( "parse error at offset " + std::to_string( offset ) + ": expected one of {"
                              + describe( expected ) + "}, found " + found ),
          _offset{ offset }, _expected{ std::move( expected ) }
{
}

namespace
{

enum class Tok
{
    ident,
    lparen,
    rparen,
    neg,
    box,
    diamond,
    conj,
    disj,
    arrow,
    material,
    equiv,
    end,
};

struct Token
{
    Tok kind;
    std::size_t offset;
    std::string text;
};

struct Spelling
{
    std::string_view text;
    Tok kind;
};

// Longest spellings first so that "<=>" wins over "<>" and so on.
constexpr std::array spellings{
    Spelling{ "<=>", Tok::equiv },     Spelling{ "->", Tok::arrow },
    Spelling{ "=>", Tok::material },   Spelling{ "[]", Tok::box },
    Spelling{ "<>", Tok::diamond },    Spelling{ "~", Tok::neg },
    Spelling{ "&", Tok::conj },        Spelling{ "|", Tok::disj },
    Spelling{ "(", Tok::lparen },      Spelling{ ")", Tok::rparen },
    Spelling{ "\xC2\xAC", Tok::neg },  // ¬
    Spelling{ "\xE2\x88\xA7", Tok::conj },     // ∧
    Spelling{ "\xE2\x88\xA8", Tok::disj },     // ∨
    Spelling{ "\xE2\x86\x92", Tok::arrow },    // →
    Spelling{ "\xE2\x96\xA1", Tok::box },      // □
    Spelling{ "\xE2\x97\x87", Tok::diamond },  // ◇
    Spelling{ "\xE2\x97\x8A", Tok::diamond },  // ◊
    Spelling{ "\xE2\x8A\x83", Tok::material }, // ⊃
    Spelling{ "\xE2\x89\xA1", Tok::equiv },    // ≡
};

std::string_view tok_name( Tok t )
{
    switch ( t )
    {
    case Tok::ident: return "identifier";
    case Tok::lparen: return "(";
    case Tok::rparen: return ")";
    case Tok::neg: return "~";
    case Tok::box: return "[]";
    case Tok::diamond: return "<>";
    case Tok::conj: return "&";
    case Tok::disj: return "|";
    case Tok::arrow: return "->";
    case Tok::material: return "=>";
    case Tok::equiv: return "<=>";
    case Tok::end: return "end of input";
    }
    return "?";
}

bool ident_start( char c ) { return c >= 'a' && c <= 'z'; }
bool ident_rest( char c ) { return ident_start( c ) || ( c >= '0' && c <= '9' ) || c == '_'; }

std::vector<Token> tokenize( std::string_view text )
{
    std::vector<Token> out;
    std::size_t i = 0;
    while ( i < text.size() )
    {
        char c = text[ i ];
        if ( c == ' ' || c == '\t' || c == '\n' || c == '\r' )
        {
            ++i;
            continue;
        }
        if ( ident_start( c ) )
        {
            std::size_t start = i;
            while ( i < text.size() && ident_rest( text[ i ] ) )
                ++i;
            out.push_back( { Tok::ident, start, std::string( text.substr( start, i - start ) ) } );
            continue;
        }
        bool matched = false;
        for ( const auto& s : spellings )
        {
            if ( text.substr( i, s.text.size() ) == s.text )
            {
                out.push_back( { s.kind, i, std::string( s.text ) } );
                i += s.text.size();
                matched = true;
                break;
            }
        }
        if ( !matched )
        {
            std::set<std::string> expected{ "identifier", "(", "~", "[]", "<>", "&", "|", "->", "=>", "<=>", ")" };
            throw ParseError( i, std::move( expected ), "'" + std::string( 1, c ) + "'" );
        }
    }
    out.push_back( { Tok::end, text.size(), {} } );
    return out;
}

class Parser
{
public:
    explicit Parser( std::vector<Token> tokens ) : _tokens{ std::move( tokens ) } {}

    Formula parse_all()
    {
        Formula f = equiv();
        expect( Tok::end );
        return f;
    }

private:
    const Token& peek() const { return _tokens[ _pos ]; }

    bool accept( Tok kind )
    {
        _tried.insert( std::string( tok_name( kind ) ) );
        if ( peek().kind != kind )
            return false;
        ++_pos;
        _tried.clear();
        return true;
    }

    void expect( Tok kind )
    {
        if ( !accept( kind ) )
            fail();
    }

    [[noreturn]] void fail()
    {
        const Token& t = peek();
        std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw ParseError( t.offset, _tried, found );
    }

    Formula equiv()
    {
        Formula f = material();
        while ( accept( Tok::equiv ) )
            f = Formula::equivalence( f, material() );
        return f;
    }

    Formula material()
    {
        Formula f = arrow();
        if ( accept( Tok::material ) )
            return Formula::material( f, material() );
        return f;
    }

    Formula arrow()
    {
        Formula f = disj();
        if ( accept( Tok::arrow ) )
            return Formula::arrow( f, arrow() );
        return f;
    }

    Formula disj()
    {
        Formula f = conj();
        while ( accept( Tok::disj ) )
            f = Formula::disjunction( f, conj() );
        return f;
    }

    Formula conj()
    {
        Formula f = unary();
        while ( accept( Tok::conj ) )
            f = Formula::conjunction( f, unary() );
        return f;
    }

    Formula unary()
    {
        if ( accept( Tok::neg ) )
            return Formula::negation( unary() );
        if ( accept( Tok::box ) )
            return Formula::box( unary() );
        if ( accept( Tok::diamond ) )
            return Formula::diamond( unary() );
        return atom();
    }

    Formula atom()
    {
        if ( peek().kind == Tok::ident )
        {
            std::string name = peek().text;
            ++_pos;
            _tried.clear();
            return Formula::variable( std::move( name ) );
        }
        _tried.insert( "identifier" );
        if ( accept( Tok::lparen ) )
        {
            Formula f = equiv();
            expect( Tok::rparen );
            return f;
        }
        fail();
    }

    std::vector<Token> _tokens;
    std::size_t _pos = 0;
    // Tokens that would have been accepted at the current position.
    std::set<std::string> _tried;
};

} // namespace

Formula parse( std::string_view text )
{
    return Parser{ tokenize( text ) }.parse_all();
}

} // namespace bclkit
