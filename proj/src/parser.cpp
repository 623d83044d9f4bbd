#include "modnet/parser.hpp"

#include <sstream>

namespace modnet
{

SyntaxError::SyntaxError( std::size_t line, std::size_t column, std::vector<std::string> expected, std::string found )
        : Error( [&] {
              std::ostringstream msg;
              msg << line << ":" << column << ": syntax error: expected ";
              for ( std::size_t i = 0; i < expected.size(); ++i )
                  msg << ( i == 0 ? "" : ( i + 1 == expected.size() ? " or " : ", " ) ) << expected[i];
              msg << ", found " << found;
              return msg.str();
          }() ),
          _line{ line }, _column{ column }, _expected{ std::move( expected ) }, _found{ std::move( found ) }
{
}

namespace
{

enum class Tok
{
    Ident,
    Zero,
    One,
    Assign,
    Semi,
    Not,
    And,
    Or,
    LParen,
    RParen,
    End,
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe( const Token& t )
{
    switch ( t.kind )
    {
    case Tok::End:
        return "end of input";
    case Tok::Ident:
        return "identifier '" + t.text + "'";
    default:
        return "'" + t.text + "'";
    }
}

class Lexer
{
public:
    explicit Lexer( std::string_view text ) : _text{ text }
    {
        if ( _text.starts_with( "\xEF\xBB\xBF" ) )
            _pos = 3;
    }

    Token next()
    {
        skip_blank();
        Token t{ Tok::End, "", _line, _column };
        if ( _pos >= _text.size() )
            return t;

        const char c = _text[_pos];
        if ( is_head( c ) )
        {
            const std::size_t start = _pos;
            while ( _pos < _text.size() && is_tail( _text[_pos] ) )
                advance();
            t.kind = Tok::Ident;
            t.text = std::string{ _text.substr( start, _pos - start ) };
            return t;
        }
        if ( c >= '0' && c <= '9' )
        {
            const std::size_t start = _pos;
            while ( _pos < _text.size() && is_tail( _text[_pos] ) )
                advance();
            t.text = std::string{ _text.substr( start, _pos - start ) };
            if ( t.text == "0" || t.text == "1" )
            {
                t.kind = t.text == "0" ? Tok::Zero : Tok::One;
                return t;
            }
            throw SyntaxError( t.line, t.column, { "'0'", "'1'" }, "'" + t.text + "'" );
        }

        advance();
        t.text = std::string( 1, c );
        switch ( c )
        {
        case '=': t.kind = Tok::Assign; break;
        case ';': t.kind = Tok::Semi; break;
        case '!': t.kind = Tok::Not; break;
        case '&': t.kind = Tok::And; break;
        case '|': t.kind = Tok::Or; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        default:
            throw SyntaxError( t.line, t.column, { "a token" }, "illegal character '" + t.text + "'" );
        }
        return t;
    }

private:
    static bool is_head( char c ) { return ( c >= 'A' && c <= 'Z' ) || ( c >= 'a' && c <= 'z' ) || c == '_'; }
    static bool is_tail( char c ) { return is_head( c ) || ( c >= '0' && c <= '9' ); }

    void advance()
    {
        if ( _text[_pos] == '\n' )
        {
            ++_line;
            _column = 1;
        }
        else
        {
            ++_column;
        }
        ++_pos;
    }

    void skip_blank()
    {
        while ( _pos < _text.size() )
        {
            const char c = _text[_pos];
            if ( c == ' ' || c == '\t' || c == '\r' || c == '\n' )
                advance();
            else if ( c == '#' )
                while ( _pos < _text.size() && _text[_pos] != '\n' )
                    advance();
            else
                break;
        }
    }

    std::string_view _text;
    std::size_t _pos = 0;
    std::size_t _line = 1;
    std::size_t _column = 1;
};

const std::vector<std::string> kAtomStart{ "identifier", "'0'", "'1'", "'('", "'!'" };

class Parser
{
public:
    explicit Parser( std::string_view text ) : _lexer{ text } { _look = _lexer.next(); }

    std::vector<Definition> network()
    {
        std::vector<Definition> defs;
        while ( _look.kind != Tok::End )
            defs.push_back( statement() );
        return defs;
    }

    Expr lone_expression()
    {
        Expr e = expr();
        expect( Tok::End, { "'|'", "'&'", "end of input" } );
        return e;
    }

private:
    Definition statement()
    {
        if ( _look.kind != Tok::Ident )
            fail( { "identifier", "end of input" } );
        std::string name = _look.text;
        shift();
        expect( Tok::Assign, { "'='" } );
        Expr body = expr();
        switch ( _look.kind )
        {
        case Tok::Semi:
            shift();
            break;
        case Tok::Ident:
        case Tok::End:
            break;
        default:
            fail( { "'|'", "'&'", "';'", "identifier", "end of input" } );
        }
        return Definition{ std::move( name ), std::move( body ) };
    }

    Expr expr()
    {
        std::vector<Expr> terms;
        terms.push_back( conjunction() );
        while ( _look.kind == Tok::Or )
        {
            shift();
            terms.push_back( conjunction() );
        }
        return Expr::disjunction( std::move( terms ) );
    }

    Expr conjunction()
    {
        std::vector<Expr> factors;
        factors.push_back( unary() );
        while ( _look.kind == Tok::And )
        {
            shift();
            factors.push_back( unary() );
        }
        return Expr::conjunction( std::move( factors ) );
    }

    Expr unary()
    {
        if ( _look.kind == Tok::Not )
        {
            shift();
            return Expr::negation( unary() );
        }
        return atom();
    }

    Expr atom()
    {
        switch ( _look.kind )
        {
        case Tok::Ident: {
            Expr e = Expr::variable( _look.text );
            shift();
            return e;
        }
        case Tok::Zero:
        case Tok::One: {
            Expr e = Expr::constant( _look.kind == Tok::One );
            shift();
            return e;
        }
        case Tok::LParen: {
            shift();
            Expr e = expr();
            expect( Tok::RParen, { "'|'", "'&'", "')'" } );
            return e;
        }
        default:
            fail( kAtomStart );
        }
    }

    void shift() { _look = _lexer.next(); }

    void expect( Tok kind, std::vector<std::string> expected )
    {
        if ( _look.kind != kind )
            fail( std::move( expected ) );
        shift();
    }

    [[noreturn]] void fail( std::vector<std::string> expected ) const
    {
        throw SyntaxError( _look.line, _look.column, std::move( expected ), describe( _look ) );
    }

    Lexer _lexer;
    Token _look;
};

int precedence( Expr::Kind kind )
{
    switch ( kind )
    {
    case Expr::Kind::Or: return 1;
    case Expr::Kind::And: return 2;
    case Expr::Kind::Not: return 3;
    default: return 4;
    }
}

void render( std::ostream& os, const Expr& e )
{
    // A child is parenthesised unless it binds strictly tighter than its parent, so
    // nested same-operator nodes survive a round trip.
    auto child = [&] ( const Expr& c, int parent ) {
        const bool wrap = precedence( c.kind() ) <= parent && c.kind() != Expr::Kind::Not;
        if ( wrap )
            os << '(';
        render( os, c );
        if ( wrap )
            os << ')';
    };

    switch ( e.kind() )
    {
    case Expr::Kind::Constant:
        os << ( e.value() ? '1' : '0' );
        break;
    case Expr::Kind::Variable:
        os << e.name();
        break;
    case Expr::Kind::Not:
        os << '!';
        child( e.operands()[0], 3 );
        break;
    case Expr::Kind::And:
    case Expr::Kind::Or: {
        const char* sep = e.kind() == Expr::Kind::And ? " & " : " | ";
        bool first = true;
        for ( const auto& op : e.operands() )
        {
            if ( !first )
                os << sep;
            first = false;
            child( op, precedence( e.kind() ) );
        }
        break;
    }
    }
}

} // namespace

std::vector<Definition> parse_definitions( std::string_view text )
{
    return Parser{ text }.network();
}

InteractionNetwork parse_network( std::string_view text, std::size_t max_agents )
{
    return build_network( parse_definitions( text ), max_agents );
}

Expr parse_expression( std::string_view text )
{
    return Parser{ text }.lone_expression();
}

std::string render_expression( const Expr& e )
{
    std::ostringstream os;
    render( os, e );
    return os.str();
}

std::string render_network( const InteractionNetwork& net )
{
    std::ostringstream os;
    for ( std::uint32_t i = 0; i < net.size(); ++i )
    {
        const AgentId a{ i };
        if ( net.is_input( a ) )
            continue;
        os << net.name( a ) << " = ";
        render( os, net.function( a ).body() );
        os << ";\n";
    }
    return os.str();
}

} // namespace modnet
