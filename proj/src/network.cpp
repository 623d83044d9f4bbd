#include "modnet/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace modnet
{

namespace
{

// Truth tables are built for functions reading at most this many agents.
constexpr std::size_t kTableSupport = 16;

std::size_t count_nodes( const Expr& e )
{
    std::size_t n = 1;
    for ( const auto& op : e.operands() )
        n += count_nodes( op );
    return n;
}

} // namespace

std::vector<AgentId> AgentSet::members() const
{
    std::vector<AgentId> out;
    out.reserve( size() );
    for ( auto a : *this )
        out.push_back( a );
    return out;
}

Expr Expr::constant( bool value )
{
    Expr e;
    e._kind = Kind::Constant;
    e._value = value;
    return e;
}

Expr Expr::variable( std::string name )
{
    Expr e;
    e._kind = Kind::Variable;
    e._name = std::move( name );
    return e;
}

Expr Expr::negation( Expr operand )
{
    Expr e;
    e._kind = Kind::Not;
    e._operands.push_back( std::move( operand ) );
    return e;
}

Expr Expr::conjunction( std::vector<Expr> operands )
{
    if ( operands.empty() )
        throw std::invalid_argument( "conjunction needs at least one operand" );
    if ( operands.size() == 1 )
        return std::move( operands.front() );
    Expr e;
    e._kind = Kind::And;
    e._operands = std::move( operands );
    return e;
}

Expr Expr::disjunction( std::vector<Expr> operands )
{
    if ( operands.empty() )
        throw std::invalid_argument( "disjunction needs at least one operand" );
    if ( operands.size() == 1 )
        return std::move( operands.front() );
    Expr e;
    e._kind = Kind::Or;
    e._operands = std::move( operands );
    return e;
}

void Expr::collect_references( std::vector<std::string>& out ) const
{
    if ( _kind == Kind::Variable )
        out.push_back( _name );
    for ( const auto& op : _operands )
        op.collect_references( out );
}

std::size_t Expr::depth() const
{
    std::size_t d = 0;
    for ( const auto& op : _operands )
        d = std::max( d, op.depth() );
    return d + 1;
}

bool operator==( const Expr& lhs, const Expr& rhs )
{
    if ( lhs._kind != rhs._kind || lhs._operands.size() != rhs._operands.size() )
        return false;
    switch ( lhs._kind )
    {
    case Expr::Kind::Constant:
        return lhs._value == rhs._value;
    case Expr::Kind::Variable:
        return lhs._name == rhs._name;
    default:
        break;
    }
    return std::equal( lhs._operands.begin(), lhs._operands.end(), rhs._operands.begin() );
}

bool is_valid_name( std::string_view name )
{
    if ( name.empty() )
        return false;
    auto head = [] ( char c ) { return ( c >= 'A' && c <= 'Z' ) || ( c >= 'a' && c <= 'z' ) || c == '_'; };
    auto tail = [&] ( char c ) { return head( c ) || ( c >= '0' && c <= '9' ); };
    return head( name.front() ) && std::all_of( name.begin() + 1, name.end(), tail );
}

std::optional<AgentId> InteractionNetwork::find( std::string_view name ) const
{
    for ( std::size_t i = 0; i < _names.size(); ++i )
        if ( _names[i] == name )
            return AgentId{ static_cast<std::uint32_t>( i ) };
    return std::nullopt;
}

AgentId InteractionNetwork::id( std::string_view name ) const
{
    if ( auto a = find( name ) )
        return *a;
    throw UnknownAgent( std::string{ name } );
}

bool InteractionNetwork::evaluate( AgentId a, PackedState s ) const
{
    if ( a.index >= size() )
        throw std::out_of_range( "agent index out of range" );
    if ( is_input( a ) )
        throw InputAgent( _names[a.index] );
    return evaluate_unchecked( a, s );
}

AgentSet InteractionNetwork::syntactic_support( AgentId a ) const
{
    AgentSet out;
    for ( auto idx : _programs.at( a.index ).support )
        out.insert( AgentId{ idx } );
    return out;
}

bool InteractionNetwork::eval_node( const Program& program, std::uint32_t node, PackedState s )
{
    const Node& n = program.nodes[node];
    switch ( n.kind )
    {
    case Expr::Kind::Constant:
        return n.arg != 0;
    case Expr::Kind::Variable:
        return ( s.bits >> n.arg ) & 1u;
    case Expr::Kind::Not:
        return !eval_node( program, program.children[n.first], s );
    case Expr::Kind::And:
        for ( std::uint32_t k = 0; k < n.count; ++k )
            if ( !eval_node( program, program.children[n.first + k], s ) )
                return false;
        return true;
    case Expr::Kind::Or:
        for ( std::uint32_t k = 0; k < n.count; ++k )
            if ( eval_node( program, program.children[n.first + k], s ) )
                return true;
        return false;
    }
    return false;
}

void InteractionNetwork::compile( AgentId a )
{
    Program& program = _programs[a.index];
    const LocalFunction& fn = _functions[a.index];
    if ( fn.is_input() )
        return;

    program.nodes.reserve( count_nodes( fn.body() ) );
    AgentSet support;
    auto emit = [&] ( auto&& self, const Expr& e ) -> std::uint32_t {
        const auto id = static_cast<std::uint32_t>( program.nodes.size() );
        program.nodes.push_back( Node{ e.kind(), 0, 0, 0 } );
        switch ( e.kind() )
        {
        case Expr::Kind::Constant:
            program.nodes[id].arg = e.value() ? 1 : 0;
            break;
        case Expr::Kind::Variable: {
            const auto target = *find( e.name() );
            program.nodes[id].arg = target.index;
            support.insert( target );
            break;
        }
        default: {
            std::vector<std::uint32_t> kids;
            for ( const auto& op : e.operands() )
                kids.push_back( self( self, op ) );
            program.nodes[id].first = static_cast<std::uint32_t>( program.children.size() );
            program.nodes[id].count = static_cast<std::uint32_t>( kids.size() );
            program.children.insert( program.children.end(), kids.begin(), kids.end() );
        }
        }
        return id;
    };
    program.root = emit( emit, fn.body() );
    for ( auto s : support )
        program.support.push_back( s.index );

    if ( program.support.size() <= kTableSupport )
    {
        const std::uint32_t rows = std::uint32_t{ 1 } << program.support.size();
        program.table.assign( ( rows + 63 ) / 64, 0 );
        for ( std::uint32_t row = 0; row < rows; ++row )
        {
            PackedState s;
            for ( std::size_t k = 0; k < program.support.size(); ++k )
                if ( ( row >> k ) & 1u )
                    s.bits |= std::uint32_t{ 1 } << program.support[k];
            if ( eval_node( program, program.root, s ) )
                program.table[row >> 6] |= std::uint64_t{ 1 } << ( row & 63u );
        }
    }
}

InteractionNetwork build_network( std::vector<Definition> definitions, std::size_t max_agents )
{
    max_agents = std::min( max_agents, kMaxAgents );
    InteractionNetwork net;
    std::unordered_set<std::string> defined;
    for ( auto& def : definitions )
    {
        if ( !is_valid_name( def.name ) )
            throw InvalidName( def.name );
        if ( !defined.insert( def.name ).second )
            throw DuplicateDefinition( def.name );
    }

    std::vector<std::string> inputs;
    std::unordered_set<std::string> seen_inputs;
    std::vector<std::string> refs;
    for ( const auto& def : definitions )
    {
        refs.clear();
        def.body.collect_references( refs );
        for ( auto& r : refs )
        {
            if ( !is_valid_name( r ) )
                throw InvalidName( r );
            if ( !defined.contains( r ) && seen_inputs.insert( r ).second )
                inputs.push_back( r );
        }
    }

    const std::size_t n = definitions.size() + inputs.size();
    if ( n > max_agents )
        throw TooManyAgents( n, max_agents );

    for ( auto& def : definitions )
    {
        net._names.push_back( std::move( def.name ) );
        net._functions.emplace_back( std::move( def.body ) );
    }
    for ( auto& name : inputs )
    {
        net._inputs.insert( AgentId{ static_cast<std::uint32_t>( net._names.size() ) } );
        net._names.push_back( std::move( name ) );
        net._functions.push_back( LocalFunction::input() );
    }

    net._programs.resize( n );
    for ( std::uint32_t i = 0; i < n; ++i )
        net.compile( AgentId{ i } );
    return net;
}

PackedState encode_state( std::size_t n, const std::vector<bool>& values )
{
    if ( values.size() != n )
        throw LengthMismatch( n, values.size() );
    PackedState s;
    for ( std::size_t i = 0; i < n; ++i )
        if ( values[i] )
            s.bits |= std::uint32_t{ 1 } << i;
    return s;
}

std::vector<bool> decode_state( std::size_t n, PackedState s )
{
    std::vector<bool> out( n );
    for ( std::size_t i = 0; i < n; ++i )
        out[i] = ( s.bits >> i ) & 1u;
    return out;
}

std::string format_state( std::size_t n, PackedState s )
{
    std::string out( n, '0' );
    for ( std::size_t i = 0; i < n; ++i )
        if ( ( s.bits >> i ) & 1u )
            out[i] = '1';
    return out;
}

PackedState parse_state( std::size_t n, std::string_view text )
{
    if ( text.size() != n )
        throw LengthMismatch( n, text.size() );
    PackedState s;
    for ( std::size_t i = 0; i < n; ++i )
    {
        if ( text[i] == '1' )
            s.bits |= std::uint32_t{ 1 } << i;
        else if ( text[i] != '0' )
            throw std::invalid_argument( "state strings contain only '0' and '1'" );
    }
    return s;
}

} // namespace modnet
