#pragma once

#include "modnet/errors.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace modnet
{

/// Hard ceiling on the number of agents: every analysis enumerates all 2^n states.
inline constexpr std::size_t kMaxAgents = 24;

struct AgentId
{
    std::uint32_t index = 0;

    auto operator<=>( const AgentId& ) const = default;
};

/// Subset of agents, one bit per agent index.
class AgentSet
{
public:
    constexpr AgentSet() = default;
    constexpr explicit AgentSet( std::uint32_t mask ) : _mask{ mask } {}
    AgentSet( std::initializer_list<AgentId> agents )
    {
        for ( auto a : agents )
            insert( a );
    }

    static constexpr AgentSet all( std::size_t n )
    {
        return AgentSet{ n >= 32 ? ~std::uint32_t{ 0 } : ( std::uint32_t{ 1 } << n ) - 1 };
    }

    [[nodiscard]] constexpr std::uint32_t mask() const { return _mask; }
    [[nodiscard]] constexpr bool empty() const { return _mask == 0; }
    [[nodiscard]] constexpr std::size_t size() const { return static_cast<std::size_t>( std::popcount( _mask ) ); }
    [[nodiscard]] constexpr bool contains( AgentId a ) const { return ( _mask >> a.index ) & 1u; }
    [[nodiscard]] constexpr bool is_subset_of( AgentSet other ) const { return ( _mask & ~other._mask ) == 0; }
    [[nodiscard]] constexpr bool disjoint( AgentSet other ) const { return ( _mask & other._mask ) == 0; }

    constexpr void insert( AgentId a ) { _mask |= std::uint32_t{ 1 } << a.index; }
    constexpr void erase( AgentId a ) { _mask &= ~( std::uint32_t{ 1 } << a.index ); }

    [[nodiscard]] std::vector<AgentId> members() const;

    constexpr AgentSet operator|( AgentSet o ) const { return AgentSet{ _mask | o._mask }; }
    constexpr AgentSet operator&( AgentSet o ) const { return AgentSet{ _mask & o._mask }; }
    constexpr AgentSet operator-( AgentSet o ) const { return AgentSet{ _mask & ~o._mask }; }
    constexpr AgentSet& operator|=( AgentSet o )
    {
        _mask |= o._mask;
        return *this;
    }

    auto operator<=>( const AgentSet& ) const = default;

    class iterator
    {
    public:
        using value_type = AgentId;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        explicit iterator( std::uint32_t rest ) : _rest{ rest } {}
        AgentId operator*() const { return AgentId{ static_cast<std::uint32_t>( std::countr_zero( _rest ) ) }; }
        iterator& operator++()
        {
            _rest &= _rest - 1;
            return *this;
        }
        iterator operator++( int )
        {
            auto copy = *this;
            ++*this;
            return copy;
        }
        bool operator==( const iterator& ) const = default;

    private:
        std::uint32_t _rest = 0;
    };

    [[nodiscard]] iterator begin() const { return iterator{ _mask }; }
    [[nodiscard]] iterator end() const { return iterator{ 0 }; }

private:
    std::uint32_t _mask = 0;
};

/// A full configuration of the network; bit i holds the local state of agent i.
struct PackedState
{
    std::uint32_t bits = 0;

    [[nodiscard]] constexpr bool get( AgentId a ) const { return ( bits >> a.index ) & 1u; }
    [[nodiscard]] constexpr PackedState with( AgentId a, bool value ) const
    {
        return PackedState{ value ? ( bits | ( std::uint32_t{ 1 } << a.index ) )
                                  : ( bits & ~( std::uint32_t{ 1 } << a.index ) ) };
    }
    [[nodiscard]] constexpr PackedState flipped( AgentId a ) const
    {
        return PackedState{ bits ^ ( std::uint32_t{ 1 } << a.index ) };
    }

    auto operator<=>( const PackedState& ) const = default;
};

/// Boolean expression over agent names: constants, references, negation and n-ary and/or.
class Expr
{
public:
    enum class Kind : std::uint8_t
    {
        Constant,
        Variable,
        Not,
        And,
        Or,
    };

    static Expr constant( bool value );
    static Expr variable( std::string name );
    static Expr negation( Expr operand );
    /// With a single operand the operand itself is returned.
    static Expr conjunction( std::vector<Expr> operands );
    static Expr disjunction( std::vector<Expr> operands );

    [[nodiscard]] Kind kind() const { return _kind; }
    [[nodiscard]] bool value() const { return _value; }
    [[nodiscard]] const std::string& name() const { return _name; }
    [[nodiscard]] std::span<const Expr> operands() const { return _operands; }

    /// Appends every referenced name in left-to-right order (duplicates included).
    void collect_references( std::vector<std::string>& out ) const;
    [[nodiscard]] std::size_t depth() const;

    friend bool operator==( const Expr& lhs, const Expr& rhs );

private:
    Expr() = default;

    Kind _kind = Kind::Constant;
    bool _value = false;
    std::string _name;
    std::vector<Expr> _operands;
};

/// The local update function of one agent; input agents have none.
class LocalFunction
{
public:
    static LocalFunction input() { return LocalFunction{}; }
    explicit LocalFunction( Expr body ) : _body{ std::move( body ) } {}

    [[nodiscard]] bool is_input() const { return !_body.has_value(); }
    /// Precondition: !is_input().
    [[nodiscard]] const Expr& body() const { return *_body; }

    friend bool operator==( const LocalFunction&, const LocalFunction& ) = default;

private:
    LocalFunction() = default;

    std::optional<Expr> _body;
};

struct Definition
{
    std::string name;
    Expr body;
};

class InteractionNetwork
{
public:
    InteractionNetwork() = default;

    [[nodiscard]] std::size_t size() const { return _names.size(); }
    [[nodiscard]] std::uint64_t state_count() const { return std::uint64_t{ 1 } << size(); }
    [[nodiscard]] AgentSet agents() const { return AgentSet::all( size() ); }
    [[nodiscard]] AgentSet inputs() const { return _inputs; }

    [[nodiscard]] const std::string& name( AgentId a ) const { return _names.at( a.index ); }
    [[nodiscard]] const std::vector<std::string>& names() const { return _names; }
    [[nodiscard]] std::optional<AgentId> find( std::string_view name ) const;
    /// Throws UnknownAgent.
    [[nodiscard]] AgentId id( std::string_view name ) const;

    [[nodiscard]] const LocalFunction& function( AgentId a ) const { return _functions.at( a.index ); }
    [[nodiscard]] bool is_input( AgentId a ) const { return _inputs.contains( a ); }
    /// Size of the local state domain; fixed to Boolean.
    [[nodiscard]] unsigned domain_size( AgentId ) const { return 2; }

    /// Next local value of `a` from `s`. Throws InputAgent for input agents.
    [[nodiscard]] bool evaluate( AgentId a, PackedState s ) const;
    /// Same as evaluate() without the input check.
    [[nodiscard]] bool evaluate_unchecked( AgentId a, PackedState s ) const
    {
        const auto& program = _programs[a.index];
        if ( !program.table.empty() )
        {
            std::uint32_t row = 0;
            for ( std::size_t k = 0; k < program.support.size(); ++k )
                row |= ( ( s.bits >> program.support[k] ) & 1u ) << k;
            return ( program.table[row >> 6] >> ( row & 63u ) ) & 1u;
        }
        return eval_node( program, program.root, s );
    }

    /// Agents whose name occurs in the local function of `a`.
    [[nodiscard]] AgentSet syntactic_support( AgentId a ) const;

    friend bool operator==( const InteractionNetwork& lhs, const InteractionNetwork& rhs )
    {
        return lhs._names == rhs._names && lhs._functions == rhs._functions;
    }

private:
    friend InteractionNetwork build_network( std::vector<Definition> definitions, std::size_t max_agents );

    struct Node
    {
        Expr::Kind kind;
        std::uint32_t arg;   // constant value or agent index
        std::uint32_t first; // first child in `children`
        std::uint32_t count;
    };

    struct Program
    {
        std::vector<Node> nodes;
        std::vector<std::uint32_t> children;
        std::uint32_t root = 0;
        std::vector<std::uint32_t> support;
        std::vector<std::uint64_t> table; // truth table over `support`, empty when too wide
    };

    static bool eval_node( const Program& program, std::uint32_t node, PackedState s );
    void compile( AgentId a );

    std::vector<std::string> _names;
    std::vector<LocalFunction> _functions;
    std::vector<Program> _programs;
    AgentSet _inputs;
};

/// Agents are numbered by definition order, then referenced-but-undefined names are
/// appended as input agents in order of first reference.
InteractionNetwork build_network( std::vector<Definition> definitions, std::size_t max_agents = kMaxAgents );

[[nodiscard]] bool is_valid_name( std::string_view name );

/// Throws LengthMismatch when `values.size() != n`.
PackedState encode_state( std::size_t n, const std::vector<bool>& values );
std::vector<bool> decode_state( std::size_t n, PackedState s );

/// Bit string with agent 0 leftmost, e.g. "1100".
std::string format_state( std::size_t n, PackedState s );
/// Inverse of format_state. Throws LengthMismatch or std::invalid_argument.
PackedState parse_state( std::size_t n, std::string_view text );

} // namespace modnet
