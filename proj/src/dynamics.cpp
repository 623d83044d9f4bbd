#include "modnet/dynamics.hpp"

#include "scc.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace modnet
{

namespace
{

constexpr std::uint32_t kNoClass = std::numeric_limits<std::uint32_t>::max();

/// The state graph of a set of evolving agents, self-loops dropped.
struct StateGraph
{
    const InteractionNetwork& net;
    std::uint32_t moving; // evolving agents without inputs

    [[nodiscard]] std::size_t node_count() const { return static_cast<std::size_t>( net.state_count() ); }
    [[nodiscard]] std::uint32_t start( std::uint32_t ) const { return moving; }
    bool next( std::uint32_t v, std::uint32_t& rest, std::uint32_t& w ) const
    {
        while ( rest != 0 )
        {
            const AgentId a{ static_cast<std::uint32_t>( std::countr_zero( rest ) ) };
            rest &= rest - 1;
            const PackedState s{ v };
            if ( net.evaluate_unchecked( a, s ) != s.get( a ) )
            {
                w = s.flipped( a ).bits;
                return true;
            }
        }
        return false;
    }
};

StateGraph state_graph( const InteractionNetwork& net, AgentSet evolving )
{
    return StateGraph{ net, ( evolving - net.inputs() ).mask() };
}

void check_width( const InteractionNetwork& net, const StateSet& set )
{
    if ( set.agent_count() != net.size() )
        throw std::invalid_argument( "state set does not match the network size" );
}

} // namespace

std::vector<Transition> successors( const InteractionNetwork& net, AgentSet evolving, PackedState s )
{
    std::vector<Transition> out;
    for ( auto a : evolving - net.inputs() )
        out.push_back( Transition{ a, s.with( a, net.evaluate_unchecked( a, s ) ) } );
    return out;
}

StateSet orbit( const InteractionNetwork& net, AgentSet evolving, const StateSet& initial )
{
    check_width( net, initial );
    StateSet reached = initial;
    std::vector<PackedState> frontier = initial.to_vector();
    while ( !frontier.empty() )
    {
        const PackedState s = frontier.back();
        frontier.pop_back();
        for_each_move( net, evolving, s, [&] ( AgentId, PackedState t ) {
            if ( reached.insert( t ) )
                frontier.push_back( t );
        } );
    }
    return reached;
}

StateSet equilibria( const InteractionNetwork& net, AgentSet evolving, const StateSet& initial )
{
    check_width( net, initial );
    StateSet out( net.size() );
    if ( initial.empty() )
        return out;
    const auto graph = state_graph( net, evolving );
    detail::Tarjan tarjan( graph );
    for ( auto s : initial )
        tarjan.run_from( s.bits, [&] ( std::span<const std::uint32_t> members, bool terminal ) {
            if ( terminal )
                for ( auto m : members )
                    out.insert( PackedState{ m } );
        } );
    return out;
}

std::vector<Attractor> attractors( const InteractionNetwork& net, AgentSet evolving, const StateSet& initial )
{
    check_width( net, initial );
    std::vector<Attractor> out;
    if ( initial.empty() )
        return out;
    const auto graph = state_graph( net, evolving );
    detail::Tarjan tarjan( graph );
    for ( auto s : initial )
        tarjan.run_from( s.bits, [&] ( std::span<const std::uint32_t> members, bool terminal ) {
            if ( !terminal )
                return;
            Attractor attractor{ members.size() == 1 ? AttractorKind::Stable : AttractorKind::LimitSet,
                                 StateSet( net.size() ) };
            for ( auto m : members )
                attractor.states.insert( PackedState{ m } );
            out.push_back( std::move( attractor ) );
        } );
    std::sort( out.begin(), out.end(),
               [] ( const Attractor& x, const Attractor& y ) { return *x.states.min() < *y.states.min(); } );
    return out;
}

std::optional<std::uint32_t> QuotientGraph::class_of( PackedState s ) const
{
    if ( s.bits >= _class_of.size() || _class_of[s.bits] == kNoClass )
        return std::nullopt;
    return _class_of[s.bits];
}

StateSet QuotientGraph::class_states( std::uint32_t c ) const
{
    return StateSet::from( _carrier.agent_count(), _classes.at( c ).members );
}

std::vector<std::uint32_t> QuotientGraph::terminal_classes() const
{
    std::vector<std::uint32_t> out;
    for ( std::uint32_t c = 0; c < _classes.size(); ++c )
        if ( _classes[c].terminal )
            out.push_back( c );
    return out;
}

StateSet QuotientGraph::flatten( const std::vector<std::uint32_t>& ids ) const
{
    StateSet out( _carrier.agent_count() );
    for ( auto c : ids )
        for ( auto s : _classes.at( c ).members )
            out.insert( s );
    return out;
}

const QuotientGraph::Lift* QuotientGraph::lift( AgentSet label ) const
{
    auto it = _lifts.find( label );
    return it == _lifts.end() ? nullptr : &it->second;
}

void QuotientGraph::index_classes()
{
    for ( auto& c : _classes )
        std::sort( c.members.begin(), c.members.end() );
    std::sort( _classes.begin(), _classes.end(),
               [] ( const Class& x, const Class& y ) { return x.representative() < y.representative(); } );
    _class_of.assign( static_cast<std::size_t>( _carrier.universe_size() ), kNoClass );
    for ( std::uint32_t c = 0; c < _classes.size(); ++c )
        for ( auto s : _classes[c].members )
            _class_of[s.bits] = c;
}

QuotientGraph quotient( const InteractionNetwork& net, AgentSet evolving, const StateSet& carrier )
{
    check_width( net, carrier );
    for ( auto s : carrier )
        for_each_move( net, evolving, s, [&] ( AgentId a, PackedState t ) {
            if ( !carrier.contains( t ) )
                throw CarrierNotClosed( "move of " + net.name( a ) + " from " + format_state( net.size(), s ) +
                                        " leaves the carrier" );
        } );

    QuotientGraph q;
    q._evolving = evolving;
    q._carrier = carrier;
    const auto graph = state_graph( net, evolving );
    detail::Tarjan tarjan( graph );
    for ( auto s : carrier )
        tarjan.run_from( s.bits, [&] ( std::span<const std::uint32_t> members, bool terminal ) {
            QuotientGraph::Class c;
            c.terminal = terminal;
            for ( auto m : members )
                c.members.push_back( PackedState{ m } );
            q._classes.push_back( std::move( c ) );
        } );
    q.index_classes();
    return q;
}

const QuotientGraph::Lift& lift_evolution( QuotientGraph& q, const InteractionNetwork& net, AgentSet label )
{
    if ( !label.disjoint( q.evolving() ) )
        throw OverlappingAgentSets( "lifted agents overlap the quotient's evolving agents" );

    QuotientGraph::Lift lift;
    const AgentSet moving = label - net.inputs();
    for ( std::uint32_t c = 0; c < q.size(); ++c )
    {
        bool escapes = false;
        for ( auto s : q[c].members )
            for ( auto a : moving )
            {
                const PackedState t = s.with( a, net.evaluate_unchecked( a, s ) );
                if ( auto d = q.class_of( t ) )
                    lift.edges.push_back( QuotientGraph::Edge{ c, *d } );
                else
                    escapes = true;
            }
        if ( escapes )
            lift.escaping.push_back( c );
    }
    std::sort( lift.edges.begin(), lift.edges.end() );
    lift.edges.erase( std::unique( lift.edges.begin(), lift.edges.end() ), lift.edges.end() );
    return q._lifts[label] = std::move( lift );
}

QuotientGraph QuotientBuilder::from_classes( std::size_t agents, AgentSet evolving,
                                             std::vector<std::vector<PackedState>> classes )
{
    QuotientGraph q;
    q._evolving = evolving;
    q._carrier = StateSet( agents );
    for ( auto& members : classes )
    {
        for ( auto s : members )
            q._carrier.insert( s );
        q._classes.push_back( QuotientGraph::Class{ std::move( members ), true } );
    }
    q.index_classes();
    return q;
}

} // namespace modnet
