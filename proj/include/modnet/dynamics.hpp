#pragma once

#include "modnet/network.hpp"
#include "modnet/state_set.hpp"

#include <map>
#include <optional>
#include <vector>

namespace modnet
{

struct Transition
{
    AgentId agent;
    PackedState target;

    auto operator<=>( const Transition& ) const = default;
};

/// One asynchronous step per non-input agent of `evolving`, self-transitions included,
/// in ascending agent order.
std::vector<Transition> successors( const InteractionNetwork& net, AgentSet evolving, PackedState s );

/// Calls f( agent, target ) for every state-changing step of `evolving` from `s`.
template <class F>
void for_each_move( const InteractionNetwork& net, AgentSet evolving, PackedState s, F&& f )
{
    for ( auto a : evolving - net.inputs() )
        if ( net.evaluate_unchecked( a, s ) != s.get( a ) )
            f( a, s.flipped( a ) );
}

/// Forward closure of `initial` under the evolution of `evolving`.
StateSet orbit( const InteractionNetwork& net, AgentSet evolving, const StateSet& initial );

/// States of `orbit(initial)` lying in terminal strongly connected components.
StateSet equilibria( const InteractionNetwork& net, AgentSet evolving, const StateSet& initial );

enum class AttractorKind
{
    Stable,
    LimitSet,
};

struct Attractor
{
    AttractorKind kind;
    StateSet states;
};

/// Terminal components reachable from `initial`, ordered by smallest member.
std::vector<Attractor> attractors( const InteractionNetwork& net, AgentSet evolving, const StateSet& initial );

/// SCC quotient of the evolution of `evolving()` over a closed carrier, plus any lifted
/// evolutions of other agent sets added by lift_evolution().
class QuotientGraph
{
public:
    struct Class
    {
        std::vector<PackedState> members; // ascending
        bool terminal = false;            // no move of evolving() leaves the class

        [[nodiscard]] PackedState representative() const { return members.front(); }
    };

    struct Edge
    {
        std::uint32_t from;
        std::uint32_t to;

        auto operator<=>( const Edge& ) const = default;
    };

    /// Lifted moves of one agent set: class edges (self-loops included) and the classes
    /// with some move leaving the carrier.
    struct Lift
    {
        std::vector<Edge> edges;
        std::vector<std::uint32_t> escaping;
    };

    [[nodiscard]] AgentSet evolving() const { return _evolving; }
    [[nodiscard]] const StateSet& carrier() const { return _carrier; }
    [[nodiscard]] std::size_t size() const { return _classes.size(); }
    [[nodiscard]] const std::vector<Class>& classes() const { return _classes; }
    [[nodiscard]] const Class& operator[]( std::size_t i ) const { return _classes.at( i ); }

    [[nodiscard]] std::optional<std::uint32_t> class_of( PackedState s ) const;
    [[nodiscard]] StateSet class_states( std::uint32_t c ) const;
    [[nodiscard]] std::vector<std::uint32_t> terminal_classes() const;
    /// Union of the members of `ids`.
    [[nodiscard]] StateSet flatten( const std::vector<std::uint32_t>& ids ) const;

    /// Lifted moves for `label`, or nullptr if never lifted.
    [[nodiscard]] const Lift* lift( AgentSet label ) const;
    [[nodiscard]] const std::map<AgentSet, Lift>& lifts() const { return _lifts; }

private:
    friend QuotientGraph quotient( const InteractionNetwork&, AgentSet, const StateSet& );
    friend const QuotientGraph::Lift& lift_evolution( QuotientGraph&, const InteractionNetwork&, AgentSet );
    friend struct QuotientBuilder;

    void index_classes();

    AgentSet _evolving;
    StateSet _carrier;
    std::vector<Class> _classes;
    std::vector<std::uint32_t> _class_of; // dense over 2^n, kNoClass outside the carrier
    std::map<AgentSet, Lift> _lifts;
};

/// Throws CarrierNotClosed if some move of `evolving` leaves `carrier`.
QuotientGraph quotient( const InteractionNetwork& net, AgentSet evolving, const StateSet& carrier );

/// Adds the class edges induced by moves of `label`. Throws OverlappingAgentSets when
/// `label` shares agents with the quotient's own evolving set.
const QuotientGraph::Lift& lift_evolution( QuotientGraph& q, const InteractionNetwork& net, AgentSet label );

/// Builds a quotient directly from already-known classes (all terminal, carrier = their union).
struct QuotientBuilder
{
    static QuotientGraph from_classes( std::size_t agents, AgentSet evolving,
                                       std::vector<std::vector<PackedState>> classes );
};

} // namespace modnet
