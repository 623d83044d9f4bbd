#pragma once

#include "modnet/network.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace modnet
{

class OrderedPartition;

/// True iff flipping `regulator` alone changes the next value of `target` in some state.
/// Input targets are regulated by nothing.
bool regulates( const InteractionNetwork& net, AgentId regulator, AgentId target );

/// Some member of `regulators` regulates some member of `targets`.
bool set_regulates( const InteractionNetwork& net, AgentSet regulators, AgentSet targets );

/// Semantic regulation graph. Edges are (regulator, target) pairs in lexicographic order.
class RegulationGraph
{
public:
    RegulationGraph() = default;
    explicit RegulationGraph( std::size_t agents ) : _regulators( agents ), _targets( agents ) {}

    [[nodiscard]] std::size_t size() const { return _regulators.size(); }
    [[nodiscard]] AgentSet regulators( AgentId a ) const { return _regulators.at( a.index ); }
    [[nodiscard]] AgentSet targets( AgentId a ) const { return _targets.at( a.index ); }
    [[nodiscard]] bool has_edge( AgentId from, AgentId to ) const { return _targets.at( from.index ).contains( to ); }
    [[nodiscard]] std::vector<std::pair<AgentId, AgentId>> edges() const;

    void add_edge( AgentId from, AgentId to )
    {
        _targets.at( from.index ).insert( to );
        _regulators.at( to.index ).insert( from );
    }

private:
    std::vector<AgentSet> _regulators;
    std::vector<AgentSet> _targets;
};

RegulationGraph regulation_graph( const InteractionNetwork& net );

/// Condensation of a regulation graph: one node per strongly connected component,
/// components ordered by their smallest agent index.
struct CondensationDag
{
    std::vector<AgentSet> components;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // component indices, deduplicated, sorted

    [[nodiscard]] std::size_t component_of( AgentId a ) const;
};

CondensationDag scc_condensation( const RegulationGraph& g );

/// Kahn's algorithm; among ready components the one with the smallest agent index goes first.
OrderedPartition topological_ordering( const CondensationDag& dag );

/// Every topological ordering, or std::nullopt when there are more than `limit`.
std::optional<std::vector<OrderedPartition>> all_topological_orderings( const CondensationDag& dag,
                                                                        std::size_t limit = 10'000 );

} // namespace modnet
