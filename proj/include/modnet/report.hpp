#pragma once

#include "modnet/dynamics.hpp"
#include "modnet/modularity.hpp"
#include "modnet/regulation.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace modnet
{

// Graphviz renderings. Output is deterministic: nodes and edges in ascending order.

/// State graph of all agents over every state; self-loops omitted, stable states filled
/// light grey and limit-set states filled dark.
std::string state_graph_dot( const InteractionNetwork& net );
std::string regulation_dot( const InteractionNetwork& net, const RegulationGraph& g );
std::string condensation_dot( const InteractionNetwork& net, const CondensationDag& dag );

// JSON documents sharing one schema (schema/modnet-report.schema.json).

/// States rendered as bit strings, sorted lexicographically.
nlohmann::json states_json( const InteractionNetwork& net, const StateSet& states );
nlohmann::json partition_json( const InteractionNetwork& net, const OrderedPartition& pi );
nlohmann::json attractors_json( const InteractionNetwork& net, const std::vector<Attractor>& found );
nlohmann::json regulation_json( const InteractionNetwork& net, const RegulationGraph& g );
/// `verdicts[].prefix` is the 1-based index of the part checked against its prefix.
nlohmann::json modularity_json( const InteractionNetwork& net, const ModularityReport& report );

std::string describe_witness( const InteractionNetwork& net, const EscapeWitness& w );

} // namespace modnet
