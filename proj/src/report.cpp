#include "modnet/report.hpp"

#include <algorithm>
#include <sstream>

namespace modnet
{

namespace
{

std::string quoted( const std::string& s )
{
    return "\"" + s + "\"";
}

nlohmann::json agent_names( const InteractionNetwork& net )
{
    return nlohmann::json( net.names() );
}

std::string member_list( const InteractionNetwork& net, AgentSet agents )
{
    std::string out;
    for ( auto a : agents )
        out += ( out.empty() ? "" : "," ) + net.name( a );
    return out;
}

} // namespace

std::string state_graph_dot( const InteractionNetwork& net )
{
    std::ostringstream os;
    os << "digraph state_graph {\n";
    if ( net.size() == 0 )
    {
        os << "}\n";
        return os.str();
    }
    os << "  node [shape=box];\n";

    const std::size_t n = net.size();
    const StateSet all = StateSet::full( n );
    StateSet stable( n ), limit( n );
    for ( const auto& attractor : attractors( net, net.agents(), all ) )
        ( attractor.kind == AttractorKind::Stable ? stable : limit ) |= attractor.states;

    for ( auto s : all )
    {
        os << "  " << quoted( format_state( n, s ) );
        if ( stable.contains( s ) )
            os << " [style=filled, fillcolor=lightgrey]";
        else if ( limit.contains( s ) )
            os << " [style=filled, fillcolor=gray35, fontcolor=white]";
        os << ";\n";
    }
    for ( auto s : all )
        for_each_move( net, net.agents(), s, [&] ( AgentId a, PackedState t ) {
            os << "  " << quoted( format_state( n, s ) ) << " -> " << quoted( format_state( n, t ) )
               << " [label=" << quoted( net.name( a ) ) << "];\n";
        } );
    os << "}\n";
    return os.str();
}

std::string regulation_dot( const InteractionNetwork& net, const RegulationGraph& g )
{
    std::ostringstream os;
    os << "digraph regulation {\n";
    for ( auto a : net.agents() )
        os << "  " << quoted( net.name( a ) ) << ( net.is_input( a ) ? " [shape=diamond]" : "" ) << ";\n";
    for ( const auto& [from, to] : g.edges() )
        os << "  " << quoted( net.name( from ) ) << " -> " << quoted( net.name( to ) ) << ";\n";
    os << "}\n";
    return os.str();
}

std::string condensation_dot( const InteractionNetwork& net, const CondensationDag& dag )
{
    std::ostringstream os;
    os << "digraph condensation {\n";
    if ( !dag.components.empty() )
        os << "  node [shape=box];\n";
    for ( std::size_t c = 0; c < dag.components.size(); ++c )
        os << "  c" << c << " [label=" << quoted( "{" + member_list( net, dag.components[c] ) + "}" ) << "];\n";
    for ( const auto& [from, to] : dag.edges )
        os << "  c" << from << " -> c" << to << ";\n";
    os << "}\n";
    return os.str();
}

nlohmann::json states_json( const InteractionNetwork& net, const StateSet& states )
{
    // Lexicographic order of the rendered strings, which reads naturally next to the examples.
    std::vector<std::string> rendered;
    for ( auto s : states )
        rendered.push_back( format_state( net.size(), s ) );
    std::sort( rendered.begin(), rendered.end() );
    return nlohmann::json( rendered );
}

nlohmann::json partition_json( const InteractionNetwork& net, const OrderedPartition& pi )
{
    auto out = nlohmann::json::array();
    for ( auto part : pi.parts() )
    {
        auto names = nlohmann::json::array();
        for ( auto a : part )
            names.push_back( net.name( a ) );
        out.push_back( std::move( names ) );
    }
    return out;
}

nlohmann::json attractors_json( const InteractionNetwork& net, const std::vector<Attractor>& found )
{
    auto list = nlohmann::json::array();
    for ( const auto& attractor : found )
        list.push_back( { { "kind", attractor.kind == AttractorKind::Stable ? "stable" : "limit" },
                          { "states", states_json( net, attractor.states ) } } );
    return { { "agents", agent_names( net ) }, { "attractors", std::move( list ) } };
}

nlohmann::json regulation_json( const InteractionNetwork& net, const RegulationGraph& g )
{
    auto edges = nlohmann::json::array();
    for ( const auto& [from, to] : g.edges() )
        edges.push_back( { net.name( from ), net.name( to ) } );
    return { { "agents", agent_names( net ) }, { "edges", std::move( edges ) } };
}

nlohmann::json modularity_json( const InteractionNetwork& net, const ModularityReport& report )
{
    auto verdicts = nlohmann::json::array();
    for ( const auto& v : report.verdicts )
    {
        nlohmann::json entry{ { "prefix", v.index + 1 }, { "holds", v.holds } };
        if ( v.witness )
            entry["witness"] = { { "state", format_state( net.size(), v.witness->state ) },
                                 { "agent", net.name( v.witness->agent ) },
                                 { "to", format_state( net.size(), v.witness->target ) } };
        verdicts.push_back( std::move( entry ) );
    }
    return { { "agents", agent_names( net ) },
             { "partition", partition_json( net, report.partition ) },
             { "verdicts", std::move( verdicts ) },
             { "holds", report.holds() } };
}

std::string describe_witness( const InteractionNetwork& net, const EscapeWitness& w )
{
    return format_state( net.size(), w.state ) + " -" + net.name( w.agent ) + "-> " +
           format_state( net.size(), w.target );
}

} // namespace modnet
