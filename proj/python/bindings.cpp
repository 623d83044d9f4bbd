// Python bindings. States are bit strings ("1100", leftmost = first agent), agent sets are
// lists of names and partitions are either "a1|a2,a3" strings or lists of name lists.

#include "modnet/dynamics.hpp"
#include "modnet/modularity.hpp"
#include "modnet/parser.hpp"
#include "modnet/regulation.hpp"
#include "modnet/report.hpp"
#include "modnet/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace modnet;

namespace
{

using Names = std::vector<std::string>;
using States = std::vector<std::string>;

AgentSet to_agents( const InteractionNetwork& net, const std::optional<Names>& names )
{
    if ( !names )
        return net.agents();
    AgentSet out;
    for ( const auto& n : *names )
        out.insert( net.id( n ) );
    return out;
}

Names to_names( const InteractionNetwork& net, AgentSet agents )
{
    Names out;
    for ( auto a : agents )
        out.push_back( net.name( a ) );
    return out;
}

StateSet to_states( const InteractionNetwork& net, const std::optional<States>& items )
{
    if ( !items )
        return StateSet::full( net.size() );
    StateSet out( net.size() );
    for ( const auto& s : *items )
        out.insert( parse_state( net.size(), s ) );
    return out;
}

States to_strings( const InteractionNetwork& net, const StateSet& states )
{
    return states_json( net, states ).get<States>();
}

OrderedPartition to_partition( const InteractionNetwork& net, const py::object& spec )
{
    if ( py::isinstance<py::str>( spec ) )
        return parse_partition( net, spec.cast<std::string>() );
    std::vector<AgentSet> parts;
    for ( const auto& part : spec.cast<std::vector<Names>>() )
        parts.push_back( to_agents( net, part ) );
    return OrderedPartition( std::move( parts ) );
}

std::vector<Names> from_partition( const InteractionNetwork& net, const OrderedPartition& pi )
{
    std::vector<Names> out;
    for ( auto part : pi.parts() )
        out.push_back( to_names( net, part ) );
    return out;
}

py::object to_python( const nlohmann::json& j )
{
    // The documents are small; a JSON round trip keeps the dict shapes identical to the CLI.
    return py::module_::import( "json" ).attr( "loads" )( j.dump() );
}

py::object witness_dict( const InteractionNetwork& net, const std::optional<EscapeWitness>& w )
{
    if ( !w )
        return py::none();
    py::dict d;
    d["state"] = format_state( net.size(), w->state );
    d["agent"] = net.name( w->agent );
    d["to"] = format_state( net.size(), w->target );
    return d;
}

} // namespace

PYBIND11_MODULE( modnet, m )
{
    m.doc() = "Attractors, regulation and modular organisations of asynchronous Boolean networks";

    // Translators registered later are tried first, so the base class goes first.
    auto& error = py::register_exception<Error>( m, "Error", PyExc_RuntimeError );
    py::register_exception<SyntaxError>( m, "ParseError", error.ptr() );
    py::register_exception<TooManyAgents>( m, "TooManyAgents", error.ptr() );
    py::register_exception<PartitionNotValidated>( m, "PartitionNotValidated", error.ptr() );

    m.attr( "MAX_AGENTS" ) = kMaxAgents;

    py::class_<InteractionNetwork>( m, "Network" )
            .def_property_readonly( "agents", &InteractionNetwork::names )
            .def_property_readonly( "inputs",
                                    [] ( const InteractionNetwork& net ) { return to_names( net, net.inputs() ); } )
            .def( "__len__", &InteractionNetwork::size )
            .def( "__eq__", [] ( const InteractionNetwork& a, const InteractionNetwork& b ) { return a == b; } )
            .def( "render", &render_network )
            .def( "evaluate",
                  [] ( const InteractionNetwork& net, const std::string& agent, const std::string& state ) {
                      return net.evaluate( net.id( agent ), parse_state( net.size(), state ) );
                  } )
            .def( "__repr__", [] ( const InteractionNetwork& net ) {
                return "<modnet.Network with " + std::to_string( net.size() ) + " agents>";
            } );

    m.def( "parse_network", &parse_network, py::arg( "text" ), py::arg( "max_agents" ) = kMaxAgents,
           "Parse .bnet text." );
    m.def(
            "load",
            [] ( const std::string& path ) {
                std::ifstream in( path );
                if ( !in )
                    throw py::value_error( "cannot read " + path );
                std::ostringstream buffer;
                buffer << in.rdbuf();
                return parse_network( buffer.str() );
            },
            py::arg( "path" ) );

    m.def(
            "orbit",
            [] ( const InteractionNetwork& net, std::optional<Names> agents, std::optional<States> initial ) {
                return to_strings( net, orbit( net, to_agents( net, agents ), to_states( net, initial ) ) );
            },
            py::arg( "net" ), py::arg( "agents" ) = py::none(), py::arg( "initial" ) = py::none(),
            "States reachable from `initial` (default: all states) using moves of `agents` (default: all)." );

    m.def(
            "equilibria",
            [] ( const InteractionNetwork& net, std::optional<Names> agents, std::optional<States> initial ) {
                return to_strings( net, equilibria( net, to_agents( net, agents ), to_states( net, initial ) ) );
            },
            py::arg( "net" ), py::arg( "agents" ) = py::none(), py::arg( "initial" ) = py::none() );

    m.def(
            "attractors",
            [] ( const InteractionNetwork& net, std::optional<Names> agents, std::optional<States> initial ) {
                const auto found = attractors( net, to_agents( net, agents ), to_states( net, initial ) );
                return to_python( attractors_json( net, found )["attractors"] );
            },
            py::arg( "net" ), py::arg( "agents" ) = py::none(), py::arg( "initial" ) = py::none(),
            "List of {'kind': 'stable' | 'limit', 'states': [...]}, ordered by smallest member." );

    m.def(
            "regulation_edges",
            [] ( const InteractionNetwork& net ) {
                std::vector<std::pair<std::string, std::string>> out;
                for ( const auto& [from, to] : regulation_graph( net ).edges() )
                    out.emplace_back( net.name( from ), net.name( to ) );
                return out;
            },
            py::arg( "net" ) );

    m.def(
            "scc_ordering",
            [] ( const InteractionNetwork& net ) {
                return from_partition( net, topological_ordering( scc_condensation( regulation_graph( net ) ) ) );
            },
            py::arg( "net" ) );

    m.def(
            "m_relation",
            [] ( const InteractionNetwork& net, const Names& from, const Names& to ) {
                const auto r = m_relation( net, to_agents( net, from ), to_agents( net, to ) );
                return py::make_tuple( r.holds, witness_dict( net, r.witness ) );
            },
            py::arg( "net" ), py::arg( "source" ), py::arg( "target" ),
            "(holds, witness) for source ~> target; the witness is None when the relation holds." );

    m.def(
            "check_modular",
            [] ( const InteractionNetwork& net, const py::object& partition ) {
                return to_python( modularity_json( net, is_modular_organisation( net, to_partition( net, partition ) ) ) );
            },
            py::arg( "net" ), py::arg( "partition" ) );

    m.def(
            "modular_equilibria",
            [] ( const InteractionNetwork& net, const py::object& partition, std::optional<States> initial, bool strict ) {
                return to_strings( net, modular_equilibria( net, to_partition( net, partition ), to_states( net, initial ),
                                                            strict ? Validation::Strict : Validation::Unchecked ) );
            },
            py::arg( "net" ), py::arg( "partition" ), py::arg( "initial" ) = py::none(), py::arg( "strict" ) = true );

    m.def(
            "separable",
            [] ( const InteractionNetwork& net, const Names& prefix, const Names& part ) -> py::object {
                const auto split = separable( net, to_agents( net, prefix ), to_agents( net, part ) );
                if ( !split )
                    return py::none();
                return py::make_tuple( to_names( net, split->first ), to_names( net, split->second ) );
            },
            py::arg( "net" ), py::arg( "prefix" ), py::arg( "part" ) );

    m.def(
            "elementary",
            [] ( const InteractionNetwork& net, const py::object& partition ) {
                const auto start = partition.is_none()
                                           ? topological_ordering( scc_condensation( regulation_graph( net ) ) )
                                           : to_partition( net, partition );
                return from_partition( net, elementary_organisation( net, start ) );
            },
            py::arg( "net" ), py::arg( "partition" ) = py::none(),
            "Elementary modular organisation refined from `partition` (default: the SCC ordering)." );

    m.def( "state_graph_dot", &state_graph_dot, py::arg( "net" ) );
    m.def(
            "regulation_dot",
            [] ( const InteractionNetwork& net ) { return regulation_dot( net, regulation_graph( net ) ); },
            py::arg( "net" ) );

    m.def(
            "verify",
            [] ( std::uint64_t seed, std::size_t networks, std::size_t min_agents, std::size_t max_agents, bool mutate ) {
                VerifyOptions options;
                options.seed = seed;
                options.networks = networks;
                options.min_agents = min_agents;
                options.max_agents = max_agents;
                options.mutate = mutate;
                const auto report = run_property_suite( options );
                py::dict out;
                py::dict props;
                for ( const auto& p : report.properties )
                    props[py::str( p.name )] = py::make_tuple( p.checked, p.failed );
                out["ok"] = report.ok();
                out["networks"] = report.networks;
                out["properties"] = props;
                out["counterexample"] = report.first_failure ? py::object( py::str( report.first_failure->network ) )
                                                             : py::object( py::none() );
                return out;
            },
            py::arg( "seed" ) = 42, py::arg( "networks" ) = 100, py::arg( "min_agents" ) = 5,
            py::arg( "max_agents" ) = 5, py::arg( "mutate" ) = false,
            "Randomised property suite; returns {'ok', 'networks', 'properties', 'counterexample'}." );
}
