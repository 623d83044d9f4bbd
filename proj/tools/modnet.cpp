// modnet: command-line front end for the analysis library.
//
//   modnet <command> [options] FILE
//
// Exit codes: 0 ok, 1 property or validation failure, 2 parse/usage error, 3 resource cap.

#include "modnet/dynamics.hpp"
#include "modnet/modularity.hpp"
#include "modnet/parser.hpp"
#include "modnet/regulation.hpp"
#include "modnet/report.hpp"
#include "modnet/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

using namespace modnet;
using nlohmann::json;

namespace
{

enum Exit
{
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kCap = 3,
};

struct Config
{
    std::string command;
    std::string file;
    std::string format = "text";
    std::string partition;
    std::string initial;
    std::uint64_t seed = 42;
    std::size_t samples = 100;
    std::size_t agents = 0;
    std::size_t min_agents = 5;
    std::size_t max_agents = 5;
    bool all_splits = false;
    bool all_orders = false;
    bool mutate = false;
    bool unchecked = false;
};

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::size_t agent_cap()
{
    const char* env = std::getenv( "MODNET_MAX_AGENTS" );
    if ( env == nullptr || *env == '\0' )
        return kMaxAgents;
    char* end = nullptr;
    const unsigned long value = std::strtoul( env, &end, 10 );
    if ( *end != '\0' )
        throw UsageError( "MODNET_MAX_AGENTS must be a non-negative integer" );
    // The variable can only tighten the cap.
    return std::min<std::size_t>( value, kMaxAgents );
}

std::string read_input( const std::string& path )
{
    if ( path == "-" )
        return std::string( std::istreambuf_iterator<char>( std::cin ), {} );
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw UsageError( "cannot read '" + path + "'" );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string join_states( const InteractionNetwork& net, const StateSet& states )
{
    std::string out;
    for ( const auto& s : states_json( net, states ) )
        out += ( out.empty() ? "" : " " ) + s.get<std::string>();
    return out;
}

std::string members( const InteractionNetwork& net, AgentSet agents )
{
    std::string out;
    for ( auto a : agents )
        out += ( out.empty() ? "" : "," ) + net.name( a );
    return out;
}

json agent_list( const InteractionNetwork& net, AgentSet agents )
{
    auto out = json::array();
    for ( auto a : agents )
        out.push_back( net.name( a ) );
    return out;
}

void require_format( const Config& cfg, std::initializer_list<const char*> allowed )
{
    for ( auto f : allowed )
        if ( cfg.format == f )
            return;
    throw UsageError( "format '" + cfg.format + "' is not available for " + cfg.command );
}

OrderedPartition partition_or_default( const InteractionNetwork& net, const Config& cfg )
{
    if ( !cfg.partition.empty() )
        return parse_partition( net, cfg.partition );
    return topological_ordering( scc_condensation( regulation_graph( net ) ) );
}

StateSet initial_states( const InteractionNetwork& net, const Config& cfg )
{
    if ( cfg.initial.empty() )
        return StateSet::full( net.size() );
    StateSet out( net.size() );
    std::stringstream in( cfg.initial );
    std::string item;
    while ( std::getline( in, item, ',' ) )
        out.insert( parse_state( net.size(), item ) );
    return out;
}

int cmd_attractors( const InteractionNetwork& net, const Config& cfg )
{
    if ( cfg.format == "dot" )
    {
        std::cout << state_graph_dot( net );
        return kOk;
    }
    require_format( cfg, { "text", "json" } );
    const auto found = attractors( net, net.agents(), initial_states( net, cfg ) );
    if ( cfg.format == "json" )
    {
        std::cout << attractors_json( net, found ).dump( 2 ) << '\n';
        return kOk;
    }
    for ( const auto& attractor : found )
    {
        if ( attractor.kind == AttractorKind::Stable )
            std::cout << "stable: ";
        else
            std::cout << "limit(" << attractor.states.size() << "): ";
        std::cout << join_states( net, attractor.states ) << '\n';
    }
    return kOk;
}

int cmd_state_graph( const InteractionNetwork& net, const Config& cfg )
{
    if ( cfg.format != "json" )
    {
        std::cout << state_graph_dot( net );
        return kOk;
    }
    const std::size_t n = net.size();
    const StateSet all = StateSet::full( n );
    auto edges = json::array();
    for ( auto s : all )
        for_each_move( net, net.agents(), s, [&] ( AgentId a, PackedState t ) {
            edges.push_back( { { "from", format_state( n, s ) }, { "to", format_state( n, t ) }, { "agent", net.name( a ) } } );
        } );
    json out = attractors_json( net, attractors( net, net.agents(), all ) );
    out["states"] = states_json( net, all );
    out["transitions"] = std::move( edges );
    std::cout << out.dump( 2 ) << '\n';
    return kOk;
}

int cmd_regulation( const InteractionNetwork& net, const Config& cfg )
{
    const auto g = regulation_graph( net );
    if ( cfg.format == "dot" )
        std::cout << regulation_dot( net, g );
    else if ( cfg.format == "json" )
        std::cout << regulation_json( net, g ).dump( 2 ) << '\n';
    else
        for ( const auto& [from, to] : g.edges() )
            std::cout << net.name( from ) << " -> " << net.name( to ) << '\n';
    return kOk;
}

int cmd_scc_order( const InteractionNetwork& net, const Config& cfg )
{
    const auto dag = scc_condensation( regulation_graph( net ) );
    if ( cfg.format == "dot" )
    {
        std::cout << condensation_dot( net, dag );
        return kOk;
    }
    require_format( cfg, { "text", "json" } );

    std::vector<OrderedPartition> orderings;
    if ( cfg.all_orders )
    {
        auto all = all_topological_orderings( dag );
        if ( !all )
        {
            std::cerr << "modnet: more than 10000 topological orderings\n";
            return kCap;
        }
        orderings = std::move( *all );
    }
    else
    {
        orderings.push_back( topological_ordering( dag ) );
    }

    if ( cfg.format == "json" )
    {
        json out{ { "agents", net.names() }, { "partition", partition_json( net, orderings.front() ) } };
        if ( cfg.all_orders )
        {
            out["orderings"] = json::array();
            for ( const auto& pi : orderings )
                out["orderings"].push_back( partition_json( net, pi ) );
        }
        std::cout << out.dump( 2 ) << '\n';
        return kOk;
    }
    for ( const auto& pi : orderings )
        std::cout << format_partition( net, pi ) << '\n';
    return kOk;
}

int cmd_check_mo( const InteractionNetwork& net, const Config& cfg )
{
    require_format( cfg, { "text", "json" } );
    const auto report = is_modular_organisation( net, partition_or_default( net, cfg ) );
    if ( cfg.format == "json" )
    {
        std::cout << modularity_json( net, report ).dump( 2 ) << '\n';
    }
    else
    {
        std::cout << "partition: " << format_partition( net, report.partition ) << '\n';
        for ( const auto& v : report.verdicts )
        {
            std::cout << "prefix " << v.index + 1 << ": " << ( v.holds ? "holds" : "fails" );
            if ( v.witness )
                std::cout << " (" << describe_witness( net, *v.witness ) << ")";
            std::cout << '\n';
        }
        std::cout << "modular organisation: " << ( report.holds() ? "yes" : "no" ) << '\n';
    }
    return report.holds() ? kOk : kFailure;
}

int cmd_compose( const InteractionNetwork& net, const Config& cfg )
{
    require_format( cfg, { "text", "json" } );
    const auto pi = partition_or_default( net, cfg );
    const StateSet initial = initial_states( net, cfg );
    const bool validated = is_modular_organisation( net, pi ).holds();
    if ( !validated && !cfg.unchecked )
    {
        std::cerr << "modnet: " << format_partition( net, pi )
                  << " is not a modular organisation (use --unchecked to compose anyway)\n";
        return kFailure;
    }
    if ( !validated )
        std::cerr << "modnet: warning: composing an unvalidated partition; the result may miss equilibria\n";

    const StateSet modular = modular_equilibria( net, pi, initial, Validation::Unchecked );
    const StateSet oracle = equilibria( net, pi.carrier(), initial );
    const bool match = modular == oracle;

    if ( cfg.format == "json" )
    {
        json out{ { "agents", net.names() },
                  { "partition", partition_json( net, pi ) },
                  { "validated", validated },
                  { "equilibria", states_json( net, modular ) },
                  { "oracle", states_json( net, oracle ) },
                  { "oracle_match", match } };
        std::cout << out.dump( 2 ) << '\n';
    }
    else
    {
        std::cout << "partition: " << format_partition( net, pi ) << '\n';
        std::cout << "equilibria(" << modular.size() << "): " << join_states( net, modular ) << '\n';
        std::cout << "oracle: " << ( match ? "match" : "mismatch" );
        if ( !match )
            std::cout << " (global: " << join_states( net, oracle ) << ")";
        std::cout << '\n';
    }
    // A mismatch is only a failure when equality is guaranteed.
    return validated && !match ? kFailure : kOk;
}

int cmd_elementary( const InteractionNetwork& net, const Config& cfg )
{
    require_format( cfg, { "text", "json" } );
    const auto start = partition_or_default( net, cfg );
    const auto report = elementary_decomposition( net, start );
    const auto& pi = report.partition;

    json splits = json::array();
    std::vector<std::string> split_lines;
    if ( cfg.all_splits )
        for ( std::size_t i = 0; i < start.size(); ++i )
        {
            if ( start[i].size() < 2 || start[i].size() > kMaxSeparableSize )
                continue;
            for ( const auto& [first, second] : all_separations( net, start.prefix( i ), start[i] ) )
            {
                splits.push_back( { { "part", i + 1 }, { "first", agent_list( net, first ) },
                                    { "second", agent_list( net, second ) } } );
                split_lines.push_back( "split of part " + std::to_string( i + 1 ) + ": " + members( net, first ) +
                                       " | " + members( net, second ) );
            }
        }

    if ( cfg.format == "json" )
    {
        json out{ { "agents", net.names() }, { "start", partition_json( net, start ) }, { "partition", partition_json( net, pi ) } };
        out["not_separable"] = json::array();
        for ( auto part : pi.parts() )
            if ( part.size() >= 2 && part.size() <= kMaxSeparableSize )
                out["not_separable"].push_back( agent_list( net, part ) );
        out["skipped"] = json::array();
        for ( auto part : report.skipped )
            out["skipped"].push_back( agent_list( net, part ) );
        if ( cfg.all_splits )
            out["splits"] = std::move( splits );
        std::cout << out.dump( 2 ) << '\n';
        return kOk;
    }

    std::cout << "elementary: " << format_partition( net, pi ) << '\n';
    for ( auto part : pi.parts() )
        if ( part.size() >= 2 && part.size() <= kMaxSeparableSize )
            std::cout << "not separable: " << members( net, part ) << '\n';
    for ( auto part : report.skipped )
        std::cout << "skipped (more than " << kMaxSeparableSize << " agents): " << members( net, part ) << '\n';
    for ( const auto& line : split_lines )
        std::cout << line << '\n';
    return kOk;
}

int cmd_verify( const Config& cfg )
{
    require_format( cfg, { "text", "json" } );
    VerifyOptions options;
    options.seed = cfg.seed;
    options.networks = cfg.samples;
    options.min_agents = cfg.agents != 0 ? cfg.agents : cfg.min_agents;
    options.max_agents = cfg.agents != 0 ? cfg.agents : cfg.max_agents;
    options.mutate = cfg.mutate;
    if ( options.min_agents == 0 || options.min_agents > options.max_agents || options.max_agents > 10 )
        throw UsageError( "agent counts must satisfy 1 <= min <= max <= 10" );

    const auto report = run_property_suite( options );
    if ( cfg.format == "json" )
    {
        json props = json::array();
        for ( const auto& p : report.properties )
            props.push_back( { { "name", p.name }, { "checked", p.checked }, { "failed", p.failed } } );
        json out{ { "seed", cfg.seed }, { "networks", report.networks }, { "properties", std::move( props ) },
                  { "ok", report.ok() } };
        if ( report.first_failure )
            out["counterexample"] = { { "property", report.first_failure->property },
                                      { "network", report.first_failure->network },
                                      { "detail", report.first_failure->detail } };
        std::cout << out.dump( 2 ) << '\n';
    }
    else
    {
        std::cout << "networks: " << report.networks << " (seed " << cfg.seed << ")\n";
        for ( const auto& p : report.properties )
            std::cout << p.name << ": " << p.checked - p.failed << "/" << p.checked << " passed\n";
        if ( report.first_failure )
        {
            std::cout << "counterexample for " << report.first_failure->property;
            if ( !report.first_failure->detail.empty() )
                std::cout << " (" << report.first_failure->detail << ")";
            std::cout << ":\n" << report.first_failure->network;
        }
        std::cout << ( report.ok() ? "all properties hold\n" : "FAILED\n" );
    }
    return report.ok() ? kOk : kFailure;
}

int run( const Config& cfg )
{
    if ( cfg.command == "verify" )
        return cmd_verify( cfg );
    if ( cfg.file.empty() )
        throw UsageError( cfg.command + " needs an input FILE" );

    const auto net = parse_network( read_input( cfg.file ), agent_cap() );
    if ( cfg.command == "attractors" )
        return cmd_attractors( net, cfg );
    if ( cfg.command == "state-graph" )
        return cmd_state_graph( net, cfg );
    if ( cfg.command == "regulation" )
        return cmd_regulation( net, cfg );
    if ( cfg.command == "scc-order" )
        return cmd_scc_order( net, cfg );
    if ( cfg.command == "check-mo" )
        return cmd_check_mo( net, cfg );
    if ( cfg.command == "compose" )
        return cmd_compose( net, cfg );
    return cmd_elementary( net, cfg );
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Analyse asynchronous Boolean interaction networks" };
    app.name( "modnet" );
    Config cfg;

    app.add_option( "command", cfg.command, "What to compute" )
            ->required()
            ->check( CLI::IsMember( { "attractors", "state-graph", "regulation", "scc-order", "check-mo", "compose",
                                      "elementary", "verify" } ) );
    app.add_option( "file", cfg.file, "Network in .bnet format ('-' reads stdin)" );
    app.add_option( "-f,--format", cfg.format, "Output format" )->check( CLI::IsMember( { "text", "json", "dot" } ) );
    app.add_option( "-p,--partition", cfg.partition, "Ordered partition, e.g. 'a1|a2,a3|a4'" );
    app.add_option( "--initial", cfg.initial, "Comma-separated initial states (default: all states)" );
    app.add_option( "--seed", cfg.seed, "Seed for verify" );
    app.add_option( "--samples", cfg.samples, "Number of random networks for verify" );
    app.add_option( "--agents", cfg.agents, "Agents per random network for verify (overrides the range)" );
    app.add_option( "--min-agents", cfg.min_agents, "Smallest random network for verify" );
    app.add_option( "--max-agents", cfg.max_agents, "Largest random network for verify" );
    app.add_flag( "--all-splits", cfg.all_splits, "List every passing bipartition of each part" );
    app.add_flag( "--all-orders", cfg.all_orders, "List every topological ordering (up to 10000)" );
    app.add_flag( "--mutate", cfg.mutate, "Run verify against a corrupted equilibria operator" );
    app.add_flag( "--unchecked", cfg.unchecked, "Compose even if the partition is not a modular organisation" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::CallForHelp& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e );
        return kUsage;
    }

    try
    {
        return run( cfg );
    }
    catch ( const TooManyAgents& e )
    {
        std::cerr << "modnet: " << e.what() << '\n';
        return kCap;
    }
    catch ( const BudgetExceeded& e )
    {
        std::cerr << "modnet: " << e.what() << '\n';
        return kCap;
    }
    catch ( const PartitionNotValidated& e )
    {
        std::cerr << "modnet: " << e.what() << '\n';
        return kFailure;
    }
    catch ( const SyntaxError& e )
    {
        std::cerr << cfg.file << ":" << e.what() << '\n';
        return kUsage;
    }
    catch ( const Error& e )
    {
        std::cerr << "modnet: " << e.what() << '\n';
        return kUsage;
    }
    catch ( const UsageError& e )
    {
        std::cerr << "modnet: " << e.what() << '\n';
        return kUsage;
    }
    catch ( const std::invalid_argument& e )
    {
        std::cerr << "modnet: " << e.what() << '\n';
        return kUsage;
    }
}
