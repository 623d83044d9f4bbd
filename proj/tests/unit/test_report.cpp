#include "helpers.hpp"

#include "modnet/regulation.hpp"
#include "modnet/report.hpp"

#include <doctest.h>

#include <regex>

using namespace modnet;

namespace
{

std::size_t count_matches( const std::string& text, const std::regex& re )
{
    return static_cast<std::size_t>( std::distance( std::sregex_iterator( text.begin(), text.end(), re ), {} ) );
}

const std::regex kNode( R"(^  "[01]+"( \[[^\]]*\])?;$)", std::regex::multiline );
const std::regex kEdge( R"(^  "[01]+" -> "[01]+")", std::regex::multiline );

} // namespace

TEST_CASE( "example 1 state graph: 16 nodes, 24 edges, shaded attractors" )
{
    const auto dot = state_graph_dot( testing::fixture( "example1.bnet" ) );
    CHECK( dot.rfind( "digraph", 0 ) == 0 );
    CHECK( count_matches( dot, kNode ) == 16 );
    CHECK( count_matches( dot, kEdge ) == 24 );
    CHECK( dot.find( "\"1100\" [style=filled, fillcolor=lightgrey]" ) != std::string::npos );
    CHECK( count_matches( dot, std::regex( "fillcolor=gray35" ) ) == 8 );
    CHECK( dot.find( "\"0100\" -> \"0000\" [label=\"a2\"]" ) != std::string::npos );
}

TEST_CASE( "empty network renders an empty digraph" )
{
    const auto net = parse_network( "" );
    CHECK( state_graph_dot( net ) == "digraph state_graph {\n}\n" );
    CHECK( count_matches( regulation_dot( net, regulation_graph( net ) ), kEdge ) == 0 );
}

TEST_CASE( "example 2 regulation graph" )
{
    const auto net = testing::fixture( "example2.bnet" );
    const auto dot = regulation_dot( net, regulation_graph( net ) );
    CHECK( dot.find( "\"a1\" -> \"a1\";" ) != std::string::npos );
    CHECK( dot.find( "\"a2\" -> \"a1\";" ) != std::string::npos );
    CHECK( dot.find( "\"a1\" -> \"a2\"" ) == std::string::npos );
    CHECK( count_matches( dot, std::regex( " -> " ) ) == 2 );

    const auto json = regulation_json( net, regulation_graph( net ) );
    CHECK( json["edges"] == nlohmann::json::parse( R"([["a1","a1"],["a2","a1"]])" ) );
}

TEST_CASE( "inputs are drawn as diamonds" )
{
    const auto net = parse_network( "x = u;" );
    CHECK( regulation_dot( net, regulation_graph( net ) ).find( "\"u\" [shape=diamond]" ) != std::string::npos );
}

TEST_CASE( "condensation rendering" )
{
    const auto net = testing::fixture( "example1.bnet" );
    const auto dot = condensation_dot( net, scc_condensation( regulation_graph( net ) ) );
    CHECK( dot.find( "c1 [label=\"{a2,a3}\"]" ) != std::string::npos );
    CHECK( dot.find( "c0 -> c1;" ) != std::string::npos );
    CHECK( dot.find( "c1 -> c2;" ) != std::string::npos );
}

TEST_CASE( "attractor JSON" )
{
    const auto net = testing::fixture( "example4.bnet" );
    const auto json = attractors_json( net, attractors( net, net.agents(), StateSet::full( 3 ) ) );
    CHECK( json["agents"] == nlohmann::json::parse( R"(["a1","a2","a3"])" ) );
    REQUIRE( json["attractors"].size() == 2 );
    CHECK( json["attractors"][0]["kind"] == "limit" );
    CHECK( json["attractors"][0]["states"] == nlohmann::json::parse( R"(["000","001","100","101"])" ) );
    CHECK( json["attractors"][1]["kind"] == "stable" );
    CHECK( json["attractors"][1]["states"] == nlohmann::json::parse( R"(["111"])" ) );
}

TEST_CASE( "modularity JSON carries 1-based prefixes and witnesses" )
{
    const auto net = testing::fixture( "example5.bnet" );
    const auto report = is_modular_organisation( net, parse_partition( net, "a1|a2|a3" ) );
    const auto json = modularity_json( net, report );
    CHECK( json["holds"] == false );
    CHECK( json["partition"] == nlohmann::json::parse( R"([["a1"],["a2"],["a3"]])" ) );
    REQUIRE( json["verdicts"].size() == 3 );
    CHECK( json["verdicts"][0]["prefix"] == 1 );
    CHECK_FALSE( json["verdicts"][0].contains( "witness" ) );
    CHECK( json["verdicts"][2]["witness"] == nlohmann::json::parse( R"({"state":"110","agent":"a3","to":"111"})" ) );
    CHECK( describe_witness( net, *report.verdicts[2].witness ) == "110 -a3-> 111" );
}

TEST_CASE( "renderings are deterministic" )
{
    const auto net = testing::fixture( "example5.bnet" );
    CHECK( state_graph_dot( net ) == state_graph_dot( testing::fixture( "example5.bnet" ) ) );
    CHECK( states_json( net, StateSet::full( 3 ) ).dump() ==
           R"(["000","001","010","011","100","101","110","111"])" );
}
