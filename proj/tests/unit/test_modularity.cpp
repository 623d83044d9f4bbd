#include "helpers.hpp"

#include "modnet/modularity.hpp"
#include "modnet/random.hpp"
#include "modnet/regulation.hpp"

#include <doctest.h>

using namespace modnet;
using testing::agents;
using testing::states;

namespace
{

StateSet global_oracle( const InteractionNetwork& net, AgentSet x, const StateSet& s )
{
    const oracle::Reachability reach( net, x.mask() );
    return testing::from_oracle( net.size(), reach.equilibria( testing::to_oracle( s ) ) );
}

OrderedPartition random_partition( Rng& rng, AgentSet within )
{
    std::vector<AgentSet> parts( within.size() );
    std::uniform_int_distribution<std::size_t> bucket( 0, parts.empty() ? 0 : parts.size() - 1 );
    for ( auto a : within )
        parts[bucket( rng )].insert( a );
    std::erase_if( parts, [] ( AgentSet p ) { return p.empty(); } );
    std::shuffle( parts.begin(), parts.end(), rng );
    return OrderedPartition( std::move( parts ) );
}

} // namespace

TEST_CASE( "ordered partitions" )
{
    const auto net = testing::fixture( "example1.bnet" );
    const auto pi = parse_partition( net, " a1 | a2, a3|a4 " );
    REQUIRE( pi.size() == 3 );
    CHECK( pi[1] == agents( net, { "a2", "a3" } ) );
    CHECK( pi.carrier() == net.agents() );
    CHECK( pi.prefix( 0 ).empty() );
    CHECK( pi.prefix( 2 ) == agents( net, { "a1", "a2", "a3" } ) );
    CHECK( format_partition( net, pi ) == "a1 | a2,a3 | a4" );

    CHECK_THROWS_AS( parse_partition( net, "a1|a1" ), NotAPartition );
    CHECK_THROWS_AS( parse_partition( net, "a1,a1" ), NotAPartition );
    CHECK_THROWS_AS( parse_partition( net, "a1||a2" ), NotAPartition );
    CHECK_THROWS_AS( parse_partition( net, "a1|a9" ), UnknownAgent );
    CHECK_THROWS_AS( OrderedPartition( { AgentSet{} } ), NotAPartition );
}

TEST_CASE( "folding contiguous parts" )
{
    const auto net = testing::fixture( "example1.bnet" );
    const auto pi = parse_partition( net, "a1|a2,a3|a4" );
    CHECK( format_partition( net, fold( pi, 0, 1 ) ) == "a1,a2,a3 | a4" );
    CHECK( format_partition( net, fold( pi, 1, 2 ) ) == "a1 | a2,a3,a4" );
    CHECK( fold( pi, 1, 1 ) == pi );
    CHECK( fold( pi, 0, 2 ).size() == 1 );
    CHECK_THROWS_AS( fold( pi, 2, 1 ), IndexOutOfRange );
    CHECK_THROWS_AS( fold( pi, 0, 3 ), IndexOutOfRange );
}

TEST_CASE( "example 1: the condensation ordering is a modular organisation" )
{
    const auto net = testing::fixture( "example1.bnet" );
    const auto pi = parse_partition( net, "a1|a2,a3|a4" );
    const auto report = is_modular_organisation( net, pi );
    CHECK( report.holds() );
    CHECK( report.verdicts.size() == 3 );
    const auto all = StateSet::full( 4 );
    const auto modular = modular_equilibria( net, pi, all );
    CHECK( modular == global_oracle( net, net.agents(), all ) );
    CHECK( modular == states( net, { "1100", "0000", "0001", "0010", "0011", "0100", "0101", "0110", "0111" } ) );
}

TEST_CASE( "a single part is always a modular organisation" )
{
    for ( auto name : { "example1.bnet", "example2.bnet", "example3.bnet", "example4.bnet", "example5.bnet" } )
    {
        const auto net = testing::fixture( name );
        const OrderedPartition whole( { net.agents() } );
        CHECK( is_modular_organisation( net, whole ).holds() );
        const auto all = StateSet::full( net.size() );
        CHECK( modular_equilibria( net, whole, all ) == equilibria( net, net.agents(), all ) );
    }
}

TEST_CASE( "example 3: composition order matters" )
{
    const auto net = testing::fixture( "example3.bnet" );
    const auto a12 = agents( net, { "a1", "a2" } );
    const auto a3 = agents( net, { "a3" } );
    CHECK( m_relation( net, a12, a3 ).holds );
    // Psi_A(S) = {111} and E is a subset of it, so {a3} ~> {a1,a2} holds too;
    // the full quantifier over every S' agrees.
    CHECK( m_relation( net, a3, a12 ).holds );
    CHECK( oracle::m_relation_all_subsets( net, a3.mask(), a12.mask() ) );

    const auto all = StateSet::full( 3 );
    for ( auto spec : { "a1,a2|a3", "a3|a1,a2" } )
    {
        const auto pi = parse_partition( net, spec );
        CHECK( is_modular_organisation( net, pi ).holds() );
        CHECK( modular_equilibria( net, pi, all ) == states( net, { "111" } ) );
    }
}

TEST_CASE( "example 4: separable although strongly connected" )
{
    const auto net = testing::fixture( "example4.bnet" );
    const auto a2 = agents( net, { "a2" } );
    const auto a13 = agents( net, { "a1", "a3" } );
    CHECK( m_relation( net, a2, a13 ).holds );
    CHECK( is_modular_organisation( net, parse_partition( net, "a2|a1,a3" ) ).holds() );

    const auto split = separable( net, AgentSet{}, net.agents() );
    REQUIRE( split.has_value() );
    CHECK( split->first == a2 );
    CHECK( split->second == a13 );
    CHECK_FALSE( separable( net, a2, a13 ).has_value() );

    const auto every = all_separations( net, AgentSet{}, net.agents() );
    REQUIRE( every.size() >= 2 );
    CHECK( every.front() == *split );
    CHECK( std::find( every.begin(), every.end(), std::pair{ a13, a2 } ) != every.end() );

    const auto elementary = elementary_decomposition( net, OrderedPartition( { net.agents() } ) );
    CHECK( format_partition( net, elementary.partition ) == "a2 | a1,a3" );
    CHECK( elementary.skipped.empty() );

    CHECK( modular_equilibria( net, parse_partition( net, "a2|a1,a3" ), StateSet::full( 3 ) ) ==
           states( net, { "111", "000", "100", "101", "001" } ) );
}

TEST_CASE( "example 5: a1|a2|a3 fails with an a3 escape" )
{
    const auto net = testing::fixture( "example5.bnet" );
    const auto report = is_modular_organisation( net, parse_partition( net, "a1|a2|a3" ) );
    CHECK_FALSE( report.holds() );
    REQUIRE( report.first_failure() == 2u );
    CHECK( report.verdicts[0].holds );
    CHECK( report.verdicts[1].holds );
    const auto& w = report.verdicts[2].witness;
    REQUIRE( w.has_value() );
    CHECK( w->agent == net.id( "a3" ) );
    CHECK( format_state( 3, w->state ) == "110" );
    CHECK( format_state( 3, w->target ) == "111" );

    // The witness state lies in a terminal class of the a1,a2 evolution and the target does not.
    const auto a12 = agents( net, { "a1", "a2" } );
    const auto attractors_12 = equilibria( net, a12, StateSet::full( 3 ) );
    CHECK( attractors_12.contains( w->state ) );
    CHECK_FALSE( attractors_12.contains( w->target ) );

    const auto relation = m_relation( net, a12, agents( net, { "a3" } ) );
    CHECK_FALSE( relation.holds );
    CHECK( relation.witness->agent == net.id( "a3" ) );
}

TEST_CASE( "example 5: {a2,a3} cannot be separated after {a1}" )
{
    const auto net = testing::fixture( "example5.bnet" );
    const auto a1 = agents( net, { "a1" } );
    const auto a23 = agents( net, { "a2", "a3" } );
    CHECK_FALSE( separable( net, a1, a23 ).has_value() );
    CHECK( all_separations( net, a1, a23 ).empty() );

    const auto pi = parse_partition( net, "a1|a2,a3" );
    REQUIRE( is_modular_organisation( net, pi ).holds() );
    CHECK( elementary_organisation( net, pi ) == pi );
    CHECK( elementary_organisation( net, topological_ordering( scc_condensation( regulation_graph( net ) ) ) ) ==
           pi );
}

TEST_CASE( "example 5: composing a non-modular split is sound but loses equilibria" )
{
    const auto net = testing::fixture( "example5.bnet" );
    const auto pi = parse_partition( net, "a1,a2|a3" );
    CHECK_FALSE( is_modular_organisation( net, pi ).holds() );
    CHECK_THROWS_AS( modular_equilibria( net, pi, StateSet::full( 3 ) ), PartitionNotValidated );

    const auto all = StateSet::full( 3 );
    const auto q = quotient( net, pi[0], all );
    const auto step = compose_step( net, q, pi[1] );
    // Both terminal classes of a1,a2 escape under a3 into transient classes.
    CHECK( step.equilibria.empty() );
    const auto unchecked = modular_equilibria( net, pi, all, Validation::Unchecked );
    CHECK( unchecked.is_subset_of( global_oracle( net, net.agents(), all ) ) );
    CHECK( global_oracle( net, net.agents(), all ) == all );
}

TEST_CASE( "composition steps" )
{
    const auto net = testing::fixture( "example1.bnet" );
    const auto all = StateSet::full( 4 );
    const auto q = quotient( net, agents( net, { "a1" } ), all );
    CHECK_THROWS_AS( compose_step( net, q, agents( net, { "a1", "a2" } ) ), OverlappingAgentSets );

    const auto step = compose_step( net, q, agents( net, { "a2", "a3" } ) );
    CHECK( step.quotient.evolving() == agents( net, { "a1", "a2", "a3" } ) );
    for ( const auto& c : step.quotient.classes() )
        CHECK( c.terminal );
    CHECK( step.equilibria == step.quotient.carrier() );

    // An empty partition leaves the initial states alone.
    const auto some = states( net, { "1010" } );
    CHECK( modular_equilibria( net, OrderedPartition{}, some ) == some );
}

TEST_CASE( "the M-relation is reflexive" )
{
    Rng rng( 4 );
    for ( int k = 0; k < 50; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 2 + k % 4;
        const auto net = random_network( rng, options );
        const auto x = random_agent_set( rng, net.agents() );
        CHECK( m_relation( net, x, x ).holds );
    }
}

TEST_CASE( "deciding the M-relation at S alone matches the quantifier over every subset" )
{
    Rng rng( 12 );
    std::size_t both = 0, neither = 0;
    for ( int k = 0; k < 60; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 2 + k % 2;
        const auto net = random_network( rng, options );
        const std::uint32_t n = static_cast<std::uint32_t>( net.size() );
        for ( std::uint32_t from = 0; from < ( 1u << n ); ++from )
            for ( std::uint32_t to = 0; to < ( 1u << n ); ++to )
            {
                if ( from & to )
                    continue;
                const bool fast = m_relation( net, AgentSet{ from }, AgentSet{ to } ).holds;
                REQUIRE( fast == oracle::m_relation_all_subsets( net, from, to ) );
                ( fast ? both : neither )++;
            }
    }
    CHECK( both > 0 );
    CHECK( neither > 0 );
}

TEST_CASE( "the M-relation is equivalent to Psi_{Xi ∪ Xj} being fixed by Psi_Xi" )
{
    Rng rng( 21 );
    for ( int k = 0; k < 100; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 3 + k % 3;
        const auto net = random_network( rng, options );
        const auto xi = random_agent_set( rng, net.agents() );
        const auto xj = random_agent_set( rng, net.agents() - xi );
        const bool holds = m_relation( net, xi, xj ).holds;
        for ( int j = 0; j < 5; ++j )
        {
            const auto s = random_states( rng, net.size() );
            const auto joint = equilibria( net, xi | xj, s );
            // Whenever the relation holds, the characterisation holds for every S'.
            if ( holds )
                REQUIRE( equilibria( net, xi, joint ) == joint );
        }
        // At S' = S the characterisation decides the relation.
        const auto joint = equilibria( net, xi | xj, StateSet::full( net.size() ) );
        REQUIRE( holds == ( equilibria( net, xi, joint ) == joint ) );
    }
}

TEST_CASE( "non-regulation implies the M-relation" )
{
    Rng rng( 33 );
    std::size_t exercised = 0;
    for ( int k = 0; k < 200; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 3 + k % 4;
        const auto net = random_network( rng, options );
        const auto xi = random_agent_set( rng, net.agents() );
        const auto xj = random_agent_set( rng, net.agents() - xi );
        if ( set_regulates( net, xj, xi ) )
            continue;
        ++exercised;
        REQUIRE( m_relation( net, xi, xj ).holds );
    }
    CHECK( exercised > 20 );
}

TEST_CASE( "every topological ordering of the condensation is a modular organisation" )
{
    Rng rng( 41 );
    for ( int k = 0; k < 100; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 3 + k % 5;
        const auto net = random_network( rng, options );
        const auto dag = scc_condensation( regulation_graph( net ) );
        REQUIRE( is_modular_organisation( net, topological_ordering( dag ) ).holds() );
        if ( auto all = all_topological_orderings( dag, 100 ) )
            for ( const auto& pi : *all )
                REQUIRE( is_modular_organisation( net, pi ).holds() );
    }
}

TEST_CASE( "modular composition recovers the global equilibria" )
{
    Rng rng( 51 );
    std::size_t random_validated = 0;
    for ( int k = 0; k < 120; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 3 + k % 4;
        const auto net = random_network( rng, options );
        std::vector<OrderedPartition> candidates{ topological_ordering( scc_condensation( regulation_graph( net ) ) ) };
        for ( int j = 0; j < 4; ++j )
            candidates.push_back( random_partition( rng, net.agents() ) );

        for ( std::size_t c = 0; c < candidates.size(); ++c )
        {
            const auto& pi = candidates[c];
            const bool valid = is_modular_organisation( net, pi ).holds();
            if ( c == 0 )
                REQUIRE( valid );
            else if ( valid )
                ++random_validated;
            for ( int j = 0; j < 3; ++j )
            {
                const auto s0 = j == 0 ? StateSet::full( net.size() ) : random_states( rng, net.size() );
                const auto expected = global_oracle( net, net.agents(), s0 );
                const auto modular = modular_equilibria( net, pi, s0, Validation::Unchecked );
                if ( valid )
                    REQUIRE( modular == expected );
                else
                    REQUIRE( modular.is_subset_of( expected ) );
            }
        }
    }
    CHECK( random_validated > 10 );
}

TEST_CASE( "two-module composition on a sub-carrier" )
{
    Rng rng( 61 );
    for ( int k = 0; k < 150; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 3 + k % 4;
        const auto net = random_network( rng, options );
        const auto xi = random_agent_set( rng, net.agents() );
        const auto xj = random_agent_set( rng, net.agents() - xi );
        if ( xi.empty() || xj.empty() || !m_relation( net, xi, xj ).holds )
            continue;
        const OrderedPartition pi( { xi, xj } );
        for ( int j = 0; j < 4; ++j )
        {
            const auto s = random_states( rng, net.size() );
            REQUIRE( modular_equilibria( net, pi, s ) == equilibria( net, xi | xj, s ) );
        }
    }
}

TEST_CASE( "folding preserves modular organisations" )
{
    Rng rng( 71 );
    for ( int k = 0; k < 100; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 3 + k % 5;
        const auto net = random_network( rng, options );
        const auto pi = topological_ordering( scc_condensation( regulation_graph( net ) ) );
        for ( std::size_t i = 0; i < pi.size(); ++i )
            for ( std::size_t j = i; j < pi.size(); ++j )
            {
                const auto folded = fold( pi, i, j );
                REQUIRE( is_modular_organisation( net, folded ).holds() );
                REQUIRE( modular_equilibria( net, folded, StateSet::full( net.size() ) ) ==
                         equilibria( net, net.agents(), StateSet::full( net.size() ) ) );
            }
    }
}

TEST_CASE( "elementary decompositions are modular and have no separable part" )
{
    Rng rng( 81 );
    for ( int k = 0; k < 80; ++k )
    {
        RandomNetworkOptions options;
        options.agents = 3 + k % 4;
        const auto net = random_network( rng, options );
        const auto start = topological_ordering( scc_condensation( regulation_graph( net ) ) );
        const auto report = elementary_decomposition( net, start );
        const auto& pi = report.partition;
        REQUIRE( is_modular_organisation( net, pi ).holds() );
        CHECK( pi.size() >= start.size() );
        CHECK( pi.carrier() == net.agents() );
        for ( std::size_t i = 0; i < pi.size(); ++i )
            if ( pi[i].size() >= 2 )
                REQUIRE_FALSE( separable( net, pi.prefix( i ), pi[i] ).has_value() );
        REQUIRE( modular_equilibria( net, pi, StateSet::full( net.size() ) ) ==
                 equilibria( net, net.agents(), StateSet::full( net.size() ) ) );
    }
}

TEST_CASE( "elementary search needs a modular organisation" )
{
    const auto net = testing::fixture( "example5.bnet" );
    CHECK_THROWS_AS( elementary_decomposition( net, parse_partition( net, "a1|a2|a3" ) ), PartitionNotValidated );
    const auto single = parse_network( "a = !a" );
    CHECK( elementary_organisation( single, OrderedPartition( { single.agents() } ) ).size() == 1 );
}

TEST_CASE( "the separation search refuses parts above its budget" )
{
    std::string text;
    for ( int i = 0; i < 16; ++i )
        text += "x" + std::to_string( i ) + " = x" + std::to_string( ( i + 1 ) % 16 ) + ";\n";
    const auto net = parse_network( text );
    CHECK_THROWS_AS( separable( net, AgentSet{}, net.agents() ), BudgetExceeded );
    CHECK_THROWS_AS( all_separations( net, AgentSet{}, net.agents() ), BudgetExceeded );
    const auto report = elementary_decomposition( net, OrderedPartition( { net.agents() } ) );
    REQUIRE( report.skipped.size() == 1 );
    CHECK( report.skipped[0] == net.agents() );
    CHECK( report.partition.size() == 1 );
    CHECK_THROWS_AS( separable( net, net.agents(), net.agents() ), OverlappingAgentSets );
}

TEST_CASE( "partitions must stay inside the network" )
{
    const auto net = testing::fixture( "example2.bnet" );
    const OrderedPartition outside( { AgentSet{ AgentId{ 5 } } } );
    CHECK_THROWS_AS( is_modular_organisation( net, outside ), NotAPartition );
}
