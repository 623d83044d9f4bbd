#include "modnet/regulation.hpp"

#include "modnet/modularity.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace modnet
{

bool regulates( const InteractionNetwork& net, AgentId regulator, AgentId target )
{
    if ( net.is_input( target ) )
        return false;
    const std::uint32_t flip = std::uint32_t{ 1 } << regulator.index;
    const std::uint64_t count = net.state_count();
    for ( std::uint64_t bits = 0; bits < count; ++bits )
    {
        if ( bits & flip )
            continue;
        const PackedState s{ static_cast<std::uint32_t>( bits ) };
        if ( net.evaluate_unchecked( target, s ) != net.evaluate_unchecked( target, s.flipped( regulator ) ) )
            return true;
    }
    return false;
}

bool set_regulates( const InteractionNetwork& net, AgentSet regulators, AgentSet targets )
{
    for ( auto k : regulators )
        for ( auto l : targets )
            if ( regulates( net, k, l ) )
                return true;
    return false;
}

std::vector<std::pair<AgentId, AgentId>> RegulationGraph::edges() const
{
    std::vector<std::pair<AgentId, AgentId>> out;
    for ( std::uint32_t i = 0; i < _targets.size(); ++i )
        for ( auto t : _targets[i] )
            out.emplace_back( AgentId{ i }, t );
    return out;
}

RegulationGraph regulation_graph( const InteractionNetwork& net )
{
    RegulationGraph g( net.size() );
    for ( auto k : net.agents() )
        for ( auto l : net.agents() )
            if ( regulates( net, k, l ) )
                g.add_edge( k, l );
    return g;
}

std::size_t CondensationDag::component_of( AgentId a ) const
{
    for ( std::size_t c = 0; c < components.size(); ++c )
        if ( components[c].contains( a ) )
            return c;
    throw UnknownAgent( "#" + std::to_string( a.index ) );
}

CondensationDag scc_condensation( const RegulationGraph& g )
{
    const std::size_t n = g.size();
    std::vector<int> index( n, -1 ), low( n, 0 );
    std::vector<bool> on_stack( n, false );
    std::vector<std::uint32_t> stack;
    std::vector<AgentSet> found;
    int counter = 0;

    std::function<void( std::uint32_t )> visit = [&] ( std::uint32_t v ) {
        index[v] = low[v] = counter++;
        stack.push_back( v );
        on_stack[v] = true;
        for ( auto w : g.targets( AgentId{ v } ) )
        {
            if ( index[w.index] < 0 )
            {
                visit( w.index );
                low[v] = std::min( low[v], low[w.index] );
            }
            else if ( on_stack[w.index] )
            {
                low[v] = std::min( low[v], index[w.index] );
            }
        }
        if ( low[v] == index[v] )
        {
            AgentSet component;
            std::uint32_t w;
            do
            {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component.insert( AgentId{ w } );
            } while ( w != v );
            found.push_back( component );
        }
    };
    for ( std::uint32_t v = 0; v < n; ++v )
        if ( index[v] < 0 )
            visit( v );

    CondensationDag dag;
    dag.components = std::move( found );
    std::sort( dag.components.begin(), dag.components.end(),
               [] ( AgentSet x, AgentSet y ) { return ( *x.begin() ).index < ( *y.begin() ).index; } );

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for ( const auto& [from, to] : g.edges() )
    {
        const auto cf = dag.component_of( from );
        const auto ct = dag.component_of( to );
        if ( cf != ct )
            edges.emplace( cf, ct );
    }
    dag.edges.assign( edges.begin(), edges.end() );
    return dag;
}

namespace
{

std::vector<std::size_t> in_degrees( const CondensationDag& dag )
{
    std::vector<std::size_t> deg( dag.components.size(), 0 );
    for ( const auto& e : dag.edges )
        ++deg[e.second];
    return deg;
}

} // namespace

OrderedPartition topological_ordering( const CondensationDag& dag )
{
    // Components are sorted by smallest agent, so the smallest ready index wins ties.
    auto deg = in_degrees( dag );
    std::set<std::size_t> ready;
    for ( std::size_t c = 0; c < deg.size(); ++c )
        if ( deg[c] == 0 )
            ready.insert( c );

    std::vector<AgentSet> parts;
    while ( !ready.empty() )
    {
        const std::size_t c = *ready.begin();
        ready.erase( ready.begin() );
        parts.push_back( dag.components[c] );
        for ( const auto& e : dag.edges )
            if ( e.first == c && --deg[e.second] == 0 )
                ready.insert( e.second );
    }
    return OrderedPartition( std::move( parts ) );
}

std::optional<std::vector<OrderedPartition>> all_topological_orderings( const CondensationDag& dag,
                                                                        std::size_t limit )
{
    auto deg = in_degrees( dag );
    const std::size_t m = dag.components.size();
    std::vector<bool> used( m, false );
    std::vector<AgentSet> current;
    std::vector<OrderedPartition> out;
    bool overflow = false;

    std::function<void()> extend = [&] {
        if ( overflow )
            return;
        if ( current.size() == m )
        {
            if ( out.size() == limit )
            {
                overflow = true;
                return;
            }
            out.emplace_back( current );
            return;
        }
        for ( std::size_t c = 0; c < m; ++c )
        {
            if ( used[c] || deg[c] != 0 )
                continue;
            used[c] = true;
            current.push_back( dag.components[c] );
            for ( const auto& e : dag.edges )
                if ( e.first == c )
                    --deg[e.second];
            extend();
            for ( const auto& e : dag.edges )
                if ( e.first == c )
                    ++deg[e.second];
            current.pop_back();
            used[c] = false;
        }
    };
    extend();
    if ( overflow )
        return std::nullopt;
    return out;
}

} // namespace modnet
