#include "modnet/modularity.hpp"

#include "scc.hpp"

#include <algorithm>
#include <string>

namespace modnet
{

OrderedPartition::OrderedPartition( std::vector<AgentSet> parts ) : _parts{ std::move( parts ) }
{
    for ( std::size_t i = 0; i < _parts.size(); ++i )
    {
        if ( _parts[i].empty() )
            throw NotAPartition( "part " + std::to_string( i + 1 ) + " is empty" );
        if ( !_parts[i].disjoint( _carrier ) )
            throw NotAPartition( "part " + std::to_string( i + 1 ) + " overlaps an earlier part" );
        _carrier |= _parts[i];
    }
}

AgentSet OrderedPartition::prefix( std::size_t i ) const
{
    AgentSet out;
    for ( std::size_t k = 0; k < i && k < _parts.size(); ++k )
        out |= _parts[k];
    return out;
}

namespace
{

std::string_view trim( std::string_view s )
{
    const auto first = s.find_first_not_of( " \t" );
    if ( first == std::string_view::npos )
        return {};
    const auto last = s.find_last_not_of( " \t" );
    return s.substr( first, last - first + 1 );
}

std::vector<std::string_view> split( std::string_view s, char sep )
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while ( true )
    {
        const auto pos = s.find( sep, start );
        out.push_back( s.substr( start, pos == std::string_view::npos ? std::string_view::npos : pos - start ) );
        if ( pos == std::string_view::npos )
            return out;
        start = pos + 1;
    }
}

void check_agents( const InteractionNetwork& net, AgentSet agents )
{
    if ( !agents.is_subset_of( net.agents() ) )
        throw NotAPartition( "partition names agents outside the network" );
}

/// Lifted moves between terminal classes of a quotient.
struct ClassGraph
{
    const std::vector<std::vector<std::uint32_t>>& adjacency;

    [[nodiscard]] std::size_t node_count() const { return adjacency.size(); }
    [[nodiscard]] std::size_t start( std::uint32_t ) const { return 0; }
    bool next( std::uint32_t v, std::size_t& cursor, std::uint32_t& w ) const
    {
        if ( cursor >= adjacency[v].size() )
            return false;
        w = adjacency[v][cursor++];
        return true;
    }
};

} // namespace

OrderedPartition parse_partition( const InteractionNetwork& net, std::string_view spec )
{
    std::vector<AgentSet> parts;
    for ( auto part_text : split( spec, '|' ) )
    {
        AgentSet part;
        for ( auto member : split( part_text, ',' ) )
        {
            member = trim( member );
            if ( member.empty() )
                throw NotAPartition( "empty member in partition '" + std::string{ spec } + "'" );
            const AgentId a = net.id( member );
            if ( part.contains( a ) )
                throw NotAPartition( "agent '" + std::string{ member } + "' listed twice" );
            part.insert( a );
        }
        parts.push_back( part );
    }
    return OrderedPartition( std::move( parts ) );
}

std::string format_partition( const InteractionNetwork& net, const OrderedPartition& pi )
{
    std::string out;
    for ( std::size_t i = 0; i < pi.size(); ++i )
    {
        if ( i != 0 )
            out += " | ";
        bool first = true;
        for ( auto a : pi[i] )
        {
            if ( !first )
                out += ',';
            first = false;
            out += net.name( a );
        }
    }
    return out;
}

OrderedPartition fold( const OrderedPartition& pi, std::size_t i, std::size_t j )
{
    if ( i > j || j >= pi.size() )
        throw IndexOutOfRange( "cannot fold parts " + std::to_string( i ) + ".." + std::to_string( j ) + " of " +
                               std::to_string( pi.size() ) );
    std::vector<AgentSet> parts( pi.parts().begin(), pi.parts().begin() + static_cast<std::ptrdiff_t>( i ) );
    AgentSet merged;
    for ( std::size_t k = i; k <= j; ++k )
        merged |= pi[k];
    parts.push_back( merged );
    parts.insert( parts.end(), pi.parts().begin() + static_cast<std::ptrdiff_t>( j + 1 ), pi.parts().end() );
    return OrderedPartition( std::move( parts ) );
}

MRelation m_relation( const InteractionNetwork& net, AgentSet from, AgentSet to )
{
    // Closure at S' = S implies closure for every S' ⊆ S, so one check decides the relation.
    const StateSet joint = equilibria( net, from | to, StateSet::full( net.size() ) );
    const StateSet settled = equilibria( net, from, joint );

    MRelation out;
    for ( auto e : settled )
    {
        for ( auto a : to - net.inputs() )
        {
            const PackedState t = e.with( a, net.evaluate_unchecked( a, e ) );
            if ( !settled.contains( t ) )
            {
                out.holds = false;
                out.witness = EscapeWitness{ e, a, t };
                return out;
            }
        }
    }
    return out;
}

bool ModularityReport::holds() const
{
    return !first_failure().has_value();
}

std::optional<std::size_t> ModularityReport::first_failure() const
{
    for ( const auto& v : verdicts )
        if ( !v.holds )
            return v.index;
    return std::nullopt;
}

ModularityReport is_modular_organisation( const InteractionNetwork& net, const OrderedPartition& pi )
{
    check_agents( net, pi.carrier() );
    ModularityReport report{ pi, {} };
    for ( std::size_t i = 0; i < pi.size(); ++i )
    {
        auto relation = m_relation( net, pi.prefix( i ), pi[i] );
        report.verdicts.push_back( PrefixVerdict{ i, relation.holds, relation.witness } );
    }
    return report;
}

CompositionStep compose_step( const InteractionNetwork& net, const QuotientGraph& q, AgentSet next )
{
    if ( !next.disjoint( q.evolving() ) )
        throw OverlappingAgentSets( "composed agent sets must be disjoint" );

    const auto candidates = q.terminal_classes();
    std::vector<std::uint32_t> local( q.size(), UINT32_MAX );
    for ( std::uint32_t k = 0; k < candidates.size(); ++k )
        local[candidates[k]] = k;

    std::vector<std::vector<std::uint32_t>> adjacency( candidates.size() );
    std::vector<std::uint8_t> escapes( candidates.size(), 0 );
    for ( std::uint32_t k = 0; k < candidates.size(); ++k )
    {
        for ( auto s : q[candidates[k]].members )
            for_each_move( net, next, s, [&] ( AgentId, PackedState t ) {
                const auto d = q.class_of( t );
                if ( !d || local[*d] == UINT32_MAX )
                    escapes[k] = 1;
                else if ( local[*d] != k )
                    adjacency[k].push_back( local[*d] );
            } );
        std::sort( adjacency[k].begin(), adjacency[k].end() );
        adjacency[k].erase( std::unique( adjacency[k].begin(), adjacency[k].end() ), adjacency[k].end() );
    }

    std::vector<std::vector<PackedState>> survivors;
    const ClassGraph graph{ adjacency };
    detail::Tarjan tarjan( graph );
    for ( std::uint32_t k = 0; k < candidates.size(); ++k )
        tarjan.run_from( k, [&] ( std::span<const std::uint32_t> members, bool terminal ) {
            if ( !terminal )
                return;
            if ( std::any_of( members.begin(), members.end(), [&] ( auto m ) { return escapes[m] != 0; } ) )
                return;
            std::vector<PackedState> merged;
            for ( auto m : members )
            {
                const auto& states = q[candidates[m]].members;
                merged.insert( merged.end(), states.begin(), states.end() );
            }
            survivors.push_back( std::move( merged ) );
        } );

    auto refined = QuotientBuilder::from_classes( net.size(), q.evolving() | next, std::move( survivors ) );
    StateSet flat = refined.carrier();
    return CompositionStep{ std::move( flat ), std::move( refined ) };
}

StateSet modular_equilibria( const InteractionNetwork& net, const OrderedPartition& pi, const StateSet& initial,
                             Validation validation )
{
    check_agents( net, pi.carrier() );
    if ( validation == Validation::Strict && !is_modular_organisation( net, pi ).holds() )
        throw PartitionNotValidated( "ordered partition is not a modular organisation" );
    if ( pi.size() == 0 )
        return initial;

    const StateSet start = orbit( net, pi.carrier(), initial );
    StateSet current = equilibria( net, pi[0], start );
    QuotientGraph q = quotient( net, pi[0], current );
    for ( std::size_t i = 1; i < pi.size(); ++i )
    {
        auto step = compose_step( net, q, pi[i] );
        current = std::move( step.equilibria );
        q = std::move( step.quotient );
    }
    return current;
}

namespace
{

/// Nonempty proper subsets of `part`, by size and then lexicographically by member index.
template <class Visit>
void for_each_split( AgentSet part, Visit&& visit )
{
    const auto members = part.members();
    const std::size_t n = members.size();
    std::vector<std::size_t> pick;
    for ( std::size_t k = 1; k < n; ++k )
    {
        pick.resize( k );
        for ( std::size_t i = 0; i < k; ++i )
            pick[i] = i;
        while ( true )
        {
            AgentSet first;
            for ( auto i : pick )
                first.insert( members[i] );
            if ( !visit( first, part - first ) )
                return;

            std::size_t i = k;
            while ( i > 0 && pick[i - 1] == n - k + i - 1 )
                --i;
            if ( i == 0 )
                break;
            ++pick[i - 1];
            for ( std::size_t j = i; j < k; ++j )
                pick[j] = pick[j - 1] + 1;
        }
    }
}

void check_separable_args( AgentSet prefix, AgentSet part )
{
    if ( !prefix.disjoint( part ) )
        throw OverlappingAgentSets( "module overlaps its prefix" );
    if ( part.size() > kMaxSeparableSize )
        throw BudgetExceeded( "module of " + std::to_string( part.size() ) + " agents exceeds the separation limit of " +
                              std::to_string( kMaxSeparableSize ) );
}

bool splits( const InteractionNetwork& net, AgentSet prefix, AgentSet first, AgentSet second )
{
    return m_relation( net, prefix, first ).holds && m_relation( net, prefix | first, second ).holds;
}

} // namespace

std::optional<std::pair<AgentSet, AgentSet>> separable( const InteractionNetwork& net, AgentSet prefix,
                                                        AgentSet part )
{
    check_separable_args( prefix, part );
    std::optional<std::pair<AgentSet, AgentSet>> found;
    for_each_split( part, [&] ( AgentSet first, AgentSet second ) {
        if ( splits( net, prefix, first, second ) )
            found.emplace( first, second );
        return !found;
    } );
    return found;
}

std::vector<std::pair<AgentSet, AgentSet>> all_separations( const InteractionNetwork& net, AgentSet prefix,
                                                            AgentSet part )
{
    check_separable_args( prefix, part );
    std::vector<std::pair<AgentSet, AgentSet>> out;
    for_each_split( part, [&] ( AgentSet first, AgentSet second ) {
        if ( splits( net, prefix, first, second ) )
            out.emplace_back( first, second );
        return true;
    } );
    return out;
}

ElementaryReport elementary_decomposition( const InteractionNetwork& net, const OrderedPartition& pi )
{
    if ( !is_modular_organisation( net, pi ).holds() )
        throw PartitionNotValidated( "elementary search needs a modular organisation" );

    std::vector<AgentSet> parts = pi.parts();
    std::vector<AgentSet> skipped;
    AgentSet prefix;
    std::size_t i = 0;
    while ( i < parts.size() )
    {
        const AgentSet part = parts[i];
        if ( part.size() > kMaxSeparableSize )
        {
            skipped.push_back( part );
        }
        else if ( part.size() >= 2 )
        {
            if ( auto split = separable( net, prefix, part ) )
            {
                parts[i] = split->first;
                parts.insert( parts.begin() + static_cast<std::ptrdiff_t>( i ) + 1, split->second );
                continue;
            }
        }
        prefix |= part;
        ++i;
    }
    return ElementaryReport{ OrderedPartition( std::move( parts ) ), std::move( skipped ) };
}

} // namespace modnet
