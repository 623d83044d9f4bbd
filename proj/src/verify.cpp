#include "modnet/verify.hpp"

#include "modnet/dynamics.hpp"
#include "modnet/modularity.hpp"
#include "modnet/parser.hpp"
#include "modnet/random.hpp"
#include "modnet/regulation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace modnet
{

namespace
{

using Psi = std::function<StateSet( const InteractionNetwork&, AgentSet, const StateSet& )>;

/// Drops the smallest equilibrium whenever there are at least two.
StateSet corrupted_equilibria( const InteractionNetwork& net, AgentSet evolving, const StateSet& initial )
{
    StateSet out = equilibria( net, evolving, initial );
    if ( out.size() >= 2 )
        out.erase( *out.min() );
    return out;
}

OrderedPartition random_partition( Rng& rng, AgentSet agents )
{
    const std::size_t n = agents.size();
    std::uniform_int_distribution<std::size_t> bucket( 0, n == 0 ? 0 : n - 1 );
    std::vector<AgentSet> parts( n );
    for ( auto a : agents )
        parts[bucket( rng )].insert( a );
    std::erase_if( parts, [] ( AgentSet p ) { return p.empty(); } );
    std::shuffle( parts.begin(), parts.end(), rng );
    return OrderedPartition( std::move( parts ) );
}

class Suite
{
public:
    Suite( const VerifyOptions& options, VerifyReport& report ) : _options{ options }, _report{ report }
    {
        _psi = options.mutate ? Psi( corrupted_equilibria ) : Psi( [] ( auto& net, auto x, auto& s ) {
            return equilibria( net, x, s );
        } );
    }

    void check( const InteractionNetwork& net, Rng& rng )
    {
        _net = &net;
        operator_laws( rng );
        nonregulation( rng );
        scc_ordering();
        composition( rng );
    }

private:
    void record( const std::string& property, bool ok, const std::string& detail = {} )
    {
        auto it = std::find_if( _report.properties.begin(), _report.properties.end(),
                                [&] ( const PropertyTally& t ) { return t.name == property; } );
        if ( it == _report.properties.end() )
        {
            _report.properties.push_back( PropertyTally{ property, 0, 0 } );
            it = std::prev( _report.properties.end() );
        }
        ++it->checked;
        if ( ok )
            return;
        ++it->failed;
        if ( !_report.first_failure )
            _report.first_failure = Counterexample{ property, render_network( *_net ), detail };
    }

    void operator_laws( Rng& rng )
    {
        const auto& net = *_net;
        const std::size_t n = net.size();
        for ( std::size_t k = 0; k < _options.operator_samples; ++k )
        {
            const AgentSet x = random_agent_set( rng, net.agents() );
            const StateSet s1 = random_states( rng, n );
            const StateSet s2 = random_states( rng, n );
            const StateSet psi1 = _psi( net, x, s1 );
            const StateSet psi2 = _psi( net, x, s2 );
            const StateSet both = s1 | s2;
            const StateSet psi_both = _psi( net, x, both );

            record( "psi-idempotency", _psi( net, x, psi1 ) == psi1 );
            record( "psi-upper-continuity", psi_both == ( psi1 | psi2 ) );
            record( "psi-monotony", psi1.is_subset_of( psi_both ) );

            const StateSet orb = orbit( net, x, s1 );
            record( "omega-extensive-idempotent", s1.is_subset_of( orb ) && orbit( net, x, orb ) == orb );
            record( "psi-in-orbit-and-closed", psi1.is_subset_of( orb ) && orbit( net, x, psi1 ) == psi1 );
        }
    }

    void nonregulation( Rng& rng )
    {
        const auto& net = *_net;
        for ( std::size_t k = 0; k < _options.nonregulation_samples; ++k )
        {
            const AgentSet xi = random_agent_set( rng, net.agents() );
            const AgentSet xj = random_agent_set( rng, net.agents() - xi );
            const bool ok = set_regulates( net, xj, xi ) || m_relation( net, xi, xj ).holds;
            record( "nonregulation-independence", ok );
        }
    }

    void scc_ordering()
    {
        const auto& net = *_net;
        const auto dag = scc_condensation( regulation_graph( net ) );
        const auto ordering = topological_ordering( dag );
        record( "scc-ordering-modular", is_modular_organisation( net, ordering ).holds(),
                "ordering " + format_partition( net, ordering ) );
        if ( auto all = all_topological_orderings( dag, _options.max_orderings ) )
            for ( const auto& pi : *all )
                record( "scc-ordering-modular", is_modular_organisation( net, pi ).holds(),
                        "ordering " + format_partition( net, pi ) );
        _validated.clear();
        _validated.push_back( ordering );
    }

    void composition( Rng& rng )
    {
        const auto& net = *_net;
        const auto candidate = random_partition( rng, net.agents() );
        if ( is_modular_organisation( net, candidate ).holds() )
            _validated.push_back( candidate );

        for ( const auto& pi : _validated )
        {
            for ( std::size_t k = 0; k < _options.composition_samples; ++k )
            {
                const StateSet initial = random_states( rng, net.size() );
                const StateSet modular = modular_equilibria( net, pi, initial, Validation::Unchecked );
                record( "modular-composition", modular == _psi( net, net.agents(), initial ),
                        "partition " + format_partition( net, pi ) );
            }
            if ( pi.size() >= 2 )
            {
                std::uniform_int_distribution<std::size_t> index( 0, pi.size() - 1 );
                std::size_t i = index( rng ), j = index( rng );
                if ( i > j )
                    std::swap( i, j );
                const auto folded = fold( pi, i, j );
                record( "folding-preserves-modularity", is_modular_organisation( net, folded ).holds(),
                        "folded " + format_partition( net, folded ) );
            }
        }
    }

    const VerifyOptions& _options;
    VerifyReport& _report;
    Psi _psi;
    const InteractionNetwork* _net = nullptr;
    std::vector<OrderedPartition> _validated;
};

} // namespace

VerifyReport run_property_suite( const VerifyOptions& options )
{
    if ( options.min_agents == 0 || options.min_agents > options.max_agents || options.max_agents > 10 )
        throw std::invalid_argument( "agent counts must satisfy 1 <= min <= max <= 10" );

    VerifyReport report;
    Rng rng( options.seed );
    std::uniform_int_distribution<std::size_t> size( options.min_agents, options.max_agents );
    Suite suite( options, report );
    for ( std::size_t k = 0; k < options.networks; ++k )
    {
        RandomNetworkOptions net_options;
        net_options.agents = size( rng );
        const auto net = random_network( rng, net_options );
        suite.check( net, rng );
        ++report.networks;
    }
    return report;
}

} // namespace modnet
