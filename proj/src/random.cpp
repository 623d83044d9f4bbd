#include "modnet/random.hpp"

#include <algorithm>

namespace modnet
{

Expr random_expression( Rng& rng, const std::vector<std::string>& names, std::size_t max_depth,
                        double constant_probability )
{
    std::uniform_real_distribution<double> unit( 0.0, 1.0 );
    std::uniform_int_distribution<std::size_t> pick( 0, names.size() - 1 );

    if ( max_depth <= 1 || unit( rng ) < 0.3 )
    {
        if ( names.empty() || unit( rng ) < constant_probability )
            return Expr::constant( unit( rng ) < 0.5 );
        return Expr::variable( names[pick( rng )] );
    }

    const double op = unit( rng );
    if ( op < 0.2 )
        return Expr::negation( random_expression( rng, names, max_depth - 1, constant_probability ) );

    std::uniform_int_distribution<std::size_t> arity( 2, 3 );
    std::vector<Expr> operands;
    for ( std::size_t k = arity( rng ); k > 0; --k )
        operands.push_back( random_expression( rng, names, max_depth - 1, constant_probability ) );
    return op < 0.6 ? Expr::conjunction( std::move( operands ) ) : Expr::disjunction( std::move( operands ) );
}

InteractionNetwork random_network( Rng& rng, const RandomNetworkOptions& options )
{
    std::vector<std::string> names;
    for ( std::size_t i = 1; i <= options.agents; ++i )
        names.push_back( "a" + std::to_string( i ) );

    std::uniform_real_distribution<double> unit( 0.0, 1.0 );
    std::vector<Definition> defs;
    std::vector<std::string> inputs;
    for ( const auto& name : names )
    {
        // At least one agent stays defined so inputs have somewhere to be referenced.
        if ( !defs.empty() && unit( rng ) < options.input_probability )
            inputs.push_back( name );
        else
            defs.push_back( Definition{ name, random_expression( rng, names, options.max_depth,
                                                                 options.constant_probability ) } );
    }
    if ( defs.empty() )
        return build_network( {} );

    std::uniform_int_distribution<std::size_t> pick( 0, defs.size() - 1 );
    for ( const auto& input : inputs )
    {
        std::vector<std::string> refs;
        for ( const auto& def : defs )
            def.body.collect_references( refs );
        if ( std::find( refs.begin(), refs.end(), input ) != refs.end() )
            continue;
        auto& target = defs[pick( rng )];
        std::vector<Expr> terms;
        terms.push_back( std::move( target.body ) );
        terms.push_back( Expr::variable( input ) );
        target.body = Expr::disjunction( std::move( terms ) );
    }
    return build_network( std::move( defs ) );
}

AgentSet random_agent_set( Rng& rng, AgentSet within )
{
    std::bernoulli_distribution coin( 0.5 );
    AgentSet out;
    for ( auto a : within )
        if ( coin( rng ) )
            out.insert( a );
    return out;
}

StateSet random_states( Rng& rng, std::size_t agents )
{
    StateSet out( agents );
    std::uniform_int_distribution<std::uint32_t> state( 0, static_cast<std::uint32_t>( out.universe_size() - 1 ) );
    std::uniform_int_distribution<int> count( 1, 4 );
    for ( int k = count( rng ); k > 0; --k )
        out.insert( PackedState{ state( rng ) } );
    return out;
}

} // namespace modnet
