#pragma once

#include "modnet/network.hpp"
#include "modnet/state_set.hpp"

#include <random>
#include <string>
#include <vector>

namespace modnet
{

using Rng = std::mt19937_64;

struct RandomNetworkOptions
{
    std::size_t agents = 5;
    std::size_t max_depth = 3;       // expression depth, leaves included
    double input_probability = 0.1;  // chance that an agent is left undefined
    double constant_probability = 0.08;
};

/// Random expression over `names` with depth at most `max_depth`.
Expr random_expression( Rng& rng, const std::vector<std::string>& names, std::size_t max_depth,
                        double constant_probability = 0.08 );

/// Agents are named a1..an. Every undefined agent is referenced by some definition, so the
/// network has exactly `options.agents` agents.
InteractionNetwork random_network( Rng& rng, const RandomNetworkOptions& options );

AgentSet random_agent_set( Rng& rng, AgentSet within );
/// Between one and four states drawn uniformly.
StateSet random_states( Rng& rng, std::size_t agents );

} // namespace modnet
