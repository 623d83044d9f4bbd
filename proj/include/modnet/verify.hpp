#pragma once

#include "modnet/network.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modnet
{

/// Randomised check of the equilibria operator laws and the modular composition results.
struct VerifyOptions
{
    std::uint64_t seed = 42;
    std::size_t networks = 100;
    std::size_t min_agents = 5;
    std::size_t max_agents = 5;
    std::size_t operator_samples = 20; // (X, S') draws per network for the operator laws
    std::size_t nonregulation_samples = 20;    // disjoint (Xi, Xj) draws per network
    std::size_t composition_samples = 5;
    std::size_t max_orderings = 100;
    /// Swap the equilibria operator used by the checks for a corrupted one; the suite must fail.
    bool mutate = false;
};

struct PropertyTally
{
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
};

struct Counterexample
{
    std::string property;
    std::string network; // .bnet text
    std::string detail;
};

struct VerifyReport
{
    std::vector<PropertyTally> properties;
    std::optional<Counterexample> first_failure;
    std::size_t networks = 0;

    [[nodiscard]] bool ok() const { return !first_failure.has_value(); }
};

/// Throws std::invalid_argument when the agent range is empty or above 10.
VerifyReport run_property_suite( const VerifyOptions& options );

} // namespace modnet
