#pragma once

#include "modnet/dynamics.hpp"
#include "modnet/network.hpp"
#include "modnet/state_set.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace modnet
{

/// Sequence of nonempty, pairwise disjoint agent sets. The carrier is their union.
class OrderedPartition
{
public:
    OrderedPartition() = default;
    /// Throws NotAPartition on empty or overlapping parts.
    explicit OrderedPartition( std::vector<AgentSet> parts );

    [[nodiscard]] std::size_t size() const { return _parts.size(); }
    [[nodiscard]] const std::vector<AgentSet>& parts() const { return _parts; }
    [[nodiscard]] AgentSet operator[]( std::size_t i ) const { return _parts.at( i ); }
    [[nodiscard]] AgentSet carrier() const { return _carrier; }
    /// Union of parts [0, i).
    [[nodiscard]] AgentSet prefix( std::size_t i ) const;

    friend bool operator==( const OrderedPartition&, const OrderedPartition& ) = default;

private:
    std::vector<AgentSet> _parts;
    AgentSet _carrier;
};

/// Parses "a1|a2,a3|a4": parts split on '|', members on ','. Whitespace is ignored.
/// Throws UnknownAgent, NotAPartition or std::invalid_argument.
OrderedPartition parse_partition( const InteractionNetwork& net, std::string_view spec );
std::string format_partition( const InteractionNetwork& net, const OrderedPartition& pi );

/// Replaces parts i..j (0-based, inclusive) by their union. Throws IndexOutOfRange.
OrderedPartition fold( const OrderedPartition& pi, std::size_t i, std::size_t j );

/// A move of `agent` from an equilibrium `state` to `target` outside the equilibria.
struct EscapeWitness
{
    PackedState state;
    AgentId agent;
    PackedState target;
};

struct MRelation
{
    bool holds = true;
    std::optional<EscapeWitness> witness;
};

/// Whether E = Psi_from(Psi_{from ∪ to}(S)) is closed under the moves of `to`.
/// On failure the witness is the smallest escaping state, then the smallest agent.
MRelation m_relation( const InteractionNetwork& net, AgentSet from, AgentSet to );

struct PrefixVerdict
{
    std::size_t index; // part index, 0-based
    bool holds;
    std::optional<EscapeWitness> witness;
};

struct ModularityReport
{
    OrderedPartition partition;
    std::vector<PrefixVerdict> verdicts;

    [[nodiscard]] bool holds() const;
    /// First failing part, if any.
    [[nodiscard]] std::optional<std::size_t> first_failure() const;
};

/// Checks (X_1 ∪ ... ∪ X_{i-1}) ⤳ X_i for every part. Throws NotAPartition when a part
/// names agents outside the network.
ModularityReport is_modular_organisation( const InteractionNetwork& net, const OrderedPartition& pi );

struct CompositionStep
{
    StateSet equilibria;
    QuotientGraph quotient; // classes of the joint evolving set, all terminal
};

/// One stage of the quotient composition: the terminal classes of `q` are lifted along
/// the moves of `next`; classes whose lifted closure stays among terminal classes and
/// lies in a terminal lifted component survive, merged per component.
/// Throws OverlappingAgentSets.
CompositionStep compose_step( const InteractionNetwork& net, const QuotientGraph& q, AgentSet next );

enum class Validation
{
    Strict,    // throw PartitionNotValidated if pi is not a modular organisation
    Unchecked, // compose anyway
};

/// Left-to-right quotient composition of the module equilibria of `pi`, started from the
/// orbit of `initial` under the carrier of `pi`.
StateSet modular_equilibria( const InteractionNetwork& net, const OrderedPartition& pi, const StateSet& initial,
                             Validation validation = Validation::Strict );

/// Largest module the brute-force separation search accepts.
inline constexpr std::size_t kMaxSeparableSize = 15;

/// First ordered split (first, second) of `part` with prefix ⤳ first and
/// prefix ∪ first ⤳ second. Candidates for `first` go by size, then by member indices.
/// Throws BudgetExceeded when |part| > kMaxSeparableSize.
std::optional<std::pair<AgentSet, AgentSet>> separable( const InteractionNetwork& net, AgentSet prefix,
                                                        AgentSet part );

/// Every passing split, in the same order separable() tries them.
std::vector<std::pair<AgentSet, AgentSet>> all_separations( const InteractionNetwork& net, AgentSet prefix,
                                                            AgentSet part );

struct ElementaryReport
{
    OrderedPartition partition;
    std::vector<AgentSet> skipped; // parts too large for the brute-force search
};

/// Splits the leftmost separable part until none is left. Throws PartitionNotValidated
/// if `pi` is not a modular organisation.
ElementaryReport elementary_decomposition( const InteractionNetwork& net, const OrderedPartition& pi );

inline OrderedPartition elementary_organisation( const InteractionNetwork& net, const OrderedPartition& pi )
{
    return elementary_decomposition( net, pi ).partition;
}

} // namespace modnet
