#pragma once

#include "modnet/network.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace modnet
{

/// Parses the `.bnet` text format:
///
///     network := { stmt }
///     stmt    := IDENT "=" expr [";"]
///     expr    := and { "|" and }
///     and     := unary { "&" unary }
///     unary   := "!" unary | atom
///     atom    := IDENT | "0" | "1" | "(" expr ")"
///
/// `#` starts a comment running to the end of the line. Chains of the same binary
/// operator become one n-ary node; parenthesised groups stay nested.
///
/// Throws SyntaxError (1-based line and column), DuplicateDefinition, TooManyAgents.
InteractionNetwork parse_network( std::string_view text, std::size_t max_agents = kMaxAgents );

/// Statement list without building a network.
std::vector<Definition> parse_definitions( std::string_view text );

Expr parse_expression( std::string_view text );

/// One `name = expr;` line per non-input agent, in agent order.
std::string render_network( const InteractionNetwork& net );
std::string render_expression( const Expr& e );

} // namespace modnet
