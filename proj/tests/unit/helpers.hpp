#pragma once

#include "oracle.hpp"

#include "modnet/parser.hpp"
#include "modnet/state_set.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#ifndef MODNET_FIXTURES
#error "MODNET_FIXTURES must point at tests/fixtures"
#endif

namespace testing
{

inline std::string read_fixture( const std::string& name )
{
    std::ifstream in( std::string{ MODNET_FIXTURES } + "/" + name );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline modnet::InteractionNetwork fixture( const std::string& name )
{
    return modnet::parse_network( read_fixture( name ) );
}

/// States written as in the examples, e.g. { "110", "111" }.
inline modnet::StateSet states( const modnet::InteractionNetwork& net, std::initializer_list<const char*> items )
{
    modnet::StateSet out( net.size() );
    for ( auto item : items )
        out.insert( modnet::parse_state( net.size(), item ) );
    return out;
}

inline modnet::AgentSet agents( const modnet::InteractionNetwork& net, std::initializer_list<const char*> names )
{
    modnet::AgentSet out;
    for ( auto name : names )
        out.insert( net.id( name ) );
    return out;
}

inline oracle::States to_oracle( const modnet::StateSet& set )
{
    oracle::States out;
    for ( auto s : set )
        out.insert( s.bits );
    return out;
}

inline modnet::StateSet from_oracle( std::size_t n, const oracle::States& set )
{
    modnet::StateSet out( n );
    for ( auto s : set )
        out.insert( modnet::PackedState{ s } );
    return out;
}

} // namespace testing
