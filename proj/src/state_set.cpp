#include "modnet/state_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace modnet
{

StateSet::StateSet( std::size_t agents ) : _agents{ agents }
{
    if ( agents > kMaxAgents )
        throw TooManyAgents( agents, kMaxAgents );
    _words.assign( ( universe_size() + 63 ) / 64, 0 );
}

StateSet::StateSet( std::size_t agents, std::initializer_list<PackedState> states ) : StateSet( agents )
{
    for ( auto s : states )
        insert( s );
}

StateSet StateSet::full( std::size_t agents )
{
    StateSet out( agents );
    const std::uint64_t n = out.universe_size();
    for ( std::size_t w = 0; w < out._words.size(); ++w )
    {
        const std::uint64_t remaining = n - 64 * w;
        out._words[w] = remaining >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << remaining ) - 1;
    }
    out._count = n;
    return out;
}

bool StateSet::insert( PackedState s )
{
    if ( s.bits >= universe_size() )
        throw std::out_of_range( "state outside the state space" );
    auto& word = _words[s.bits >> 6];
    const std::uint64_t bit = std::uint64_t{ 1 } << ( s.bits & 63u );
    if ( word & bit )
        return false;
    word |= bit;
    ++_count;
    return true;
}

bool StateSet::erase( PackedState s )
{
    if ( !contains( s ) )
        return false;
    _words[s.bits >> 6] &= ~( std::uint64_t{ 1 } << ( s.bits & 63u ) );
    --_count;
    return true;
}

void StateSet::clear()
{
    std::fill( _words.begin(), _words.end(), 0 );
    _count = 0;
}

std::optional<PackedState> StateSet::min() const
{
    if ( empty() )
        return std::nullopt;
    return *begin();
}

std::vector<PackedState> StateSet::to_vector() const
{
    std::vector<PackedState> out;
    out.reserve( _count );
    for ( auto s : *this )
        out.push_back( s );
    return out;
}

void StateSet::check_compatible( const StateSet& other ) const
{
    if ( _agents != other._agents )
        throw std::invalid_argument( "state sets over different networks" );
}

void StateSet::recount()
{
    _count = 0;
    for ( auto w : _words )
        _count += static_cast<std::uint64_t>( std::popcount( w ) );
}

bool StateSet::is_subset_of( const StateSet& other ) const
{
    check_compatible( other );
    for ( std::size_t w = 0; w < _words.size(); ++w )
        if ( _words[w] & ~other._words[w] )
            return false;
    return true;
}

bool StateSet::intersects( const StateSet& other ) const
{
    check_compatible( other );
    for ( std::size_t w = 0; w < _words.size(); ++w )
        if ( _words[w] & other._words[w] )
            return true;
    return false;
}

StateSet& StateSet::operator|=( const StateSet& other )
{
    check_compatible( other );
    for ( std::size_t w = 0; w < _words.size(); ++w )
        _words[w] |= other._words[w];
    recount();
    return *this;
}

StateSet& StateSet::operator&=( const StateSet& other )
{
    check_compatible( other );
    for ( std::size_t w = 0; w < _words.size(); ++w )
        _words[w] &= other._words[w];
    recount();
    return *this;
}

StateSet& StateSet::operator-=( const StateSet& other )
{
    check_compatible( other );
    for ( std::size_t w = 0; w < _words.size(); ++w )
        _words[w] &= ~other._words[w];
    recount();
    return *this;
}

} // namespace modnet
