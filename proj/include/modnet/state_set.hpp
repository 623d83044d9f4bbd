#pragma once

#include "modnet/network.hpp"

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace modnet
{

/// Dense membership bitmap over all 2^n states of an n-agent network.
class StateSet
{
public:
    StateSet() : StateSet( 0 ) {}
    explicit StateSet( std::size_t agents );
    StateSet( std::size_t agents, std::initializer_list<PackedState> states );

    static StateSet full( std::size_t agents );
    template <class Range>
    static StateSet from( std::size_t agents, const Range& states )
    {
        StateSet out( agents );
        for ( auto s : states )
            out.insert( s );
        return out;
    }

    [[nodiscard]] std::size_t agent_count() const { return _agents; }
    [[nodiscard]] std::uint64_t universe_size() const { return std::uint64_t{ 1 } << _agents; }
    [[nodiscard]] std::uint64_t size() const { return _count; }
    [[nodiscard]] bool empty() const { return _count == 0; }

    [[nodiscard]] bool contains( PackedState s ) const
    {
        return s.bits < universe_size() && ( ( _words[s.bits >> 6] >> ( s.bits & 63u ) ) & 1u );
    }
    /// Returns true if the state was absent. Throws std::out_of_range for states with bits above n-1.
    bool insert( PackedState s );
    bool erase( PackedState s );
    void clear();

    [[nodiscard]] std::optional<PackedState> min() const;
    [[nodiscard]] std::vector<PackedState> to_vector() const;

    [[nodiscard]] bool is_subset_of( const StateSet& other ) const;
    [[nodiscard]] bool intersects( const StateSet& other ) const;

    StateSet& operator|=( const StateSet& other );
    StateSet& operator&=( const StateSet& other );
    StateSet& operator-=( const StateSet& other );
    friend StateSet operator|( StateSet lhs, const StateSet& rhs ) { return lhs |= rhs; }
    friend StateSet operator&( StateSet lhs, const StateSet& rhs ) { return lhs &= rhs; }
    friend StateSet operator-( StateSet lhs, const StateSet& rhs ) { return lhs -= rhs; }

    friend bool operator==( const StateSet& lhs, const StateSet& rhs )
    {
        return lhs._agents == rhs._agents && lhs._count == rhs._count && lhs._words == rhs._words;
    }

    /// Members in ascending order.
    class iterator
    {
    public:
        using value_type = PackedState;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator( const StateSet* set, std::size_t word ) : _set{ set }, _word{ word } { settle(); }

        PackedState operator*() const
        {
            return PackedState{ static_cast<std::uint32_t>( ( _word << 6 ) + std::countr_zero( _bits ) ) };
        }
        iterator& operator++()
        {
            _bits &= _bits - 1;
            if ( _bits == 0 )
            {
                ++_word;
                settle();
            }
            return *this;
        }
        iterator operator++( int )
        {
            auto copy = *this;
            ++*this;
            return copy;
        }
        bool operator==( const iterator& o ) const { return _word == o._word && _bits == o._bits; }

    private:
        void settle()
        {
            const auto& words = _set->_words;
            while ( _word < words.size() && words[_word] == 0 )
                ++_word;
            _bits = _word < words.size() ? words[_word] : 0;
        }

        const StateSet* _set = nullptr;
        std::size_t _word = 0;
        std::uint64_t _bits = 0;
    };

    [[nodiscard]] iterator begin() const { return iterator{ this, 0 }; }
    [[nodiscard]] iterator end() const { return iterator{ this, _words.size() }; }

private:
    void check_compatible( const StateSet& other ) const;
    void recount();

    std::size_t _agents = 0;
    std::vector<std::uint64_t> _words;
    std::uint64_t _count = 0;
};

} // namespace modnet
