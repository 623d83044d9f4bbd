#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace modnet::detail
{

/// Iterative Tarjan over an implicit graph. `Graph` provides
///
///     std::size_t node_count() const;
///     Cursor start( std::uint32_t v ) const;
///     bool next( std::uint32_t v, Cursor& cursor, std::uint32_t& w ) const;
///
/// Components are reported in completion order, i.e. every component is reported after
/// all components it can reach. A component is terminal when no edge leaves it.
template <class Graph>
class Tarjan
{
    using Cursor = decltype( std::declval<const Graph&>().start( 0 ) );
    static constexpr std::uint32_t kDone = std::numeric_limits<std::uint32_t>::max();

public:
    explicit Tarjan( const Graph& graph )
            : _graph{ graph }, _index( graph.node_count(), 0 ), _low( graph.node_count(), 0 ),
              _exits( graph.node_count(), 0 )
    {
    }

    [[nodiscard]] bool visited( std::uint32_t v ) const { return _index[v] != 0; }
    /// Valid once `v` has been reported.
    [[nodiscard]] std::uint32_t component_of( std::uint32_t v ) const { return _low[v]; }
    [[nodiscard]] std::uint32_t component_count() const { return _components; }

    /// on_component( std::span<const std::uint32_t> members, bool terminal )
    template <class OnComponent>
    void run_from( std::uint32_t root, OnComponent&& on_component )
    {
        if ( _index[root] != 0 )
            return;
        push( root );
        while ( !_frames.empty() )
        {
            Frame& frame = _frames.back();
            std::uint32_t w;
            if ( _graph.next( frame.v, frame.cursor, w ) )
            {
                if ( _index[w] == 0 )
                    push( w );
                else if ( _index[w] == kDone )
                    _exits[frame.v] = 1;
                else if ( _index[w] < _low[frame.v] )
                    _low[frame.v] = _index[w];
                continue;
            }

            const std::uint32_t v = frame.v;
            _frames.pop_back();
            if ( _low[v] == _index[v] )
                close_component( v, on_component );
            if ( !_frames.empty() )
            {
                const std::uint32_t parent = _frames.back().v;
                if ( _index[v] == kDone )
                    _exits[parent] = 1;
                else if ( _low[v] < _low[parent] )
                    _low[parent] = _low[v];
            }
        }
    }

private:
    struct Frame
    {
        std::uint32_t v;
        Cursor cursor;
    };

    void push( std::uint32_t v )
    {
        ++_counter;
        _index[v] = _low[v] = _counter;
        _stack.push_back( v );
        _frames.push_back( Frame{ v, _graph.start( v ) } );
    }

    template <class OnComponent>
    void close_component( std::uint32_t root, OnComponent& on_component )
    {
        std::size_t first = _stack.size();
        do
            --first;
        while ( _stack[first] != root );

        const std::span<const std::uint32_t> members( _stack.data() + first, _stack.size() - first );
        bool terminal = true;
        for ( auto m : members )
        {
            terminal = terminal && !_exits[m];
            _index[m] = kDone;
            _low[m] = _components;
        }
        ++_components;
        on_component( members, terminal );
        _stack.resize( first );
    }

    const Graph& _graph;
    std::vector<std::uint32_t> _index;
    std::vector<std::uint32_t> _low;
    std::vector<std::uint8_t> _exits;
    std::vector<std::uint32_t> _stack;
    std::vector<Frame> _frames;
    std::uint32_t _counter = 0;
    std::uint32_t _components = 0;
};

} // namespace modnet::detail
