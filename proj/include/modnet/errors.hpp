#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace modnet
{

/// Root of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error
{
public:
    SyntaxError( std::size_t line, std::size_t column, std::vector<std::string> expected, std::string found );

    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }
    [[nodiscard]] const std::vector<std::string>& expected() const { return _expected; }
    [[nodiscard]] const std::string& found() const { return _found; }

private:
    std::size_t _line;
    std::size_t _column;
    std::vector<std::string> _expected;
    std::string _found;
};

class DuplicateDefinition : public Error
{
public:
    explicit DuplicateDefinition( const std::string& name )
            : Error( "duplicate definition of agent '" + name + "'" ), _name{ name }
    {
    }

    [[nodiscard]] const std::string& name() const { return _name; }

private:
    std::string _name;
};

class TooManyAgents : public Error
{
public:
    TooManyAgents( std::size_t count, std::size_t limit )
            : Error( "network has " + std::to_string( count ) + " agents, limit is " + std::to_string( limit ) ),
              _count{ count }, _limit{ limit }
    {
    }

    [[nodiscard]] std::size_t count() const { return _count; }
    [[nodiscard]] std::size_t limit() const { return _limit; }

private:
    std::size_t _count;
    std::size_t _limit;
};

class InvalidName : public Error
{
public:
    explicit InvalidName( const std::string& name ) : Error( "invalid agent name '" + name + "'" ) {}
};

class UnknownAgent : public Error
{
public:
    explicit UnknownAgent( const std::string& name ) : Error( "unknown agent '" + name + "'" ) {}
};

/// Raised when asking for the next value of an input agent.
class InputAgent : public Error
{
public:
    explicit InputAgent( const std::string& name ) : Error( "agent '" + name + "' is an input and never evolves" ) {}
};

class LengthMismatch : public Error
{
public:
    LengthMismatch( std::size_t expected, std::size_t actual )
            : Error( "expected " + std::to_string( expected ) + " local states, got " + std::to_string( actual ) )
    {
    }
};

class CarrierNotClosed : public Error
{
public:
    using Error::Error;
};

class OverlappingAgentSets : public Error
{
public:
    using Error::Error;
};

class NotAPartition : public Error
{
public:
    using Error::Error;
};

class IndexOutOfRange : public Error
{
public:
    using Error::Error;
};

class PartitionNotValidated : public Error
{
public:
    using Error::Error;
};

/// A brute-force search was refused because the module is too large.
class BudgetExceeded : public Error
{
public:
    using Error::Error;
};

} // namespace modnet
