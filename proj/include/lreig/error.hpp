#ifndef LREIG_ERROR_HPP
#define LREIG_ERROR_HPP

//
// exception hierarchy shared by all lreig modules
//

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace lreig {

// shortest readable form of a double for messages ("1e-30", not "0.000000")
inline
std::string
num_str ( double  v )
{
    char  buf[ 32 ];

    std::snprintf( buf, sizeof( buf ), "%.6g", v );

    return buf;
}

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// shapes or arguments inconsistent with an operation's precondition
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

class DimensionError : public InvalidArgument
{
public:
    using InvalidArgument::InvalidArgument;
};

class ConvergenceError : public Error
{
public:
    ConvergenceError ( const std::string &  what,
                       std::size_t          iterations = 0 )
            : Error( what )
            , _iterations( iterations )
    {}

    std::size_t iterations () const noexcept { return _iterations; }

private:
    std::size_t  _iterations;
};

// Cholesky breakdown; pivot is 1-based
class NotPositiveDefinite : public Error
{
public:
    NotPositiveDefinite ( const std::string &  what,
                          std::size_t          pivot )
            : Error( what )
            , _pivot( pivot )
    {}

    std::size_t pivot () const noexcept { return _pivot; }

private:
    std::size_t  _pivot;
};

// a full-rank / nonsingularity assumption does not hold for the data
class RankError : public Error
{
public:
    using Error::Error;
};

// zero eigenvalue handed to a routine that only covers nonzero ones
class ZeroEigenvalueError : public InvalidArgument
{
public:
    using InvalidArgument::InvalidArgument;
};

// singular values too close to the rank cutoff to make a reliable decision
class AmbiguousRankError : public Error
{
public:
    using Error::Error;
};

// Weyr sequence did not stabilize within the allowed number of powers
class StabilizationError : public Error
{
public:
    StabilizationError ( const std::string &       what,
                         std::vector< std::ptrdiff_t >       partial )
            : Error( what )
            , _partial( std::move( partial ) )
    {}

    const std::vector< std::ptrdiff_t > & partial () const noexcept { return _partial; }

private:
    std::vector< std::ptrdiff_t >  _partial;
};

class ParseError : public Error
{
public:
    ParseError ( const std::string &  what,
                 std::size_t          line = 0 )
            : Error( line > 0 ? "line " + std::to_string( line ) + ": " + what : what )
            , _line( line )
    {}

    std::size_t line () const noexcept { return _line; }

private:
    std::size_t  _line;
};

} // namespace lreig

#endif // LREIG_ERROR_HPP
