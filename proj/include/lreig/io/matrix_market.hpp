#ifndef LREIG_IO_MATRIX_MARKET_HPP
#define LREIG_IO_MATRIX_MARKET_HPP

//
// Matrix Market reader/writer for dense matrices.
//
// Reads "array" and "coordinate" formats with real, integer, complex or
// pattern fields and general, symmetric, skew-symmetric or hermitian
// symmetry (symmetric storage is expanded). Writes "array ... general" with
// 17 significant digits, which round-trips doubles exactly.
//

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <lreig/densekit.hpp>

namespace lreig::io {

enum class MarketFormat   { array, coordinate };
enum class MarketField    { real, integer, complex, pattern };
enum class MarketSymmetry { general, symmetric, skew_symmetric, hermitian };

struct MarketHeader
{
    MarketFormat    format   = MarketFormat::array;
    MarketField     field    = MarketField::real;
    MarketSymmetry  symmetry = MarketSymmetry::general;

    bool is_complex () const noexcept { return field == MarketField::complex; }
};

namespace detail {

inline
std::string
lower ( std::string  s )
{
    std::transform( s.begin(), s.end(), s.begin(), [] ( unsigned char c ) { return char( std::tolower( c ) ); } );
    return s;
}

inline
MarketHeader
parse_header ( const std::string &  line )
{
    std::istringstream  in( line );
    std::string         banner, object, format, field, symmetry;

    in >> banner >> object >> format >> field >> symmetry;

    if ( banner != "%%MatrixMarket" )
        throw ParseError( "missing %%MatrixMarket banner", 1 );

    if ( lower( object ) != "matrix" )
        throw ParseError( "unsupported object '" + object + "', expected 'matrix'", 1 );

    MarketHeader  h;

    format   = lower( format );
    field    = lower( field );
    symmetry = lower( symmetry );

    if      ( format == "array" )      h.format = MarketFormat::array;
    else if ( format == "coordinate" ) h.format = MarketFormat::coordinate;
    else throw ParseError( "unsupported format '" + format + "'", 1 );

    if      ( field == "real" || field == "double" ) h.field = MarketField::real;
    else if ( field == "integer" )                   h.field = MarketField::integer;
    else if ( field == "complex" )                   h.field = MarketField::complex;
    else if ( field == "pattern" )                   h.field = MarketField::pattern;
    else throw ParseError( "unsupported field '" + field + "'", 1 );

    if      ( symmetry == "general" )        h.symmetry = MarketSymmetry::general;
    else if ( symmetry == "symmetric" )      h.symmetry = MarketSymmetry::symmetric;
    else if ( symmetry == "skew-symmetric" ) h.symmetry = MarketSymmetry::skew_symmetric;
    else if ( symmetry == "hermitian" )      h.symmetry = MarketSymmetry::hermitian;
    else throw ParseError( "unsupported symmetry '" + symmetry + "'", 1 );

    if ( h.format == MarketFormat::array && h.field == MarketField::pattern )
        throw ParseError( "pattern field is only valid for coordinate format", 1 );

    if ( h.symmetry == MarketSymmetry::hermitian && h.field != MarketField::complex )
        throw ParseError( "hermitian symmetry requires a complex field", 1 );

    return h;
}

inline
std::vector< std::string_view >
tokens ( std::string_view  line )
{
    std::vector< std::string_view >  res;
    std::size_t                      i = 0;

    while ( i < line.size() )
    {
        while ( i < line.size() && std::isspace( static_cast< unsigned char >( line[ i ] ) ) ) ++i;

        const std::size_t  start = i;

        while ( i < line.size() && ! std::isspace( static_cast< unsigned char >( line[ i ] ) ) ) ++i;

        if ( i > start ) res.push_back( line.substr( start, i - start ) );
    }

    return res;
}

inline
double
parse_double ( std::string_view  tok,
               std::size_t       lineno )
{
    if ( tok.size() > 1 && tok[ 0 ] == '+' )
        tok.remove_prefix( 1 );

    double      v   = 0.0;
    const auto  res = std::from_chars( tok.data(), tok.data() + tok.size(), v );

    if ( res.ec != std::errc() || res.ptr != tok.data() + tok.size() )
        throw ParseError( "invalid number '" + std::string( tok ) + "'", lineno );

    if ( ! std::isfinite( v ) )
        throw ParseError( "non-finite value '" + std::string( tok ) + "'", lineno );

    return v;
}

inline
Index
parse_index ( std::string_view  tok,
              std::size_t       lineno )
{
    long long   v   = 0;
    const auto  res = std::from_chars( tok.data(), tok.data() + tok.size(), v );

    if ( res.ec != std::errc() || res.ptr != tok.data() + tok.size() )
        throw ParseError( "invalid integer '" + std::string( tok ) + "'", lineno );

    return Index( v );
}

} // namespace detail

//
// parse into a complex matrix; header reports the stored field
//
inline
ComplexMatrix
read_matrix_market ( std::istream &  in,
                     MarketHeader *  header_out = nullptr )
{
    std::string  line;
    std::size_t  lineno = 1;

    if ( ! std::getline( in, line ) )
        throw ParseError( "empty input", 1 );

    const MarketHeader  h = detail::parse_header( line );

    if ( header_out != nullptr )
        *header_out = h;

    // data lines, comments and blanks skipped
    auto  next = [&] ( std::vector< std::string_view > &  toks ) -> bool
    {
        while ( std::getline( in, line ) )
        {
            ++lineno;

            if ( ! line.empty() && line[ 0 ] == '%' ) continue;

            toks = detail::tokens( line );

            if ( ! toks.empty() ) return true;
        }

        return false;
    };

    std::vector< std::string_view >  toks;

    if ( ! next( toks ) )
        throw ParseError( "missing size line", lineno );

    const std::size_t  nsize = ( h.format == MarketFormat::array ? 2 : 3 );

    if ( toks.size() != nsize )
        throw ParseError( "size line must have " + std::to_string( nsize ) + " entries", lineno );

    const Index  m = detail::parse_index( toks[ 0 ], lineno );
    const Index  n = detail::parse_index( toks[ 1 ], lineno );

    if ( m < 0 || n < 0 )
        throw ParseError( "negative matrix dimension", lineno );

    if ( h.symmetry != MarketSymmetry::general && m != n )
        throw ParseError( "symmetric storage requires a square matrix", lineno );

    ComplexMatrix      M     = ComplexMatrix::Zero( m, n );
    const std::size_t  nvals = ( h.field == MarketField::complex ? 2 : h.field == MarketField::pattern ? 0 : 1 );

    auto  value = [&] ( std::size_t  ofs ) -> complex_t
    {
        if ( h.field == MarketField::pattern ) return 1.0;

        const double  re = detail::parse_double( toks[ ofs ], lineno );
        const double  im = ( nvals == 2 ? detail::parse_double( toks[ ofs + 1 ], lineno ) : 0.0 );

        return { re, im };
    };

    // mirror (i,j) into (j,i) according to symmetry
    auto  mirror = [&] ( Index  i, Index  j, complex_t  v )
    {
        if ( i == j ) return;

        switch ( h.symmetry )
        {
            case MarketSymmetry::general:        break;
            case MarketSymmetry::symmetric:      M( j, i ) = v;            break;
            case MarketSymmetry::skew_symmetric: M( j, i ) = -v;           break;
            case MarketSymmetry::hermitian:      M( j, i ) = std::conj( v ); break;
        }
    };

    if ( h.format == MarketFormat::array )
    {
        // column-major; symmetric variants store the lower triangle
        // (skew-symmetric without the diagonal)
        for ( Index  j = 0; j < n; ++j )
        {
            Index  i0 = 0;

            if ( h.symmetry == MarketSymmetry::skew_symmetric ) i0 = j + 1;
            else if ( h.symmetry != MarketSymmetry::general )   i0 = j;

            for ( Index  i = i0; i < m; ++i )
            {
                if ( ! next( toks ) )
                    throw ParseError( "unexpected end of data at entry (" + std::to_string( i + 1 ) + "," +
                                      std::to_string( j + 1 ) + ")", lineno );

                if ( toks.size() != nvals )
                    throw ParseError( "expected " + std::to_string( nvals ) + " value(s) per line", lineno );

                M( i, j ) = value( 0 );
                mirror( i, j, M( i, j ) );
            }
        }
    }
    else
    {
        const Index  nnz = detail::parse_index( toks[ 2 ], lineno );

        if ( nnz < 0 )
            throw ParseError( "negative entry count", lineno );

        for ( Index  k = 0; k < nnz; ++k )
        {
            if ( ! next( toks ) )
                throw ParseError( "unexpected end of data after " + std::to_string( k ) + " of " +
                                  std::to_string( nnz ) + " entries", lineno );

            if ( toks.size() != 2 + nvals )
                throw ParseError( "expected row, column and " + std::to_string( nvals ) + " value(s)", lineno );

            const Index  i = detail::parse_index( toks[ 0 ], lineno ) - 1;
            const Index  j = detail::parse_index( toks[ 1 ], lineno ) - 1;

            if ( i < 0 || i >= m || j < 0 || j >= n )
                throw ParseError( "entry (" + std::to_string( i + 1 ) + "," + std::to_string( j + 1 ) +
                                  ") outside " + shape_str( m, n ), lineno );

            const complex_t  v = value( 2 );

            M( i, j ) += v;
            mirror( i, j, v );
        }
    }

    if ( next( toks ) )
        throw ParseError( "trailing data after the last entry", lineno );

    return M;
}

inline
MarketHeader
read_matrix_market_header ( const std::filesystem::path &  path )
{
    std::ifstream  in( path );

    if ( ! in )
        throw ParseError( "cannot open '" + path.string() + "'" );

    std::string  line;

    if ( ! std::getline( in, line ) )
        throw ParseError( path.string() + ": empty file", 1 );

    return detail::parse_header( line );
}

//
// typed read; a complex file cannot be read as real
//
template < Scalar T >
Matrix< T >
read_matrix_market ( const std::filesystem::path &  path )
{
    std::ifstream  in( path );

    if ( ! in )
        throw ParseError( "cannot open '" + path.string() + "'" );

    MarketHeader   h;
    ComplexMatrix  M;

    try
    {
        M = read_matrix_market( in, &h );
    }
    catch ( const ParseError &  e )
    {
        throw ParseError( path.string() + ": " + e.what() );
    }

    if constexpr ( is_complex_v< T > )
        return M;
    else
    {
        if ( h.is_complex() )
            throw ParseError( path.string() + ": complex matrix where a real one is expected" );

        return M.real();
    }
}

namespace detail {

inline
std::string
format_double ( double  v )
{
    char  buf[ 32 ];

    std::snprintf( buf, sizeof( buf ), "%.17g", v );

    return buf;
}

} // namespace detail

template < Scalar T >
void
write_matrix_market ( const Matrix< T > &  M,
                      std::ostream &       out )
{
    out << "%%MatrixMarket matrix array " << ( is_complex_v< T > ? "complex" : "real" ) << " general\n"
        << M.rows() << ' ' << M.cols() << '\n';

    for ( Index  j = 0; j < M.cols(); ++j )
        for ( Index  i = 0; i < M.rows(); ++i )
        {
            if constexpr ( is_complex_v< T > )
                out << detail::format_double( M( i, j ).real() ) << ' ' << detail::format_double( M( i, j ).imag() ) << '\n';
            else
                out << detail::format_double( M( i, j ) ) << '\n';
        }
}

template < Scalar T >
void
write_matrix_market ( const Matrix< T > &            M,
                      const std::filesystem::path &  path )
{
    std::ofstream  out( path );

    if ( ! out )
        throw Error( "cannot open '" + path.string() + "' for writing" );

    write_matrix_market( M, out );

    if ( ! out )
        throw Error( "write to '" + path.string() + "' failed" );
}

} // namespace lreig::io

#endif // LREIG_IO_MATRIX_MARKET_HPP
