#ifndef LREIG_FIXTURES_HPP
#define LREIG_FIXTURES_HPP

//
// Reproducible test data: Gaussian factors and integer factor pairs whose
// small product B·A has a prescribed Jordan form.
//
// Integer construction: T = P·J·P^{-1} with P unimodular (so T and P^{-1} are
// integer), A = Π·[I_r; C] and B = [T - D·C, D]·Π^T for random integer C, D
// and a row permutation Π. Then B·A = T exactly, A has full column rank, and
// D is redrawn until B has full row rank.
//

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <lreig/densekit.hpp>
#include <lreig/jordan.hpp>
#include <lreig/lowrank.hpp>

namespace lreig {

using Rng = std::mt19937_64;

template < Scalar T >
Matrix< T >
random_matrix ( Index  nrows,
                Index  ncols,
                Rng &  rng )
{
    std::normal_distribution< double >  normal( 0.0, 1.0 );
    Matrix< T >                         M( nrows, ncols );

    // column-major fill order keeps streams identical across platforms that
    // share the distribution implementation
    for ( Index  j = 0; j < ncols; ++j )
        for ( Index  i = 0; i < nrows; ++i )
        {
            if constexpr ( is_complex_v< T > )
            {
                const double  re = normal( rng );
                const double  im = normal( rng );

                M( i, j ) = complex_t( re, im );
            }
            else
                M( i, j ) = normal( rng );
        }

    return M;
}

inline
RealMatrix
random_integer_matrix ( Index  nrows,
                        Index  ncols,
                        int    lo,
                        int    hi,
                        Rng &  rng )
{
    std::uniform_int_distribution< int >  dist( lo, hi );
    RealMatrix                            M( nrows, ncols );

    for ( Index  j = 0; j < ncols; ++j )
        for ( Index  i = 0; i < nrows; ++i )
            M( i, j ) = double( dist( rng ) );

    return M;
}

struct IntegerFixture
{
    RealMatrix                                  A;       // N x r
    RealMatrix                                  B;       // r x N
    RealMatrix                                  small;   // B·A, exact
    RealMatrix                                  P;       // columns: Jordan chains of B·A
    std::vector< std::pair< double, Index > >  blocks;  // Jordan form of B·A, in column order of P

    Index N () const noexcept { return A.rows(); }
    Index r () const noexcept { return A.cols(); }

    // chain of the b-th block as columns of P
    JordanChain< double >
    chain ( std::size_t  b ) const
    {
        Index  ofs = 0;

        for ( std::size_t  i = 0; i < b; ++i )
            ofs += blocks[ i ].second;

        return { blocks[ b ].first, P.middleCols( ofs, blocks[ b ].second ) };
    }
};

namespace detail {

// unit lower times unit upper triangular, entries in {-1, 0, 1}
inline
std::pair< RealMatrix, RealMatrix >
random_unimodular ( Index  n,
                    Rng &  rng )
{
    std::uniform_int_distribution< int >  dist( -1, 1 );
    RealMatrix                            L = RealMatrix::Identity( n, n );
    RealMatrix                            U = RealMatrix::Identity( n, n );

    for ( Index  j = 0; j < n; ++j )
        for ( Index  i = j + 1; i < n; ++i )
        {
            L( i, j ) = dist( rng );
            U( j, i ) = dist( rng );
        }

    const RealMatrix  P    = L * U;
    const RealMatrix  Uinv = U.triangularView< Eigen::UnitUpper >().solve( RealMatrix::Identity( n, n ) );
    const RealMatrix  Linv = L.triangularView< Eigen::UnitLower >().solve( RealMatrix::Identity( n, n ) );

    return { P, RealMatrix( ( Uinv * Linv ).array().round() ) };
}

} // namespace detail

//
// integer pair with B·A similar to the Jordan matrix described by blocks
// (sizes must sum to r)
//
inline
IntegerFixture
make_integer_fixture ( Index                                              N,
                       const std::vector< std::pair< double, Index > > &  blocks,
                       Rng &                                              rng )
{
    const RealMatrix  J = jordan_matrix< double >( blocks );
    const Index       r = J.rows();

    if ( r > N )
        throw InvalidArgument( "make_integer_fixture: blocks of total size " + std::to_string( r ) +
                               " exceed N = " + std::to_string( N ) );

    const auto  [ P, Pinv ] = detail::random_unimodular( r, rng );
    const RealMatrix  T     = ( P * J * Pinv ).array().round();

    // permutation of the N rows of A
    std::vector< Index >  perm( static_cast< std::size_t >( N ) );

    std::iota( perm.begin(), perm.end(), Index( 0 ) );
    std::shuffle( perm.begin(), perm.end(), rng );

    for ( int  attempt = 0; attempt < 100; ++attempt )
    {
        const RealMatrix  C = random_integer_matrix( N - r, r, -1, 1, rng );
        const RealMatrix  D = random_integer_matrix( r, N - r, -1, 1, rng );

        RealMatrix  A0( N, r );
        RealMatrix  B0( r, N );

        A0.topRows( r )      = RealMatrix::Identity( r, r );
        A0.bottomRows( N - r ) = C;
        B0.leftCols( r )     = T - D * C;
        B0.rightCols( N - r ) = D;

        if ( numeric_rank( B0, ToleranceConfig{ 1e-8 } ) != r )
            continue;

        RealMatrix  A( N, r );
        RealMatrix  B( r, N );

        for ( Index  i = 0; i < N; ++i )
        {
            A.row( perm[ std::size_t( i ) ] ) = A0.row( i );
            B.col( perm[ std::size_t( i ) ] ) = B0.col( i );
        }

        return { std::move( A ), std::move( B ), T, P, blocks };
    }

    throw InvalidArgument( "make_integer_fixture: could not draw a full-rank B for N = " + std::to_string( N ) +
                           ", r = " + std::to_string( r ) );
}

//
// all integer partitions of n into parts <= maxpart, each sorted descending
//
inline
std::vector< std::vector< Index > >
partitions ( Index  n,
             Index  maxpart )
{
    std::vector< std::vector< Index > >  res;

    if ( n == 0 )
    {
        res.push_back( {} );
        return res;
    }

    for ( Index  first = std::min( n, maxpart ); first >= 1; --first )
        for ( auto &  rest : partitions( n - first, first ) )
        {
            rest.insert( rest.begin(), first );
            res.push_back( std::move( rest ) );
        }

    return res;
}

} // namespace lreig

#endif // LREIG_FIXTURES_HPP
