#ifndef LREIG_FACTORIZE_HPP
#define LREIG_FACTORIZE_HPP

//
// producing low-rank factors from dense matrices, and shortening factors
// whose product has lower rank than their inner dimension
//

#include <optional>
#include <string>
#include <vector>

#include <lreig/densekit.hpp>
#include <lreig/lowrank.hpp>
#include <lreig/symmetric.hpp>

namespace lreig {

template < Scalar T >
struct TruncatedFactor
{
    FactorPair< T >  pair;
    Index            numeric_rank = 0;   // numeric rank of X
    double           discarded    = 0.0; // (sum of discarded sigma^2)^{1/2}
    bool             rank_exceeds_numeric = false;  // requested rank > numeric rank
};

//
// X ≈ A·B with A = U_k·diag(sigma_k), B = Vh_k; k = rank if given, else the
// numeric rank of X
//
template < Scalar T >
TruncatedFactor< T >
truncated_svd_factor ( const Matrix< T > &      X,
                       std::optional< Index >   rank = std::nullopt,
                       const ToleranceConfig &  cfg  = {} )
{
    cfg.validate();
    require_square( X, "truncated_svd_factor input" );

    const Index  N = X.rows();

    if ( rank && ( *rank < 0 || *rank > N ) )
        throw InvalidArgument( "truncated_svd_factor: rank " + std::to_string( *rank ) + " outside [0, " +
                               std::to_string( N ) + "]" );

    const auto   [ U, sigma, Vh ] = svd( X );
    const Index  nrank            = numeric_rank( sigma, cfg.rank_rtol_for( N, N ) );
    const Index  k                = rank.value_or( nrank );

    Matrix< T >  A = U.leftCols( k ) * sigma.head( k ).template cast< T >().asDiagonal();
    Matrix< T >  B = Vh.topRows( k );

    TruncatedFactor< T >  res{ FactorPair< T >( std::move( A ), std::move( B ) ), nrank,
                               sigma.tail( N - k ).norm(), k > nrank };

    return res;
}

//
// X = Ã·S̃·Ã^* from the nonzero part of the Hermitian eigendecomposition;
// eigenvalues ordered positive first, each sign group by descending modulus
//
template < Scalar T >
SymmetricFactorization< T >
symmetric_factor ( const Matrix< T > &      X,
                   const ToleranceConfig &  cfg = {} )
{
    cfg.validate();

    const auto   eig = symmetric_eig( X );
    const Index  N   = X.rows();

    std::vector< Index >  keep;

    if ( N > 0 )
    {
        const double  cutoff = cfg.rank_rtol_for( N, N ) * eig.values.cwiseAbs().maxCoeff();

        for ( Index  i = 0; i < N; ++i )
            if ( std::abs( eig.values( i ) ) > cutoff )
                keep.push_back( i );
    }

    std::stable_sort( keep.begin(), keep.end(), [&] ( Index  i, Index  j )
    {
        const double  a = eig.values( i );
        const double  b = eig.values( j );

        if ( ( a > 0 ) != ( b > 0 ) ) return a > 0;
        return std::abs( a ) > std::abs( b );
    } );

    const Index  k = Index( keep.size() );
    Matrix< T >  At( N, k );
    Matrix< T >  St = Matrix< T >::Zero( k, k );

    for ( Index  j = 0; j < k; ++j )
    {
        At.col( j )  = eig.Q.col( keep[ std::size_t( j ) ] );
        St( j, j )   = eig.values( keep[ std::size_t( j ) ] );
    }

    return SymmetricFactorization< T >( std::move( At ), std::move( St ), cfg );
}

//
// Shorten the inner dimension to the numeric rank of A·B. Works on thin QR
// factors A = Q_A·R_A, B^* = Q_B·R_B and the r x r core R_A·R_B^*; nothing of
// size N x N is formed. Factors already of full rank are returned unchanged.
//
template < Scalar T >
FactorPair< T >
rank_reduce ( const FactorPair< T > &  F,
              const ToleranceConfig &  cfg = {} )
{
    cfg.validate();

    const Index  N = F.N();
    const Index  r = F.rank();

    if ( r == 0 )
        return F;

    const Eigen::HouseholderQR< Matrix< T > >  qrA( F.A() );
    const Eigen::HouseholderQR< Matrix< T > >  qrB( Matrix< T >( F.B().adjoint() ) );

    const Matrix< T >  RA   = qrA.matrixQR().topRows( r ).template triangularView< Eigen::Upper >();
    const Matrix< T >  RB   = qrB.matrixQR().topRows( r ).template triangularView< Eigen::Upper >();
    const Matrix< T >  core = RA * RB.adjoint();

    const auto   [ U, sigma, Vh ] = svd( core );
    const Index  k                = numeric_rank( sigma, cfg.rank_rtol_for( N, N ) );

    if ( k == r )
        return F;

    const Matrix< T >  QA = qrA.householderQ() * Matrix< T >::Identity( N, r );
    const Matrix< T >  QB = qrB.householderQ() * Matrix< T >::Identity( N, r );

    Matrix< T >  A = QA * ( U.leftCols( k ) * sigma.head( k ).template cast< T >().asDiagonal() );
    Matrix< T >  B = Vh.topRows( k ) * QB.adjoint();

    return FactorPair< T >( std::move( A ), std::move( B ) );
}

} // namespace lreig

#endif // LREIG_FACTORIZE_HPP
