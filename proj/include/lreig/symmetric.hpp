#ifndef LREIG_SYMMETRIC_HPP
#define LREIG_SYMMETRIC_HPP

//
// Symmetry-preserving low-rank eigensolver for X = Ã·S̃·Ã^* (Ã: N x r,
// S̃: r x r Hermitian and nonsingular).
//
//   1. congruence Wc·S̃·Wc^* = S with S a ±1 sign diagonal
//   2. A = Ã·Wc^{-1}, so X = A·S·A^*
//   3. definite pencil (A^*A, S): A^*A·V = S·V·Λ with V^*(A^*A)V = I and
//      V^*·S·V = Λ^{-1}, solved through the Cholesky factor of A^*A
//   4. W = A·V has orthonormal columns and X·W = W·Λ
//
// For real data all transposes are plain transposes.
//

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <lreig/densekit.hpp>

namespace lreig {

template < Scalar T >
class SymmetricFactorization
{
public:
    SymmetricFactorization ( Matrix< T >              Atilde,
                             Matrix< T >              Stilde,
                             const ToleranceConfig &  cfg = {} )
            : _Atilde( std::move( Atilde ) )
            , _Stilde( std::move( Stilde ) )
    {
        require_square( _Stilde, "SymmetricFactorization middle factor" );

        if ( _Atilde.cols() != _Stilde.rows() )
            throw DimensionError( "SymmetricFactorization: Atilde is " + shape_str( _Atilde ) +
                                  " but Stilde is " + shape_str( _Stilde ) );

        require_finite( _Atilde, "SymmetricFactorization factor Atilde" );
        require_finite( _Stilde, "SymmetricFactorization factor Stilde" );

        if ( const double  d = hermitian_defect( _Stilde ); d > hermitian_rtol )
            throw InvalidArgument( "SymmetricFactorization: Stilde is not Hermitian (relative defect " +
                                   num_str( d ) + ")" );

        if ( const Index  k = numeric_rank( _Stilde, cfg ); k != _Stilde.rows() )
            throw RankError( "SymmetricFactorization: Stilde is singular (numerical rank " + std::to_string( k ) +
                             " of " + std::to_string( _Stilde.rows() ) + "); reduce the rank first" );
    }

    const Matrix< T > & Atilde () const noexcept { return _Atilde; }
    const Matrix< T > & Stilde () const noexcept { return _Stilde; }

    Index  N    () const noexcept { return _Atilde.rows(); }
    Index  rank () const noexcept { return _Atilde.cols(); }

private:
    Matrix< T >  _Atilde;
    Matrix< T >  _Stilde;
};

//
// diagonal matrix of ±1 entries
//
class SignDiagonal
{
public:
    SignDiagonal () = default;

    explicit
    SignDiagonal ( std::vector< int >  signs )
            : _signs( std::move( signs ) )
    {
        for ( int  s : _signs )
            if ( s != 1 && s != -1 )
                throw InvalidArgument( "SignDiagonal: entries must be +1 or -1, got " + std::to_string( s ) );
    }

    const std::vector< int > & signs () const noexcept { return _signs; }

    Index  size      () const noexcept { return Index( _signs.size() ); }
    Index  positives () const { return Index( std::count( _signs.begin(), _signs.end(), 1 ) ); }
    Index  negatives () const { return size() - positives(); }

    RealVector
    diagonal () const
    {
        RealVector  d( size() );

        for ( Index  i = 0; i < size(); ++i )
            d( i ) = double( _signs[ std::size_t( i ) ] );

        return d;
    }

    bool operator == ( const SignDiagonal & ) const = default;

private:
    std::vector< int >  _signs;
};

// X = A·S·A^*
template < Scalar T >
struct ReducedSymmetric
{
    Matrix< T >   A;
    SignDiagonal  S;
};

template < Scalar T >
struct Congruence
{
    Matrix< T >   Wc;   // Wc·S̃·Wc^* = diag(S)
    SignDiagonal  S;
};

//
// congruence of a nonsingular Hermitian S̃ to a sign diagonal:
// S̃ = Q·D·Q^*, Wc = |D|^{-1/2}·Q^*, rows ordered +1 first, each sign
// group by descending |d|
//
template < Scalar T >
Congruence< T >
reduce_to_sign ( const Matrix< T > &      Stilde,
                 const ToleranceConfig &  cfg = {} )
{
    cfg.validate();

    const auto   eig = symmetric_eig( Stilde );
    const Index  r   = Stilde.rows();

    if ( r == 0 )
        return { Matrix< T >( 0, 0 ), SignDiagonal() };

    const double  dmax   = eig.values.cwiseAbs().maxCoeff();
    const double  cutoff = cfg.rank_rtol_for( r, r ) * dmax;

    for ( Index  i = 0; i < r; ++i )
        if ( ! ( std::abs( eig.values( i ) ) > cutoff ) )
            throw RankError( "reduce_to_sign: middle factor is singular (eigenvalue " +
                             num_str( eig.values( i ) ) + "); reduce the rank first" );

    std::vector< Index >  order( static_cast< std::size_t >( r ) );

    std::iota( order.begin(), order.end(), Index( 0 ) );
    std::stable_sort( order.begin(), order.end(), [&] ( Index  i, Index  j )
    {
        const double  a = eig.values( i );
        const double  b = eig.values( j );

        if ( ( a > 0 ) != ( b > 0 ) ) return a > 0;
        return std::abs( a ) > std::abs( b );
    } );

    Matrix< T >         Wc( r, r );
    std::vector< int >  signs( static_cast< std::size_t >( r ) );

    for ( Index  k = 0; k < r; ++k )
    {
        const Index   i = order[ std::size_t( k ) ];
        const double  d = eig.values( i );

        Wc.row( k )                = eig.Q.col( i ).adjoint() / std::sqrt( std::abs( d ) );
        signs[ std::size_t( k ) ]  = d > 0 ? 1 : -1;
    }

    return { std::move( Wc ), SignDiagonal( std::move( signs ) ) };
}

//
// A = Ã·Wc^{-1} computed by an LU solve with Wc^T
//
template < Scalar T >
ReducedSymmetric< T >
apply_congruence ( const SymmetricFactorization< T > &  F,
                   const Matrix< T > &                  Wc,
                   const SignDiagonal &                 S )
{
    require_square( Wc, "apply_congruence: Wc" );

    if ( Wc.rows() != F.rank() || S.size() != F.rank() )
        throw DimensionError( "apply_congruence: Wc is " + shape_str( Wc ) + " and S has " +
                              std::to_string( S.size() ) + " entries, expected rank " + std::to_string( F.rank() ) );

    if ( F.rank() == 0 )
        return { Matrix< T >( F.N(), 0 ), S };

    // A·Wc = Ã  <=>  Wc^T·A^T = Ã^T
    const Eigen::PartialPivLU< Matrix< T > >  lu( Wc.transpose() );
    const double                              rcond = lu.rcond();

    if ( ! ( rcond > 10.0 * machine_eps ) )
        throw RankError( "apply_congruence: congruence matrix is numerically singular (condition estimate " +
                         num_str( rcond > 0.0 ? 1.0 / rcond : std::numeric_limits< double >::infinity() ) + ")" );

    Matrix< T >  A = lu.solve( F.Atilde().transpose() ).transpose();

    return { std::move( A ), S };
}

//
// ‖A·S·A^* - Ã·S̃·Ã^*‖_F / (‖Ã‖_F^2·‖S̃‖_F); forms N x N matrices, so only
// meant for checks at small N
//
template < Scalar T >
double
congruence_defect ( const SymmetricFactorization< T > &  F,
                    const ReducedSymmetric< T > &        R )
{
    const Matrix< T >  X0 = F.Atilde() * F.Stilde() * F.Atilde().adjoint();
    const Matrix< T >  X1 = R.A * R.S.diagonal().asDiagonal() * R.A.adjoint();
    const double       sc = F.Atilde().squaredNorm() * F.Stilde().norm();

    return sc == 0.0 ? ( X0 - X1 ).norm() : ( X0 - X1 ).norm() / sc;
}

template < Scalar T >
struct GeneralizedEigen
{
    Matrix< T >  V;        // V^* G V = I, V^* S V = diag(1/Lambda)
    RealVector   Lambda;
};

//
// G·V = S·V·diag(Λ) for Hermitian positive definite G and sign diagonal S.
// With G = L·L^* and M = L^{-1}·S·L^{-*} = Q·diag(μ)·Q^*: Λ = 1/μ, V = L^{-*}·Q.
// Columns are ordered positive Λ first, each group by descending |Λ|, which
// lines the signs of Λ up with a canonically ordered S.
//
template < Scalar T >
GeneralizedEigen< T >
generalized_spd_eig ( const Matrix< T > &   G,
                      const SignDiagonal &  S )
{
    require_square( G, "generalized_spd_eig: G" );

    if ( G.rows() != S.size() )
        throw DimensionError( "generalized_spd_eig: G is " + shape_str( G ) + " but S has " +
                              std::to_string( S.size() ) + " entries" );

    const Index  r = G.rows();

    if ( r == 0 )
        return { Matrix< T >( 0, 0 ), RealVector( 0 ) };

    const Matrix< T >  L = cholesky( G );
    const auto         Lt = L.template triangularView< Eigen::Lower >();

    // M = L^{-1} S L^{-*}
    Matrix< T >  LinvS = Lt.solve( Matrix< T >( S.diagonal().template cast< T >().asDiagonal() ) );
    Matrix< T >  M     = Lt.solve( Matrix< T >( LinvS.adjoint() ) ).adjoint();

    M = ( M + M.adjoint() ).eval() / 2.0;

    const auto  eig = symmetric_eig( M );

    std::vector< Index >  order( static_cast< std::size_t >( r ) );

    std::iota( order.begin(), order.end(), Index( 0 ) );
    std::stable_sort( order.begin(), order.end(), [&] ( Index  i, Index  j )
    {
        const double  a = eig.values( i );
        const double  b = eig.values( j );

        if ( ( a > 0 ) != ( b > 0 ) ) return a > 0;
        // |Λ| = 1/|μ| descending
        return std::abs( a ) < std::abs( b );
    } );

    Matrix< T >  Q( r, r );
    RealVector   Lambda( r );

    for ( Index  k = 0; k < r; ++k )
    {
        const Index  i = order[ std::size_t( k ) ];

        if ( eig.values( i ) == 0.0 )
            throw ConvergenceError( "generalized_spd_eig: zero eigenvalue in the reduced problem" );

        Q.col( k )  = eig.Q.col( i );
        Lambda( k ) = 1.0 / eig.values( i );
    }

    // V = L^{-*} Q
    Matrix< T >  V = L.adjoint().template triangularView< Eigen::Upper >().solve( Q );

    return { std::move( V ), std::move( Lambda ) };
}

template < Scalar T >
struct SymmetricEigenResult
{
    RealVector   lambdas;     // descending |λ|, + before - on ties
    Matrix< T >  V;           // r x r generalized eigenvectors, same order
    Matrix< T >  W;           // N x r orthonormal eigenvectors, W = A·V
    RealVector   residuals;   // ‖X w - λ w‖ / (‖A‖_F^2 ‖w‖)

    Index count () const noexcept { return lambdas.size(); }

    double max_residual () const { return residuals.size() == 0 ? 0.0 : residuals.maxCoeff(); }

    bool residuals_within ( double  tol ) const { return max_residual() <= tol; }
};

//
// nonzero eigendecomposition X = A·S·A^* = W·diag(Λ)·W^*
//
template < Scalar T >
SymmetricEigenResult< T >
symmetric_lowrank_eig ( const ReducedSymmetric< T > &  R,
                        const ToleranceConfig &        cfg = {} )
{
    cfg.validate();

    const Index  r = R.A.cols();

    if ( R.S.size() != r )
        throw DimensionError( "symmetric_lowrank_eig: A is " + shape_str( R.A ) + " but S has " +
                              std::to_string( R.S.size() ) + " entries" );

    if ( const Index  k = numeric_rank( R.A, cfg ); k != r )
        throw RankError( "symmetric_lowrank_eig: A has numerical rank " + std::to_string( k ) + " < " +
                         std::to_string( r ) + "; reduce the symmetric factorization to rank " + std::to_string( k ) );

    Matrix< T >  G = R.A.adjoint() * R.A;

    G = ( G + G.adjoint() ).eval() / 2.0;

    auto  gen = generalized_spd_eig( G, R.S );

    std::vector< Index >  order( static_cast< std::size_t >( r ) );

    std::iota( order.begin(), order.end(), Index( 0 ) );
    std::stable_sort( order.begin(), order.end(), [&] ( Index  i, Index  j )
    {
        const double  a = gen.Lambda( i );
        const double  b = gen.Lambda( j );

        if ( std::abs( a ) != std::abs( b ) ) return std::abs( a ) > std::abs( b );
        return a > b;
    } );

    SymmetricEigenResult< T >  res;

    res.lambdas.resize( r );
    res.V.resize( r, r );

    for ( Index  k = 0; k < r; ++k )
    {
        res.lambdas( k ) = gen.Lambda( order[ std::size_t( k ) ] );
        res.V.col( k )   = gen.V.col( order[ std::size_t( k ) ] );
    }

    res.W = R.A * res.V;

    // residuals via A·(S·(A^* w))
    const RealVector  s     = R.S.diagonal();
    const double      scale = R.A.squaredNorm();

    res.residuals.resize( r );

    for ( Index  k = 0; k < r; ++k )
    {
        const Vector< T >  w  = res.W.col( k );
        const Vector< T >  t  = s.template cast< T >().cwiseProduct( R.A.adjoint() * w );
        const Vector< T >  Xw = R.A * t;

        res.residuals( k ) = ( Xw - res.lambdas( k ) * w ).norm() / ( scale * w.norm() );
    }

    return res;
}

//
// full path from X = Ã·S̃·Ã^*
//
template < Scalar T >
SymmetricEigenResult< T >
symmetric_lowrank_eig ( const SymmetricFactorization< T > &  F,
                        const ToleranceConfig &              cfg = {} )
{
    const auto  cong = reduce_to_sign( F.Stilde(), cfg );
    const auto  red  = apply_congruence( F, cong.Wc, cong.S );

    return symmetric_lowrank_eig( red, cfg );
}

} // namespace lreig

#endif // LREIG_SYMMETRIC_HPP
