#ifndef LREIG_LOWRANK_HPP
#define LREIG_LOWRANK_HPP

//
// Nonzero eigenpairs and Jordan chains of X = A·B (A: N x r, B: r x N)
// obtained from the small r x r product B·A.
//
// If B·A·v = λ·v with λ != 0 then A·B·(A·v) = λ·(A·v) and A·v != 0, and the
// same lifting maps Jordan chains of B·A to Jordan chains of A·B. The N x N
// matrix A·B is never formed; all work is O(N·r^2 + r^3).
//

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include <lreig/densekit.hpp>
#include <lreig/spectrum.hpp>

namespace lreig {

//
// low-rank representation X = A·B with r <= N
//
template < Scalar T >
class FactorPair
{
public:
    FactorPair ( Matrix< T >  A,
                 Matrix< T >  B )
            : _A( std::move( A ) )
            , _B( std::move( B ) )
    {
        if ( _A.cols() != _B.rows() || _A.rows() != _B.cols() )
            throw DimensionError( "FactorPair: A is " + shape_str( _A ) + " and B is " + shape_str( _B ) +
                                  "; expected N x r and r x N" );

        if ( _A.cols() > _A.rows() )
            throw DimensionError( "FactorPair: inner dimension r = " + std::to_string( _A.cols() ) +
                                  " exceeds N = " + std::to_string( _A.rows() ) );

        require_finite( _A, "FactorPair factor A" );
        require_finite( _B, "FactorPair factor B" );
    }

    const Matrix< T > & A () const noexcept { return _A; }
    const Matrix< T > & B () const noexcept { return _B; }

    Index  N    () const noexcept { return _A.rows(); }
    Index  rank () const noexcept { return _A.cols(); }

    // ‖A‖_F·‖B‖_F, an upper bound for ‖A·B‖_F
    double norm_scale () const { return _A.norm() * _B.norm(); }

private:
    Matrix< T >  _A;
    Matrix< T >  _B;
};

//
// Jordan chain v_1..v_k of a matrix M: M v_1 = λ v_1, M v_{j+1} = λ v_{j+1} + v_j
//
template < Scalar T >
struct JordanChain
{
    T            eigenvalue{};
    Matrix< T >  vectors;       // n x k

    Index length () const noexcept { return vectors.cols(); }
};

struct EigenResult
{
    ComplexVector  lambdas;           // r0 nonzero eigenvalues, descending modulus
    ComplexMatrix  V;                 // r x r0 eigenvectors of B·A
    ComplexMatrix  W;                 // N x r0 eigenvectors of A·B, W = A·V
    RealVector     residuals;         // normalized residual per column of W
    Index          dropped = 0;       // eigenvalues of B·A filtered as zero
    double         threshold = 0.0;   // |λ| cutoff used by the filter
    Index          small_rank = 0;    // numeric_rank(B·A)
    bool           rank_deficient = false;

    Index count () const noexcept { return lambdas.size(); }

    double
    max_residual () const
    {
        return residuals.size() == 0 ? 0.0 : residuals.maxCoeff();
    }

    bool residuals_within ( double  tol ) const { return max_residual() <= tol; }
};

//
// B·A, charged 2·N·r^2 flops
//
template < Scalar T >
Matrix< T >
small_product ( const FactorPair< T > &  F,
                FlopCounter *            counter = nullptr )
{
    return matmul( F.B(), F.A(), counter );
}

//
// indices i with |λ_i| > zero_eig_atol·scale, original order kept
//
inline
std::vector< Index >
nonzero_filter ( const ComplexVector &    eigenvalues,
                 double                   scale,
                 const ToleranceConfig &  cfg = {} )
{
    const double          cutoff = cfg.zero_eig_atol * scale;
    std::vector< Index >  keep;

    for ( Index  i = 0; i < eigenvalues.size(); ++i )
        if ( std::abs( eigenvalues( i ) ) > cutoff )
            keep.push_back( i );

    return keep;
}

// W = A·V
template < typename TA, typename TV >
auto
lift ( const Eigen::MatrixBase< TA > &  A,
       const Eigen::MatrixBase< TV > &  V )
{
    using value_t = typename Eigen::ScalarBinaryOpTraits< typename TA::Scalar, typename TV::Scalar >::ReturnType;

    if ( A.cols() != V.rows() )
        throw DimensionError( "lift: A is " + shape_str( A ) + " but V is " + shape_str( V ) );

    Matrix< value_t >  W( A.rows(), V.cols() );

    W.noalias() = A * V;

    return W;
}

//
// ‖A(Bw) - λw‖ / (‖A‖_F·‖B‖_F·‖w‖), computed without forming A·B
//
template < Scalar T, typename Derived >
double
residual ( const FactorPair< T > &               F,
           complex_t                             lambda,
           const Eigen::MatrixBase< Derived > &  w )
{
    if ( w.cols() != 1 || w.rows() != F.N() )
        throw DimensionError( "residual: w must be a vector of length " + std::to_string( F.N() ) +
                              ", got " + shape_str( w ) );

    const double  wnorm = w.norm();

    if ( wnorm == 0.0 )
        throw InvalidArgument( "residual: w is the zero vector" );

    const double  scale = F.norm_scale();

    const ComplexVector  wc  = w.template cast< complex_t >();
    const ComplexVector  Bw  = F.B().template cast< complex_t >() * wc;
    const ComplexVector  ABw = F.A().template cast< complex_t >() * Bw;
    const double         res = ( ABw - lambda * wc ).norm();

    if ( scale == 0.0 )
        return res == 0.0 ? 0.0 : std::numeric_limits< double >::infinity();

    return res / ( scale * wnorm );
}

//
// Model flop count 2·N·r^2 + c·r^3 for the low-rank path. c is 4/3
// (symmetric) or 9 (nonsymmetric) for eigenvalues only, and 9 or 25 when
// eigenvectors are wanted. Fractions are rounded to the nearest integer.
//
struct FlopConstant
{
    std::uint64_t  num;
    std::uint64_t  den;
};

inline
FlopConstant
eig_flop_constant ( bool  symmetric,
                    bool  want_vectors )
{
    if ( symmetric ) return want_vectors ? FlopConstant{ 9, 1 }  : FlopConstant{ 4, 3 };
    else             return want_vectors ? FlopConstant{ 25, 1 } : FlopConstant{ 9, 1 };
}

namespace detail {

inline
std::uint64_t
checked_mul ( std::uint64_t  a,
              std::uint64_t  b )
{
    if ( a != 0 && b > std::numeric_limits< std::uint64_t >::max() / a )
        throw InvalidArgument( "flop model overflows 64-bit integers" );

    return a * b;
}

inline
std::uint64_t
checked_add ( std::uint64_t  a,
              std::uint64_t  b )
{
    if ( b > std::numeric_limits< std::uint64_t >::max() - a )
        throw InvalidArgument( "flop model overflows 64-bit integers" );

    return a + b;
}

// c·r^3 rounded half up
inline
std::uint64_t
small_eig_flops ( std::uint64_t  r,
                  bool           symmetric,
                  bool           want_vectors )
{
    const auto           c     = eig_flop_constant( symmetric, want_vectors );
    const std::uint64_t  cubic = checked_mul( c.num, checked_mul( r, checked_mul( r, r ) ) );

    return checked_add( checked_mul( 2, cubic ), c.den ) / ( 2 * c.den );
}

} // namespace detail

inline
std::uint64_t
flop_model ( std::uint64_t  N,
             std::uint64_t  r,
             bool           symmetric,
             bool           want_vectors )
{
    using detail::checked_add;
    using detail::checked_mul;
    using detail::small_eig_flops;

    if ( N == 0 || r == 0 )
        throw InvalidArgument( "flop_model: N and r must be positive" );

    if ( r > N )
        throw InvalidArgument( "flop_model: r = " + std::to_string( r ) + " exceeds N = " + std::to_string( N ) );

    const std::uint64_t  product = checked_mul( 2, checked_mul( N, checked_mul( r, r ) ) );

    return checked_add( product, small_eig_flops( r, symmetric, want_vectors ) );
}

// c·N^3 for solving the dense N x N problem directly
inline
std::uint64_t
dense_flop_model ( std::uint64_t  N,
                   bool           symmetric,
                   bool           want_vectors )
{
    using detail::checked_mul;

    if ( N == 0 )
        throw InvalidArgument( "dense_flop_model: N must be positive" );

    const auto           c     = eig_flop_constant( symmetric, want_vectors );
    const std::uint64_t  cubic = checked_mul( c.num, checked_mul( N, checked_mul( N, N ) ) );

    return ( detail::checked_add( checked_mul( 2, cubic ), c.den ) ) / ( 2 * c.den );
}

namespace detail {

//
// common tail of lowrank_eig: spectrum of the small matrix, zero filter,
// ordering; vectors are left in the small space
//
template < Scalar T >
EigenResult
small_eig ( const Matrix< T > &      small,
            bool                     want_vectors,
            const ToleranceConfig &  cfg )
{
    EigenResult  res;

    const double  scale = small.norm();
    const auto    eig   = eig_dense( small, want_vectors );

    res.threshold      = cfg.zero_eig_atol * scale;
    res.small_rank     = numeric_rank( small, cfg );
    res.rank_deficient = ( res.small_rank < small.rows() );

    auto  keep = nonzero_filter( eig.values, scale, cfg );

    // descending modulus, ties by descending (real, imag)
    std::stable_sort( keep.begin(), keep.end(), [&] ( Index  i, Index  j )
    {
        const complex_t  a = eig.values( i );
        const complex_t  b = eig.values( j );

        if ( std::abs( a ) != std::abs( b ) ) return std::abs( a ) > std::abs( b );
        return lex_less( b, a );
    } );

    const Index  r0 = Index( keep.size() );

    res.dropped = eig.values.size() - r0;
    res.lambdas.resize( r0 );

    for ( Index  i = 0; i < r0; ++i )
        res.lambdas( i ) = eig.values( keep[ i ] );

    if ( want_vectors )
    {
        res.V.resize( small.rows(), r0 );

        for ( Index  i = 0; i < r0; ++i )
            res.V.col( i ) = eig.vectors->col( keep[ i ] );
    }

    return res;
}

template < Scalar T >
void
finish_vectors ( const FactorPair< T > &  F,
                 EigenResult &            res,
                 bool                     normalize )
{
    res.residuals.resize( res.W.cols() );

    for ( Index  i = 0; i < res.W.cols(); ++i )
    {
        if ( normalize )
        {
            const double  n = res.W.col( i ).norm();

            if ( n > 0.0 ) res.W.col( i ) /= n;
        }

        res.residuals( i ) = residual( F, res.lambdas( i ), res.W.col( i ) );
    }
}

} // namespace detail

//
// Nonzero eigenvalues (and optionally eigenvectors) of A·B from B·A.
// Lifted vectors are exactly A·v_i unless normalize is set.
// rank_deficient flags numeric_rank(B·A) < r: the factorization can be
// shortened (see rank_reduce).
//
template < Scalar T >
EigenResult
lowrank_eig ( const FactorPair< T > &  F,
              bool                     want_vectors,
              const ToleranceConfig &  cfg       = {},
              bool                     normalize = false,
              FlopCounter *            counter   = nullptr )
{
    cfg.validate();

    const Matrix< T >  BA  = small_product( F, counter );
    EigenResult        res = detail::small_eig( BA, want_vectors, cfg );

    if ( counter != nullptr )
        counter->add( detail::small_eig_flops( std::uint64_t( F.rank() ), false, want_vectors ) );

    if ( want_vectors )
    {
        res.W = lift( F.A().template cast< complex_t >(), res.V );

        if ( counter != nullptr )
            counter->add( 2u * std::uint64_t( F.N() ) * std::uint64_t( F.rank() ) * std::uint64_t( res.W.cols() ) );

        detail::finish_vectors( F, res, normalize );
    }

    return res;
}

//
// Same as above for unnormalized orientation: if r > N the roles of the
// factors are swapped, the (now smaller) N x N product A·B is solved directly
// and its eigenvectors are returned as W (V then holds the same vectors).
//
template < Scalar T >
EigenResult
lowrank_eig ( const Matrix< T > &      A,
              const Matrix< T > &      B,
              bool                     want_vectors,
              const ToleranceConfig &  cfg       = {},
              bool                     normalize = false,
              FlopCounter *            counter   = nullptr )
{
    if ( A.cols() <= A.rows() )
        return lowrank_eig( FactorPair< T >( A, B ), want_vectors, cfg, normalize, counter );

    cfg.validate();

    // (B, A) is a valid pair with N' = r >= r' = N; its small product is A·B
    const FactorPair< T >  swapped( B, A );
    const Matrix< T >      AB  = small_product( swapped, counter );
    EigenResult            res = detail::small_eig( AB, want_vectors, cfg );

    if ( want_vectors )
    {
        res.W = res.V;

        // residuals against X = A·B, evaluated as A·(B·w)
        res.residuals.resize( res.W.cols() );

        const double  scale = A.norm() * B.norm();

        for ( Index  i = 0; i < res.W.cols(); ++i )
        {
            if ( normalize ) res.W.col( i ).normalize();

            const ComplexVector  w = res.W.col( i );
            const ComplexVector  x = A.template cast< complex_t >() * ( B.template cast< complex_t >() * w );

            res.residuals( i ) = ( x - res.lambdas( i ) * w ).norm() / ( scale * w.norm() );
        }
    }

    return res;
}

//
// chain residual max_j ‖M v_j - λ v_j - v_{j-1}‖ / ((‖M‖_F + |λ| + 1)·‖V‖_F)
// with v_0 = 0; apply(v) evaluates M·v and mnorm is ‖M‖_F or a bound of it
//
template < Scalar T, typename Apply >
double
chain_residual ( const JordanChain< T > &  chain,
                 Apply &&                  apply,
                 double                    mnorm )
{
    const Matrix< T > &  Vc = chain.vectors;
    const double         vn = Vc.norm();

    if ( vn == 0.0 )
        throw InvalidArgument( "chain_residual: chain vectors are all zero" );

    const double  denom = ( mnorm + std::abs( chain.eigenvalue ) + 1.0 ) * vn;
    double        worst = 0.0;

    for ( Index  j = 0; j < Vc.cols(); ++j )
    {
        Vector< T >  r = apply( Vector< T >( Vc.col( j ) ) ) - chain.eigenvalue * Vc.col( j );

        if ( j > 0 )
            r -= Vc.col( j - 1 );

        worst = std::max( worst, r.norm() / denom );
    }

    return worst;
}

// against an explicit dense matrix
template < Scalar T >
double
chain_residual ( const Matrix< T > &       M,
                 const JordanChain< T > &  chain )
{
    require_square( M, "chain_residual matrix" );

    if ( chain.vectors.rows() != M.rows() )
        throw DimensionError( "chain_residual: chain vectors are " + shape_str( chain.vectors ) +
                              " but the matrix is " + shape_str( M ) );

    return chain_residual( chain, [&M] ( const Vector< T > &  v ) { return Vector< T >( M * v ); }, M.norm() );
}

// against X = A·B without forming it
template < Scalar T >
double
chain_residual ( const FactorPair< T > &   F,
                 const JordanChain< T > &  chain )
{
    if ( chain.vectors.rows() != F.N() )
        throw DimensionError( "chain_residual: chain vectors are " + shape_str( chain.vectors ) +
                              " but N = " + std::to_string( F.N() ) );

    return chain_residual( chain,
                           [&F] ( const Vector< T > &  v ) { return Vector< T >( F.A() * ( F.B() * v ) ); },
                           F.norm_scale() );
}

//
// Lift a Jordan chain of B·A for a nonzero eigenvalue to a Jordan chain of
// A·B: v_j -> A·v_j. The input chain is checked against B·A and the lifted
// vectors must keep full column rank.
//
template < Scalar T >
JordanChain< T >
lift_jordan_chain ( const FactorPair< T > &   F,
                    const JordanChain< T > &  chain,
                    const ToleranceConfig &   cfg = {} )
{
    cfg.validate();

    if ( chain.vectors.rows() != F.rank() )
        throw DimensionError( "lift_jordan_chain: chain vectors are " + shape_str( chain.vectors ) +
                              ", expected " + std::to_string( F.rank() ) + " rows" );

    if ( chain.length() == 0 )
        throw InvalidArgument( "lift_jordan_chain: empty chain" );

    const Matrix< T >  BA = small_product( F );

    if ( std::abs( chain.eigenvalue ) <= cfg.zero_eig_atol * BA.norm() )
        throw ZeroEigenvalueError( "lift_jordan_chain: eigenvalue is numerically zero; zero-eigenvalue chains "
                                   "change length between B·A and A·B, use the jordan module instead" );

    if ( const double  res = chain_residual( BA, chain ); res > cfg.residual_rtol )
        throw InvalidArgument( "lift_jordan_chain: input is not a Jordan chain of B·A (residual " +
                               num_str( res ) + ")" );

    JordanChain< T >  lifted{ chain.eigenvalue, lift( F.A(), chain.vectors ) };

    if ( const Index  k = numeric_rank( lifted.vectors, cfg ); k != chain.length() )
        throw RankError( "lift_jordan_chain: lifted chain has numerical rank " + std::to_string( k ) +
                         " < " + std::to_string( chain.length() ) + "; A is not of full column rank" );

    return lifted;
}

} // namespace lreig

#endif // LREIG_LOWRANK_HPP
