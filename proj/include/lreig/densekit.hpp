#ifndef LREIG_DENSEKIT_HPP
#define LREIG_DENSEKIT_HPP

//
// Dense matrix kernels and small-matrix decompositions used by the rest of
// lreig. Everything is a pure function of its inputs. Matrices are plain
// Eigen column-major matrices over double or std::complex<double>.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include <lreig/error.hpp>

namespace lreig {

using Index     = Eigen::Index;
using complex_t = std::complex< double >;

template < typename T >
using Matrix = Eigen::Matrix< T, Eigen::Dynamic, Eigen::Dynamic >;

template < typename T >
using Vector = Eigen::Matrix< T, Eigen::Dynamic, 1 >;

using RealVector    = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix    = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

template < typename T >
concept Scalar = std::same_as< T, double > || std::same_as< T, complex_t >;

template < typename T >
inline constexpr bool is_complex_v = std::same_as< T, complex_t >;

// machine epsilon of double, 2^-52
inline constexpr double machine_eps = std::numeric_limits< double >::epsilon();

//
// tolerance policy shared by all modules
//
struct ToleranceConfig
{
    // relative singular value cutoff; unset means max(nrows, ncols)·eps
    std::optional< double >  rank_rtol;

    // eigenvalues with |λ| <= zero_eig_atol·scale count as zero
    double                   zero_eig_atol = std::sqrt( machine_eps );

    // acceptance threshold for normalized eigenpair residuals
    double                   residual_rtol = 1e-9;

    void
    validate () const
    {
        auto  check = [] ( double v, const char * name )
        {
            if ( ! std::isfinite( v ) || v < 0.0 || v >= 1.0 )
                throw InvalidArgument( std::string( "tolerance " ) + name + " must lie in [0, 1), got " + num_str( v ) );
        };

        if ( rank_rtol ) check( *rank_rtol, "rank_rtol" );
        check( zero_eig_atol, "zero_eig_atol" );
        check( residual_rtol, "residual_rtol" );
    }

    double
    rank_rtol_for ( Index  nrows,
                    Index  ncols ) const
    {
        return rank_rtol.value_or( double( std::max< Index >( { nrows, ncols, 1 } ) ) * machine_eps );
    }
};

//
// model flop counter; operations add their textbook count, not what the
// backend actually executed
//
class FlopCounter
{
public:
    void           add   ( std::uint64_t  n ) noexcept { _count += n; }
    std::uint64_t  count () const noexcept             { return _count; }
    void           reset () noexcept                   { _count = 0; }

private:
    std::uint64_t  _count = 0;
};

inline
std::string
shape_str ( Index  nrows,
            Index  ncols )
{
    return std::to_string( nrows ) + "x" + std::to_string( ncols );
}

template < typename Derived >
std::string
shape_str ( const Eigen::MatrixBase< Derived > &  M )
{
    return shape_str( M.rows(), M.cols() );
}

template < typename Derived >
void
require_finite ( const Eigen::MatrixBase< Derived > &  M,
                 const std::string &                   what )
{
    if ( ! M.allFinite() )
        throw InvalidArgument( what + " contains NaN or Inf entries" );
}

template < typename Derived >
void
require_square ( const Eigen::MatrixBase< Derived > &  M,
                 const std::string &                   what )
{
    if ( M.rows() != M.cols() )
        throw DimensionError( what + " must be square, got " + shape_str( M ) );
}

// ‖M - M^*‖_F / ‖M‖_F, zero for the zero matrix
template < typename Derived >
double
hermitian_defect ( const Eigen::MatrixBase< Derived > &  M )
{
    const double  nrm = M.norm();

    if ( nrm == 0.0 )
        return 0.0;

    return ( M - M.adjoint() ).norm() / nrm;
}

//
// dense product A·B
//
template < Scalar T >
Matrix< T >
matmul ( const Matrix< T > &  A,
         const Matrix< T > &  B,
         FlopCounter *        counter = nullptr )
{
    if ( A.cols() != B.rows() )
        throw DimensionError( "matmul: inner dimensions differ, A is " + shape_str( A ) +
                              ", B is " + shape_str( B ) );

    if ( counter != nullptr )
        counter->add( 2u * std::uint64_t( A.rows() ) * std::uint64_t( A.cols() ) * std::uint64_t( B.cols() ) );

    Matrix< T >  C( A.rows(), B.cols() );

    C.noalias() = A * B;

    return C;
}

//
// thin singular value decomposition M = U·diag(sigma)·Vh
//
template < Scalar T >
struct SvdResult
{
    Matrix< T >  U;      // m x k, orthonormal columns
    RealVector   sigma;  // k = min(m,n), nonincreasing
    Matrix< T >  Vh;     // k x n, orthonormal rows
};

template < Scalar T >
SvdResult< T >
svd ( const Matrix< T > &  M )
{
    const Index  m = M.rows();
    const Index  n = M.cols();
    const Index  k = std::min( m, n );

    if ( k == 0 )
        return { Matrix< T >( m, 0 ), RealVector( 0 ), Matrix< T >( 0, n ) };

    require_finite( M, "svd input" );

    // one-sided Jacobi: slower than divide & conquer but accurate on the
    // small and rank-deficient inputs this library feeds it
    Eigen::JacobiSVD< Matrix< T > >  solver( M, Eigen::ComputeThinU | Eigen::ComputeThinV );

    if ( solver.info() != Eigen::Success )
        throw ConvergenceError( "svd: Jacobi iteration failed on " + shape_str( M ) + " input" );

    return { solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint() };
}

// count of sigma_i > rtol·sigma_1
inline
Index
numeric_rank ( const RealVector &  sigma,
               double              rtol )
{
    if ( sigma.size() == 0 )
        return 0;

    const double  cutoff = rtol * sigma( 0 );

    return Index( std::count_if( sigma.begin(), sigma.end(), [cutoff] ( double s ) { return s > cutoff; } ) );
}

template < Scalar T >
Index
numeric_rank ( const Matrix< T > &      M,
               const ToleranceConfig &  cfg = {} )
{
    const auto  [ U, sigma, Vh ] = svd( M );

    return numeric_rank( sigma, cfg.rank_rtol_for( M.rows(), M.cols() ) );
}

//
// general dense eigenvalue problem (delegates to Eigen's Hessenberg/Schur
// based solvers)
//
struct DenseEigen
{
    ComplexVector                    values;
    std::optional< ComplexMatrix >   vectors;
};

template < Scalar T >
DenseEigen
eig_dense ( const Matrix< T > &  M,
            bool                 want_vectors )
{
    require_square( M, "eig_dense input" );
    require_finite( M, "eig_dense input" );

    DenseEigen  res;

    if ( M.rows() == 0 )
    {
        res.values = ComplexVector( 0 );
        if ( want_vectors ) res.vectors = ComplexMatrix( 0, 0 );
        return res;
    }

    if constexpr ( is_complex_v< T > )
    {
        Eigen::ComplexEigenSolver< ComplexMatrix >  solver( M, want_vectors );

        if ( solver.info() != Eigen::Success )
            throw ConvergenceError( "eig_dense: complex Schur iteration did not converge for " + shape_str( M ) + " input",
                                    std::size_t( 30 * M.rows() ) );

        res.values = solver.eigenvalues();
        if ( want_vectors ) res.vectors = solver.eigenvectors();
    }
    else
    {
        Eigen::EigenSolver< RealMatrix >  solver( M, want_vectors );

        if ( solver.info() != Eigen::Success )
            throw ConvergenceError( "eig_dense: real Schur iteration did not converge for " + shape_str( M ) + " input",
                                    std::size_t( 40 * M.rows() ) );

        res.values = solver.eigenvalues();
        if ( want_vectors ) res.vectors = solver.eigenvectors();
    }

    return res;
}

namespace detail {

// scale each column so that its largest-modulus entry is real and positive
template < Scalar T >
void
canonicalize_columns ( Matrix< T > &  Q )
{
    for ( Index  j = 0; j < Q.cols(); ++j )
    {
        Index  imax = 0;

        Q.col( j ).cwiseAbs().maxCoeff( &imax );

        const T  pivot = Q( imax, j );

        if ( std::abs( pivot ) == 0.0 )
            continue;

        if constexpr ( is_complex_v< T > )
            Q.col( j ) *= std::conj( pivot ) / std::abs( pivot );
        else if ( pivot < 0.0 )
            Q.col( j ) *= -1.0;
    }
}

} // namespace detail

//
// Hermitian eigenproblem M = Q·diag(values)·Q^*, values nondecreasing
//
template < Scalar T >
struct SymmetricEigen
{
    RealVector   values;
    Matrix< T >  Q;
};

inline constexpr double hermitian_rtol = 1e-13;

template < Scalar T >
SymmetricEigen< T >
symmetric_eig ( const Matrix< T > &  M,
                bool                 want_vectors = true )
{
    require_square( M, "symmetric_eig input" );
    require_finite( M, "symmetric_eig input" );

    if ( M.rows() == 0 )
        return { RealVector( 0 ), Matrix< T >( 0, 0 ) };

    if ( const double  d = hermitian_defect( M ); d > hermitian_rtol )
        throw InvalidArgument( "symmetric_eig: input is not Hermitian (relative defect " + num_str( d ) + ")" );

    const Matrix< T >                              H = ( M + M.adjoint() ) / 2.0;
    Eigen::SelfAdjointEigenSolver< Matrix< T > >  solver( H, want_vectors ? Eigen::ComputeEigenvectors
                                                                           : Eigen::EigenvaluesOnly );

    if ( solver.info() != Eigen::Success )
        throw ConvergenceError( "symmetric_eig: tridiagonal QR did not converge", std::size_t( 30 * M.rows() ) );

    SymmetricEigen< T >  res{ solver.eigenvalues(), Matrix< T >() };

    if ( want_vectors )
    {
        res.Q = solver.eigenvectors();
        detail::canonicalize_columns( res.Q );
    }

    return res;
}

//
// Cholesky factorization M = L·L^* of a Hermitian positive definite matrix.
// Only the lower triangle of M is referenced.
//
template < Scalar T >
Matrix< T >
cholesky ( const Matrix< T > &  M )
{
    require_square( M, "cholesky input" );
    require_finite( M, "cholesky input" );

    const Index  n = M.rows();
    Matrix< T >  L = Matrix< T >::Zero( n, n );

    for ( Index  j = 0; j < n; ++j )
    {
        T  d = M( j, j );

        for ( Index  k = 0; k < j; ++k )
        {
            if constexpr ( is_complex_v< T > ) d -= L( j, k ) * std::conj( L( j, k ) );
            else                               d -= L( j, k ) * L( j, k );
        }

        const double  dr = std::real( d );

        if ( ! ( dr > 0.0 ) )
        {
            std::ostringstream  msg;

            msg << "cholesky: matrix is not positive definite, pivot " << ( j + 1 ) << " is " << dr;
            throw NotPositiveDefinite( msg.str(), std::size_t( j + 1 ) );
        }

        const double  ljj = std::sqrt( dr );

        L( j, j ) = ljj;

        for ( Index  i = j + 1; i < n; ++i )
        {
            T  s = M( i, j );

            for ( Index  k = 0; k < j; ++k )
            {
                if constexpr ( is_complex_v< T > ) s -= L( i, k ) * std::conj( L( j, k ) );
                else                               s -= L( i, k ) * L( j, k );
            }

            L( i, j ) = s / ljj;
        }
    }

    return L;
}

} // namespace lreig

#endif // LREIG_DENSEKIT_HPP
